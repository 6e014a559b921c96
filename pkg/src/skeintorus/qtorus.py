"""Quantum tori in the normalized monomial basis.

A torus ``T(A)`` is fixed by a :class:`CommutationMatrix`.  Exponent vectors
are dense integer tuples aligned with ``A.labels``; helpers accept label
dictionaries wherever a user would type one.  Normalized monomials obey
``x^k x^n = v^<k,n> x^(k+n)``.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ContextMismatch, ExactDivisionFailure, MissingLabel, TorusMismatch
from .scalars import CyclotomicContext, GroundScalar, _resolve_ctx, conjugate, v_power

Exponent = Tuple[int, ...]

__all__ = [
    "CommutationMatrix",
    "TorusElement",
    "apply_monomial_map",
    "factor_ordered",
    "grade",
    "monomial_product",
    "multiply",
    "reflection",
    "weyl_normalize",
]


class CommutationMatrix:
    """Antisymmetric integer matrix indexed by generator labels."""

    __slots__ = ("labels", "entries", "_index", "_hash")

    def __init__(self, labels: Sequence[str], entries: Sequence[Sequence[int]]):
        labels = tuple(labels)
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("duplicate generator labels")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("matrix shape does not match the label list")
        for i in range(n):
            if rows[i][i]:
                raise ValueError(f"nonzero diagonal entry at {labels[i]}")
            for j in range(i):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(
                        f"matrix is not antisymmetric at ({labels[i]}, {labels[j]})"
                    )
        self.labels = labels
        self.entries = rows
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._hash = hash((labels, rows))

    @classmethod
    def from_pairs(cls, labels: Sequence[str], pairs: Mapping[Tuple[str, str], int]):
        """Build from upper entries ``{(a, b): A[a][b]}``; the rest follows by antisymmetry."""
        labels = tuple(labels)
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        rows = [[0] * n for _ in range(n)]
        for (a, b), val in pairs.items():
            i, j = idx[a], idx[b]
            rows[i][j] = val
            rows[j][i] = -val
        return cls(labels, rows)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, CommutationMatrix):
            return NotImplemented
        return self.labels == other.labels and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"CommutationMatrix({list(self.labels)!r}, {[list(r) for r in self.entries]!r})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise MissingLabel(label) from None

    def __contains__(self, label):
        return label in self._index

    def entry(self, a: str, b: str) -> int:
        return self.entries[self.index(a)][self.index(b)]

    def pairing(self, k: Exponent, n: Exponent) -> int:
        """``<k, n>_A = sum A_ij k_i n_j``."""
        total = 0
        for i, ki in enumerate(k):
            if ki:
                row = self.entries[i]
                total += ki * sum(a * nj for a, nj in zip(row, n) if nj)
        return total

    def scaled(self, factor: int) -> "CommutationMatrix":
        return CommutationMatrix(self.labels, [[factor * x for x in r] for r in self.entries])

    def restrict(self, labels: Sequence[str]) -> "CommutationMatrix":
        idx = [self.index(lab) for lab in labels]
        return CommutationMatrix(labels, [[self.entries[i][j] for j in idx] for i in idx])

    def vector(self, mapping: Mapping[str, int]) -> Exponent:
        out = [0] * len(self.labels)
        for lab, e in mapping.items():
            out[self.index(lab)] += int(e)
        return tuple(out)

    def unit(self, label: str, power: int = 1) -> Exponent:
        out = [0] * len(self.labels)
        out[self.index(label)] = power
        return tuple(out)

    def zero_vector(self) -> Exponent:
        return (0,) * len(self.labels)

    def as_mapping(self, k: Exponent) -> Dict[str, int]:
        return {lab: e for lab, e in zip(self.labels, k) if e}

    def format(self) -> str:
        """Aligned text table, used by the CLI."""
        labs = self.labels
        width = max([len(x) for x in labs] + [max((len(str(x)) for r in self.entries for x in r), default=1)])
        head = " " * width + " " + " ".join(lab.rjust(width) for lab in labs)
        lines = [head]
        for lab, row in zip(labs, self.entries):
            lines.append(lab.rjust(width) + " " + " ".join(str(x).rjust(width) for x in row))
        return "\n".join(lines)


def _add_vec(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _scale_vec(a: Exponent, t: int) -> Exponent:
    return tuple(t * x for x in a)


class TorusElement:
    """Finite sum ``sum c_k x^k`` over a fixed torus and ground ring."""

    __slots__ = ("torus", "ctx", "_terms")

    def __init__(self, torus: CommutationMatrix, terms=None, ctx=None):
        self.torus = torus
        self.ctx = _resolve_ctx(ctx)
        out: Dict[Exponent, GroundScalar] = {}
        n = len(torus.labels)
        for k, c in (terms or {}).items():
            if isinstance(k, Mapping):
                k = torus.vector(k)
            else:
                k = tuple(k)
                if len(k) != n:
                    raise TorusMismatch("exponent vector has the wrong length")
            c = _as_scalar(c, self.ctx)
            if c:
                prev = out.get(k)
                c = c if prev is None else prev + c
                if c:
                    out[k] = c
                else:
                    del out[k]
        self._terms = out

    @classmethod
    def _raw(cls, torus, terms, ctx):
        obj = object.__new__(cls)
        obj.torus = torus
        obj.ctx = ctx
        obj._terms = terms
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, torus, ctx=None):
        return cls._raw(torus, {}, _resolve_ctx(ctx))

    @classmethod
    def scalar(cls, torus, c, ctx=None):
        ctx = _resolve_ctx(ctx)
        return cls(torus, {torus.zero_vector(): c}, ctx)

    @classmethod
    def one(cls, torus, ctx=None):
        return cls.scalar(torus, 1, ctx)

    @classmethod
    def monomial(cls, torus, k, c=1, ctx=None):
        return cls(torus, {k if not isinstance(k, Mapping) else torus.vector(k): c}, ctx)

    @classmethod
    def generator(cls, torus, label, power=1, ctx=None):
        return cls.monomial(torus, torus.unit(label, power), 1, ctx)

    # container protocol -----------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, GroundScalar]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def support(self):
        return set(self._terms)

    def coefficient(self, k) -> GroundScalar:
        if isinstance(k, Mapping):
            k = self.torus.vector(k)
        return self._terms.get(tuple(k), GroundScalar.zero(self.ctx))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_positive(self) -> bool:
        """Membership in T_+ : every exponent nonnegative."""
        return all(e >= 0 for k in self._terms for e in k)

    def with_context(self, ctx) -> "TorusElement":
        ctx = _resolve_ctx(ctx)
        if ctx == self.ctx:
            return self
        return TorusElement(self.torus, {k: c.with_context(ctx) for k, c in self._terms.items()}, ctx)

    def retarget(self, torus: CommutationMatrix) -> "TorusElement":
        """Same terms, read in another torus over the same labels."""
        if torus.labels != self.torus.labels:
            raise TorusMismatch("label sets differ")
        return TorusElement._raw(torus, dict(self._terms), self.ctx)

    def map_scalars(self, f: Callable[[GroundScalar], GroundScalar]) -> "TorusElement":
        return TorusElement(self.torus, {k: f(c) for k, c in self._terms.items()}, self.ctx)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "TorusElement"):
        if other.torus != self.torus:
            raise TorusMismatch("operands live in different tori")
        if other.ctx != self.ctx:
            if other.ctx is None:
                return self, other.with_context(self.ctx)
            if self.ctx is None:
                return self.with_context(other.ctx), other
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        return self, other

    def _lift(self, other):
        if isinstance(other, TorusElement):
            return other
        if isinstance(other, (int, GroundScalar)):
            return TorusElement.scalar(self.torus, other, self.ctx)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self._check(other)
        out = dict(a._terms)
        for k, c in b._terms.items():
            prev = out.get(k)
            s = c if prev is None else prev + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TorusElement._raw(a.torus, out, a.ctx)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement._raw(self.torus, {k: -c for k, c in self._terms.items()}, self.ctx)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, GroundScalar)):
            return self.scale(other)
        if not isinstance(other, TorusElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, GroundScalar)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "TorusElement":
        c = _as_scalar(c, self.ctx)
        if c.ctx != self.ctx:
            return self.with_context(c.ctx).scale(c)
        out = {}
        for k, d in self._terms.items():
            p = d * c
            if p:
                out[k] = p
        return TorusElement._raw(self.torus, out, self.ctx)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TorusElement.one(self.torus, self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "TorusElement":
        """Inverse of ``c x^k`` with ``c`` a unit; other elements are not invertible here."""
        if not self.is_monomial():
            raise ExactDivisionFailure("only monomials with unit coefficients are invertible")
        (k, c), = self._terms.items()
        return TorusElement._raw(self.torus, {_scale_vec(k, -1): c.inverse()}, self.ctx)

    def __eq__(self, other):
        if isinstance(other, (int, GroundScalar)):
            other = TorusElement.scalar(self.torus, other, self.ctx)
        if not isinstance(other, TorusElement):
            return NotImplemented
        if other.torus != self.torus:
            return False
        try:
            a, b = self._check(other)
        except ContextMismatch:
            return False
        return a._terms == b._terms

    def __hash__(self):
        return hash((self.torus, frozenset(self._terms.items())))

    def __str__(self):
        from .parsing import format_element

        return format_element(self)

    def __repr__(self):
        return f"TorusElement({self})"


def _as_scalar(c, ctx) -> GroundScalar:
    if isinstance(c, GroundScalar):
        if c.ctx == ctx:
            return c
        return c.with_context(ctx)
    return GroundScalar(int(c), ctx)


# ---------------------------------------------------------------------------


def monomial_product(torus: CommutationMatrix, k: Exponent, n: Exponent, ctx=None) -> TorusElement:
    """``x^k x^n = v^<k,n> x^(k+n)``."""
    ctx = _resolve_ctx(ctx)
    return TorusElement._raw(
        torus, {_add_vec(k, n): v_power(torus.pairing(k, n), ctx)}, ctx
    )


def multiply(x: TorusElement, y: TorusElement) -> TorusElement:
    x, y = x._check(y)
    torus, ctx = x.torus, x.ctx
    out: Dict[Exponent, GroundScalar] = {}
    entries = torus.entries
    for k, c in x._terms.items():
        # row vector k^T A, reused for every n
        row = [0] * len(k)
        for i, ki in enumerate(k):
            if ki:
                for j, a in enumerate(entries[i]):
                    if a:
                        row[j] += ki * a
        for n, d in y._terms.items():
            e = sum(r * nj for r, nj in zip(row, n) if nj)
            term = c * d
            if e:
                term = term * v_power(e, ctx)
            s = _add_vec(k, n)
            prev = out.get(s)
            if prev is not None:
                term = prev + term
            if term:
                out[s] = term
            elif prev is not None:
                del out[s]
    return TorusElement._raw(torus, out, ctx)


def weyl_normalize(torus: CommutationMatrix, factors: Iterable, ctx=None) -> TorusElement:
    """Weyl bracket of normalized monomials: ``[x^k1 ... x^kr] = x^(k1+...+kr)``.

    Equivalently the ordered product times ``v^(-sum_{i<j} <k_i, k_j>)``; the
    result does not depend on the order of ``factors``.
    """
    total = torus.zero_vector()
    for k in factors:
        if isinstance(k, Mapping):
            k = torus.vector(k)
        total = _add_vec(total, tuple(k))
    return TorusElement.monomial(torus, total, 1, ctx)


def reflection(x: TorusElement) -> TorusElement:
    """Anti-involution fixing each ``x^k`` and sending ``v`` to ``v^-1``."""
    return x.map_scalars(conjugate)


def factor_ordered(torus: CommutationMatrix, k, order: Sequence[str], ctx=None):
    """Write ``x^k = v^e * g1^k1 * g2^k2 * ...`` with generators in ``order``.

    Returns ``(v^e, [(g1, k1), (g2, k2), ...])`` keeping only nonzero powers.
    """
    if isinstance(k, Mapping):
        k = torus.vector(k)
    listed = set(order)
    for lab, e in zip(torus.labels, k):
        if e and lab not in listed:
            raise MissingLabel(lab)
    factors = []
    for lab in order:
        e = k[torus.index(lab)]
        if e:
            factors.append((lab, e))
    total = 0
    for i, (a, ea) in enumerate(factors):
        row = torus.entries[torus.index(a)]
        for b, eb in factors[i + 1 :]:
            total += ea * eb * row[torus.index(b)]
    return v_power(-total, ctx), factors


def grade(x: TorusElement) -> Dict[Exponent, GroundScalar]:
    return x.terms


def apply_monomial_map(
    x: TorusElement,
    images: Mapping[str, object],
    target_one: object,
    order: Optional[Sequence[str]] = None,
    on_negative: Optional[Callable[[str, object], object]] = None,
):
    """Evaluate an algebra map given on generators.

    ``images[g]`` is the image of the generator ``g``; results are combined
    with ``*`` and ``+`` so any ring-like target works.  Each normalized
    monomial is first split with :func:`factor_ordered`.  A negative power
    of ``g`` needs ``on_negative(g, image)`` to return the inverse image.
    """
    torus = x.torus
    order = tuple(order) if order is not None else torus.labels
    pow_cache: Dict[Tuple[str, int], object] = {}

    def power(g, e):
        key = (g, e)
        if key in pow_cache:
            return pow_cache[key]
        if e < 0:
            if on_negative is None:
                raise ExactDivisionFailure(f"negative power of {g} cannot be mapped")
            base = on_negative(g, images[g])
            e = -e
        else:
            base = images[g]
        val = base
        for _ in range(e - 1):
            val = val * base
        pow_cache[key] = val
        return val

    result = target_one * 0
    for k, c in x._terms.items():
        pref, factors = factor_ordered(torus, k, order, x.ctx)
        term = target_one * (c * pref)
        for g, e in factors:
            term = term * power(g, e)
        result = result + term
    return result
