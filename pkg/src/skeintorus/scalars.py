"""Exact ground-ring arithmetic.

Scalars are Laurent polynomials in ``v = q^{1/2}`` with Python integer
coefficients.  Attaching a :class:`CyclotomicContext` of order ``m`` turns
``v`` into a primitive ``m``-th root of unity: every value is then stored as
its remainder modulo the cyclotomic polynomial ``Phi_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .errors import ContextMismatch, ExactDivisionFailure

__all__ = [
    "CyclotomicContext",
    "GroundScalar",
    "RootData",
    "chebyshev_coefficient",
    "conjugate",
    "cyclotomic",
    "cyclotomic_context",
    "gauss_binomial",
    "ground_substitute",
    "quantum_binomial",
    "quantum_integer",
    "root_data",
    "v_power",
]


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (coefficient lists, low degree first)


def _trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num, den):
    """Integer polynomial division; raises if a quotient coefficient is not integral."""
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    lead = den[-1]
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        qc, r = divmod(c, lead)
        if r:
            raise ExactDivisionFailure(
                f"leading coefficient {lead} does not divide {c}"
            )
        quot[i - dd] = qc
        for j, d in enumerate(den):
            num[i - dd + j] -= qc * d
    return _trim(quot), _trim(num[:dd])


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> Tuple[int, ...]:
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(_cyclotomic_coeffs(d)))
            if rem:
                raise ExactDivisionFailure(f"Phi_{d} does not divide v^{m} - 1")
    return tuple(num)


@dataclass(frozen=True)
class CyclotomicContext:
    """``v`` is a primitive ``m``-th root of unity; ``phi_m`` lists Phi_m low degree first."""

    m: int
    phi_m: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.phi_m) - 1

    def reduce(self, coeffs: Mapping[int, int]) -> Dict[int, int]:
        m = self.m
        dense = [0] * m
        for e, c in coeffs.items():
            dense[e % m] += c
        d = self.degree
        phi = self.phi_m
        # phi is monic
        for i in range(m - 1, d - 1, -1):
            c = dense[i]
            if c:
                base = i - d
                for j, p in enumerate(phi):
                    if p:
                        dense[base + j] -= c * p
        return {e: c for e, c in enumerate(dense[:d]) if c}

    def __repr__(self):
        return f"CyclotomicContext(m={self.m})"


@lru_cache(maxsize=None)
def cyclotomic_context(m: int) -> CyclotomicContext:
    return CyclotomicContext(m, _cyclotomic_coeffs(m))


def _resolve_ctx(ctx) -> Optional[CyclotomicContext]:
    if ctx is None or isinstance(ctx, CyclotomicContext):
        return ctx
    return cyclotomic_context(int(ctx))


# ---------------------------------------------------------------------------


class GroundScalar:
    """Element of ``Z[v, v^-1]`` or of the cyclotomic quotient ``Z[v]/Phi_m``.

    Instances are immutable.  ``coeffs`` maps v-exponents to nonzero integers.
    """

    __slots__ = ("_coeffs", "ctx", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], int, None] = None, ctx=None):
        ctx = _resolve_ctx(ctx)
        if coeffs is None:
            raw = {}
        elif isinstance(coeffs, int):
            raw = {0: coeffs} if coeffs else {}
        else:
            raw = {int(e): int(c) for e, c in coeffs.items() if c}
        if ctx is not None:
            raw = ctx.reduce(raw)
        object.__setattr__(self, "_coeffs", raw)
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GroundScalar is immutable")

    # constructors -----------------------------------------------------------
    @classmethod
    def _raw(cls, coeffs: Dict[int, int], ctx):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_coeffs", coeffs)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, ctx=None):
        return cls._raw({}, _resolve_ctx(ctx))

    @classmethod
    def one(cls, ctx=None):
        return cls(1, ctx)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1, ctx=None):
        return cls({exponent: coefficient}, ctx)

    # accessors --------------------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_one(self) -> bool:
        return self._coeffs == {0: 1}

    def is_unit_monomial(self) -> bool:
        """True for ``±v^e``, the units of ``Z[v^±1]``."""
        return len(self._coeffs) == 1 and abs(next(iter(self._coeffs.values()))) == 1

    def min_exponent(self):
        return min(self._coeffs) if self._coeffs else None

    def max_exponent(self):
        return max(self._coeffs) if self._coeffs else None

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def with_context(self, ctx) -> "GroundScalar":
        ctx = _resolve_ctx(ctx)
        if ctx == self.ctx:
            return self
        if self.ctx is not None:
            raise ContextMismatch(f"cannot move a scalar from {self.ctx} to {ctx}")
        return GroundScalar(self._coeffs, ctx)

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, GroundScalar):
            if other.ctx == self.ctx:
                return other, self.ctx
            if other.ctx is None:
                return other.with_context(self.ctx), self.ctx
            if self.ctx is None:
                return other, other.ctx
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
        if isinstance(other, int):
            return GroundScalar(other, self.ctx), self.ctx
        return None, None

    def __add__(self, other):
        other, ctx = self._coerce(other)
        if other is None:
            return NotImplemented
        left = self if self.ctx == ctx else self.with_context(ctx)
        out = dict(left._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return GroundScalar._raw(out, ctx)

    __radd__ = __add__

    def __neg__(self):
        return GroundScalar._raw({e: -c for e, c in self._coeffs.items()}, self.ctx)

    def __sub__(self, other):
        other, ctx = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other, ctx = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other, ctx = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return GroundScalar._raw({}, ctx)
        out: Dict[int, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        out = {e: c for e, c in out.items() if c}
        if ctx is not None:
            out = ctx.reduce(out)
        return GroundScalar._raw(out, ctx)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GroundScalar.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "GroundScalar":
        """Inverse of a unit monomial ``±v^e``."""
        if not self.is_unit_monomial():
            if self.ctx is None or self.is_zero():
                raise ExactDivisionFailure(f"{self} is not a unit")
            # Z[v]/Phi_m has further units; only the monomial ones are inverted here
            raise ExactDivisionFailure(f"{self} is not a unit monomial")
        (e, c), = self._coeffs.items()
        return GroundScalar({-e: c}, self.ctx)

    def exact_div(self, other: "GroundScalar") -> "GroundScalar":
        """Exact Laurent division; only available in the symbolic ring."""
        other, ctx = self._coerce(other)
        if ctx is not None:
            raise ExactDivisionFailure(
                "exact division is done in Z[v^±1]; reduce afterwards"
            )
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return self
        lo_a, lo_b = self.min_exponent(), other.min_exponent()
        num = [0] * (self.max_exponent() - lo_a + 1)
        for e, c in self._coeffs.items():
            num[e - lo_a] = c
        den = [0] * (other.max_exponent() - lo_b + 1)
        for e, c in other._coeffs.items():
            den[e - lo_b] = c
        quot, rem = _poly_divmod(num, den)
        if rem:
            raise ExactDivisionFailure(f"({self}) / ({other}) is not exact")
        shift = lo_a - lo_b
        return GroundScalar({i + shift: c for i, c in enumerate(quot) if c})

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = GroundScalar(other, self.ctx)
        if not isinstance(other, GroundScalar):
            return NotImplemented
        if other.ctx != self.ctx:
            try:
                a, ctx = self._coerce(other)
            except ContextMismatch:
                return False
            left = self.with_context(ctx)
            return left._coeffs == a._coeffs
        return self._coeffs == other._coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((frozenset(self._coeffs.items()), self.ctx.m if self.ctx else 0))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self._coeffs)

    # printing ---------------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        mod = f", mod={self.ctx.m}" if self.ctx else ""
        return f"GroundScalar({format_scalar(self)}{mod})"


def v_power(e: int, ctx=None) -> GroundScalar:
    return GroundScalar({e: 1}, ctx)


def _format_vpow(e):
    if e == 0:
        return ""
    if e == 1:
        return "v"
    return f"v^{e}"


def format_scalar(s: GroundScalar) -> str:
    """Human-readable form, highest power of ``v`` first: ``v^2 + 1 - 3*v^-4``."""
    items = sorted(s._coeffs.items(), reverse=True)
    if not items:
        return "0"
    parts = []
    for idx, (e, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_vpow(e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def scalar_literal(s: GroundScalar) -> str:
    """Literal that the expression grammar reads back exactly.

    Bare integers and ``v^e`` monomials are emitted as is; everything else is
    a parenthesised sum of ``c*v^e`` terms.
    """
    items = sorted(s._coeffs.items(), reverse=True)
    if not items:
        return "0"
    if len(items) == 1:
        e, c = items[0]
        if e == 0:
            return str(c)
        if c == 1:
            return _format_vpow(e)
    pieces = []
    for e, c in items:
        if e == 0:
            pieces.append(str(c))
        else:
            pieces.append(f"{c}*{_format_vpow(e)}")
    return "(" + " + ".join(pieces) + ")"


# ---------------------------------------------------------------------------
# named operations


def cyclotomic(m: int) -> GroundScalar:
    """The m-th cyclotomic polynomial as a scalar in ``Z[v]``."""
    return GroundScalar(dict(enumerate(_cyclotomic_coeffs(m))))


def quantum_integer(n: int, ctx=None) -> GroundScalar:
    """``[n]_q = (q^n - q^-n)/(q - q^-1)`` with ``q = v^2``."""
    if n == 0:
        return GroundScalar.zero(ctx)
    sign = 1 if n > 0 else -1
    n = abs(n)
    coeffs = {2 * (n - 1 - 2 * j): sign for j in range(n)}
    return GroundScalar(coeffs, ctx)


def _symbolic_product(factors: Iterable[GroundScalar]) -> GroundScalar:
    out = GroundScalar.one()
    for f in factors:
        out = out * f
    return out


def quantum_binomial(n: int, k: int, ctx=None) -> GroundScalar:
    """Gaussian binomial ``prod_{j=1..k} [n-j+1]_q / [j]_q``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = _symbolic_product(quantum_integer(n - j + 1) for j in range(1, k + 1))
    den = _symbolic_product(quantum_integer(j) for j in range(1, k + 1))
    return num.exact_div(den).with_context(ctx)


def chebyshev_coefficient(n: int, r: int, j: int, ctx=None) -> GroundScalar:
    """``c(n,r,j) = [n]/[r] * qbinom(n-j-1, r-1) * qbinom(r+j-1, r-1)``."""
    if not (1 <= r <= n - 1 and 0 <= j <= n - r):
        raise ValueError(f"invalid indices (n, r, j) = {(n, r, j)}")
    num = (
        quantum_integer(n)
        * quantum_binomial(n - j - 1, r - 1)
        * quantum_binomial(r + j - 1, r - 1)
    )
    return num.exact_div(quantum_integer(r)).with_context(ctx)


def gauss_binomial(N: int, k: int, base_exponent: int, ctx=None) -> GroundScalar:
    """Gauss binomial in the base ``t = v^base_exponent``.

    Built from the division-free Pascal rule
    ``[N, k] = [N-1, k-1] + t^k [N-1, k]``, so it is valid directly in the
    cyclotomic ring.
    """
    if not 0 <= k <= N:
        raise ValueError("need 0 <= k <= N")
    return _gauss_row(N, base_exponent, _resolve_ctx(ctx))[k]


@lru_cache(maxsize=None)
def _gauss_row(N: int, base_exponent: int, ctx) -> Tuple[GroundScalar, ...]:
    one = GroundScalar.one(ctx)
    if N == 0:
        return (one,)
    prev = _gauss_row(N - 1, base_exponent, ctx)
    row = [one]
    for k in range(1, N):
        row.append(prev[k - 1] + v_power(base_exponent * k, ctx) * prev[k])
    row.append(one)
    return tuple(row)


def ground_substitute(s: GroundScalar, t: int) -> GroundScalar:
    """Substitute ``v -> v^t``."""
    return GroundScalar({e * t: c for e, c in s._coeffs.items()}, s.ctx)


def conjugate(s: GroundScalar) -> GroundScalar:
    """The bar involution ``v -> v^-1``."""
    return ground_substitute(s, -1)


@dataclass(frozen=True)
class RootData:
    """Order bookkeeping when ``v`` has order ``m`` and ``xi = v^2``."""

    m: int
    N: int
    epsilon_v_exponent: int
    sign_xi_2N: int

    @property
    def context(self) -> CyclotomicContext:
        return cyclotomic_context(self.m)

    @property
    def xi(self) -> GroundScalar:
        return v_power(2, self.context)

    @property
    def epsilon(self) -> GroundScalar:
        return v_power(self.epsilon_v_exponent, self.context)


def root_data(m: int) -> RootData:
    if m < 1:
        raise ValueError("m must be positive")
    N = m // gcd(m, 8)
    eps = (2 * N * N) % m
    sign = 1 if (4 * N) % m == 0 else -1
    return RootData(m=m, N=N, epsilon_v_exponent=eps, sign_xi_2N=sign)
