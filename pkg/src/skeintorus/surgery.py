"""The surgery algebra Z(Delta) and its homomorphisms.

Letters are the edges of Delta, a dual letter ``a*`` for every monogon edge
``a``, and the unmarked components (central).  Every pair of letters
q-commutes except ``a`` and ``a*``, which are tied by

    a a* = q^2 b^2 + q^-2 c^2 + beta b c

where ``b`` (``c``) is the side of the triangle next to ``a`` met just before
(after) the monogon in the clockwise list at its corner.  Elements are kept
in the basis of Weyl-normalized monomials in which no ``a`` meets its ``a*``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    ContextMismatch,
    ExactDivisionFailure,
    InvalidQuasitriangulation,
    NonInvertibleImage,
    NotBoundaryEdge,
    NotUnmarked,
)
from .flips import flip
from .qtorus import CommutationMatrix, TorusElement, apply_monomial_map
from .scalars import GroundScalar, _resolve_ctx, v_power
from .surface import (
    BoundaryComponent,
    Edge,
    MarkedSurfaceSpec,
    Quasitriangulation,
    classify_edges,
    skein_torus,
    vertex_matrix,
)

__all__ = [
    "MonogonRelation",
    "SurgeryContext",
    "SurgeryElement",
    "add_point_boundary",
    "add_point_unmarked",
    "plug_hole",
    "psi_add_point_boundary",
    "psi_add_point_unmarked",
    "psi_plug_hole",
    "surgery_multiply",
    "theta_embed",
]

Exponent = Tuple[int, ...]
Word = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class MonogonRelation:
    edge: str
    dual: str
    b: str
    c: str
    hole: str


class SurgeryContext:
    """Letters, their commutation data and the monogon relations of one Delta."""

    def __init__(self, q: Quasitriangulation):
        self.q = q
        _, _, mon, ess = classify_edges(q)
        self.monogons = mon
        self.ess = ess
        self.holes = q.surface.unmarked
        self.relations: Dict[str, MonogonRelation] = {}
        flipped = {}
        for a in mon:
            fr = flip(q, a)
            b, c, hole = fr.labels
            self.relations[a] = MonogonRelation(a, fr.new_edge, b, c, hole)
            flipped[a] = fr
        letters: List[str] = []
        for e in q.edge_names:
            letters.append(e)
            if e in self.relations:
                letters.append(self.relations[e].dual)
        letters.extend(self.holes)
        self.letters: Tuple[str, ...] = tuple(letters)
        self.index = {l: i for i, l in enumerate(letters)}
        self.partner: Dict[int, int] = {}
        for a, rel in self.relations.items():
            self.partner[self.index[a]] = self.index[rel.dual]
        self.matrix = self._extended_matrix(flipped)
        self.ess_index = frozenset(self.index[e] for e in ess)
        self._rel_words: Dict[int, List[Tuple[int, Word]]] = {}
        for a, rel in self.relations.items():
            self._rel_words[self.index[a]] = self._relation_terms(rel)
        self._cache: Dict[Tuple[Word, Optional[int]], Dict[Exponent, Dict[int, int]]] = {}

    # ---------------------------------------------------------------- set-up
    def _extended_matrix(self, flipped) -> CommutationMatrix:
        n = len(self.letters)
        rows = [[0] * n for _ in range(n)]
        P = vertex_matrix(self.q)
        for a in P.labels:
            for b in P.labels:
                rows[self.index[a]][self.index[b]] = P.entry(a, b)
        for a, fr in flipped.items():
            star = fr.new_edge
            P1 = vertex_matrix(fr.new_q)
            i = self.index[star]
            for u in P1.labels:
                if u == star:
                    continue
                j = self.index[u]
                rows[i][j] = P1.entry(star, u)
                rows[j][i] = -rows[i][j]
            for b, fr_b in flipped.items():
                if b == a:
                    continue
                # both duals at once: flip b inside the already flipped surface
                P2 = vertex_matrix(flip(fr.new_q, b).new_q)
                j = self.index[fr_b.new_edge]
                rows[i][j] = P2.entry(star, fr_b.new_edge)
                rows[j][i] = -rows[i][j]
        return CommutationMatrix(self.letters, rows)

    def _relation_terms(self, rel: MonogonRelation):
        """``a a*`` as a list of ``(v-exponent, word)`` (products taken literally)."""
        b, c, h = self.index[rel.b], self.index[rel.c], self.index[rel.hole]
        return [
            (4, ((b, 2),)),
            (-4, ((c, 2),)),
            (0, ((h, 1), (b, 1), (c, 1))),
        ]

    # ---------------------------------------------------------------- basics
    def __eq__(self, other):
        return isinstance(other, SurgeryContext) and self.q == other.q and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    @property
    def torus(self) -> CommutationMatrix:
        """Commutation data of the letters (the ``a``/``a*`` entries are never used)."""
        return self.matrix

    def zero_vector(self) -> Exponent:
        return (0,) * len(self.letters)

    def is_normal(self, k: Exponent) -> bool:
        for i, e in enumerate(k):
            if e < 0 and i not in self.ess_index:
                return False
        for i, j in self.partner.items():
            if k[i] and k[j]:
                return False
        return True

    def basis_vector(self, spec: Mapping[str, int]) -> Exponent:
        """Exponent vector from ``{letter: power}`` using the ``a^{k}`` convention.

        A negative power of a monogon edge ``a`` stands for the same positive
        power of ``a*``.
        """
        k = [0] * len(self.letters)
        for lab, e in spec.items():
            i = self.index[lab]
            if e < 0 and i in self.partner:
                k[self.partner[i]] += -e
            else:
                k[i] += e
        k = tuple(k)
        if not self.is_normal(k):
            raise ValueError(f"{spec} is not a basis monomial")
        return k

    def element(self, terms, ctx=None) -> "SurgeryElement":
        return SurgeryElement(self, terms, ctx)

    def one(self, ctx=None) -> "SurgeryElement":
        return SurgeryElement(self, {self.zero_vector(): 1}, ctx)

    def letter(self, name: str, ctx=None) -> "SurgeryElement":
        k = [0] * len(self.letters)
        k[self.index[name]] = 1
        return SurgeryElement(self, {tuple(k): 1}, ctx)

    # ---------------------------------------------------------------- words
    def _weyl_shift(self, k: Exponent) -> int:
        """``e`` with (ordered product in letter order) = ``v^e x^k``."""
        A = self.matrix.entries
        nz = [(i, e) for i, e in enumerate(k) if e]
        total = 0
        for s, (i, ei) in enumerate(nz):
            row = A[i]
            for j, ej in nz[s + 1 :]:
                total += ei * ej * row[j]
        return total

    def word_of(self, k: Exponent) -> Word:
        return tuple((i, e) for i, e in enumerate(k) if e)

    def normalize(self, word: Word) -> Dict[Exponent, Dict[int, int]]:
        """Expand an ordered word into basis terms.

        Returns ``{k: {v_exponent: integer}}`` (a symbolic scalar per term).
        """
        key = word
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        A = self.matrix.entries
        w = [list(t) for t in word if t[1]]
        shift = 0
        # insertion sort into letter order, collecting v-powers
        i = 1
        while i < len(w):
            j = i
            while j > 0 and w[j - 1][0] > w[j][0]:
                (x, s), (y, t) = w[j - 1], w[j]
                if self.partner.get(y) == x:
                    break  # a* before a: cannot pass, handled below
                shift += 2 * s * t * A[x][y]  # x^s y^t = v^(2st P) y^t x^s
                w[j - 1], w[j] = w[j], w[j - 1]
                j -= 1
            i += 1
        # merge equal neighbours
        merged: List[List[int]] = []
        for x, s in w:
            if merged and merged[-1][0] == x:
                merged[-1][1] += s
                if not merged[-1][1]:
                    merged.pop()
            else:
                merged.append([x, s])
        w = merged
        # look for a blocked pair (a* ... a) left by the sort, or adjacent a a*
        for pos in range(len(w) - 1):
            x, s = w[pos]
            y, t = w[pos + 1]
            if self.partner.get(x) == y or self.partner.get(y) == x:
                result = self._rewrite(w, pos, shift)
                self._cache[key] = result
                return result
        # sorted and reduced: ordered product equals v^(shift + weyl) x^k
        k = [0] * len(self.letters)
        for x, s in w:
            k[x] = s
        k = tuple(k)
        if w and any(s < 0 for x, s in w if x not in self.ess_index):
            raise ExactDivisionFailure("negative power of a monogon letter in a word")
        result = {k: {shift + self._weyl_shift(k): 1}}
        self._cache[key] = result
        return result

    def _rewrite(self, w, pos, shift):
        x, s = w[pos]
        y, t = w[pos + 1]
        left, right = w[:pos], w[pos + 2 :]
        if self.partner.get(x) == y:
            # a^s a*^t = a^(s-1) (a a*) a*^(t-1)
            rel = self._rel_words[x]
            pieces = [(x, s - 1)], [(y, t - 1)]
            mid_terms = rel
        else:
            # a*^s a^t : use a* a = a^-1 (a a*) a, expressed through the
            # conjugation a (a a*) = (a a*)' a where primes pick up v-powers
            a, star = y, x
            rel = self._rel_words[a]
            mid_terms = []
            A = self.matrix.entries
            for e, word in rel:
                # a^-1 m a = v^(-2 <e_a, m>) m for a monomial word m
                pair = sum(p * A[a][letter] for letter, p in word)
                mid_terms.append((e - 2 * pair, word))
            pieces = [(star, s - 1)], [(a, t - 1)]
        out: Dict[Exponent, Dict[int, int]] = {}
        for e, mid in mid_terms:
            new_word = tuple(
                (l, p)
                for l, p in (*map(tuple, left), *pieces[0], *mid, *pieces[1], *map(tuple, right))
                if p
            )
            for k, poly in self.normalize(new_word).items():
                acc = out.setdefault(k, {})
                for ve, cval in poly.items():
                    ve2 = ve + e + shift
                    acc[ve2] = acc.get(ve2, 0) + cval
        return {k: {e: c for e, c in poly.items() if c} for k, poly in out.items() if any(poly.values())}


class SurgeryElement:
    """Finite sum of basis monomials of Z(Delta) with ground-ring scalars."""

    __slots__ = ("ctx_algebra", "ctx", "_terms")

    def __init__(self, algebra: SurgeryContext, terms=None, ctx=None):
        self.ctx_algebra = algebra
        self.ctx = _resolve_ctx(ctx)
        out: Dict[Exponent, GroundScalar] = {}
        for k, c in (terms or {}).items():
            if isinstance(k, Mapping):
                k = algebra.basis_vector(k)
            k = tuple(k)
            if len(k) != len(algebra.letters):
                raise ContextMismatch("exponent vector has the wrong length")
            if not algebra.is_normal(k):
                raise ValueError(f"{k} is not in normal form")
            c = c if isinstance(c, GroundScalar) else GroundScalar(int(c), self.ctx)
            c = c.with_context(self.ctx) if c.ctx != self.ctx else c
            s = out.get(k, GroundScalar.zero(self.ctx)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        self._terms = out

    @classmethod
    def _raw(cls, algebra, terms, ctx):
        obj = object.__new__(cls)
        obj.ctx_algebra = algebra
        obj.ctx = ctx
        obj._terms = terms
        return obj

    @property
    def algebra(self) -> SurgeryContext:
        return self.ctx_algebra

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if other.ctx_algebra is not self.ctx_algebra and other.ctx_algebra != self.ctx_algebra:
            raise ContextMismatch("elements of different surgery algebras")
        if other.ctx != self.ctx:
            raise ContextMismatch("different ground rings")

    def _lift(self, other):
        if isinstance(other, SurgeryElement):
            return other
        if isinstance(other, (int, GroundScalar)):
            return SurgeryElement(self.ctx_algebra, {self.ctx_algebra.zero_vector(): other}, self.ctx)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SurgeryElement._raw(self.ctx_algebra, out, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return SurgeryElement._raw(self.ctx_algebra, {k: -c for k, c in self._terms.items()}, self.ctx)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = c if isinstance(c, GroundScalar) else GroundScalar(int(c), self.ctx)
        if c.ctx != self.ctx:
            c = c.with_context(self.ctx)
        out = {}
        for k, d in self._terms.items():
            p = d * c
            if p:
                out[k] = p
        return SurgeryElement._raw(self.ctx_algebra, out, self.ctx)

    def __mul__(self, other):
        if isinstance(other, (int, GroundScalar)):
            return self.scale(other)
        if not isinstance(other, SurgeryElement):
            return NotImplemented
        return surgery_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, GroundScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx_algebra.one(self.ctx)
        for _ in range(n):
            result = result * self
        return result

    def is_invertible_monomial(self) -> bool:
        if len(self._terms) != 1:
            return False
        (k, c), = self._terms.items()
        alg = self.ctx_algebra
        return c.is_unit_monomial() and all(
            not e or i in alg.ess_index for i, e in enumerate(k)
        )

    def inverse(self) -> "SurgeryElement":
        if not self.is_invertible_monomial():
            raise NonInvertibleImage("only unit multiples of monomials in essential edges are invertible")
        (k, c), = self._terms.items()
        return SurgeryElement._raw(self.ctx_algebra, {tuple(-e for e in k): c.inverse()}, self.ctx)

    def __eq__(self, other):
        if isinstance(other, (int, GroundScalar)):
            other = self._lift(other)
        if not isinstance(other, SurgeryElement):
            return NotImplemented
        return self.ctx_algebra == other.ctx_algebra and self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def as_torus_element(self) -> TorusElement:
        """Same terms read in the letter torus; used for printing."""
        return TorusElement._raw(self.ctx_algebra.matrix, dict(self._terms), self.ctx)

    def __str__(self):
        from .parsing import format_element

        return format_element(self.as_torus_element())

    def __repr__(self):
        return f"SurgeryElement({self})"


def surgery_multiply(x: SurgeryElement, y: SurgeryElement) -> SurgeryElement:
    x._check(y)
    alg, ctx = x.ctx_algebra, x.ctx
    out: Dict[Exponent, GroundScalar] = {}
    partner = alg.partner
    for k, c in x._terms.items():
        wk = alg.word_of(k)
        sk = alg._weyl_shift(k)
        for n, d in y._terms.items():
            cd = c * d
            clash = any(
                (k[i] and n[j]) or (n[i] and k[j]) for i, j in partner.items()
            )
            if not clash:
                kn = tuple(a + b for a, b in zip(k, n))
                terms = {kn: {alg.matrix.pairing(k, n): 1}}
                shift = 0
            else:
                terms = alg.normalize(wk + alg.word_of(n))
                shift = -sk - alg._weyl_shift(n)
            for m, poly in terms.items():
                s = GroundScalar({e + shift: v for e, v in poly.items()}, ctx) * cd
                if m in out:
                    s = out[m] + s
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
    return SurgeryElement._raw(alg, out, ctx)


# ---------------------------------------------------------------------------
# embedding into X(Delta)


def theta_embed(x: SurgeryElement) -> TorusElement:
    """Image in the torus ``X(Delta)``; ``a*`` goes to ``a^-1 (a a*)``."""
    alg = x.ctx_algebra
    T = skein_torus(alg.q)
    ctx = x.ctx
    images = {}
    for lab in alg.letters:
        if lab in T:
            images[lab] = TorusElement.generator(T, lab, 1, ctx)
    for a, rel in alg.relations.items():
        b = images[rel.b]
        c = images[rel.c]
        h = images[rel.hole]
        rhs = (b * b).scale(v_power(4, ctx)) + (c * c).scale(v_power(-4, ctx)) + h * b * c
        images[rel.dual] = TorusElement.generator(T, a, -1, ctx) * rhs
    src = x.as_torus_element()

    def invert(g, img):
        return img.inverse()

    return apply_monomial_map(src, images, TorusElement.one(T, ctx), alg.letters, invert)


# ---------------------------------------------------------------------------
# homomorphisms given on letters


def map_surgery(
    x: SurgeryElement,
    images: Mapping[str, SurgeryElement],
    target: SurgeryContext,
) -> SurgeryElement:
    """Evaluate the algebra map with the given letter images."""
    alg = x.ctx_algebra

    def invert(g, img):
        if g not in alg.ess and g not in alg.index:
            raise NonInvertibleImage(g)
        if alg.index[g] not in alg.ess_index:
            raise NonInvertibleImage(f"{g} is not invertible")
        if not img.is_invertible_monomial():
            raise NonInvertibleImage(f"image of {g} is not invertible in the target")
        return img.inverse()

    return apply_monomial_map(x.as_torus_element(), images, target.one(x.ctx), alg.letters, invert)


def _fresh(name: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if name not in taken:
        return name
    i = 2
    while f"{name}_{i}" in taken:
        i += 1
    return f"{name}_{i}"


def add_point_boundary(q: Quasitriangulation, a: str, point: str = None, names=None):
    """Put a new marked point on boundary edge ``a``; returns ``(q', a1, a2, point)``."""
    if a not in q.boundary_flags:
        raise NotBoundaryEdge(f"{a!r} is not a boundary edge")
    s = q.surface
    taken = set(q.edge_names) | set(s.unmarked) | {c.name for c in s.components}
    a1, a2 = names or (_fresh(a + "1", taken), _fresh(a + "2", taken | {a + "1"}))
    point = point or _fresh("p_" + a, s.points)
    # a runs from p_i (last slot) to p_{i+1} (first slot)
    for comp in s.components:
        for i, p in enumerate(comp.points):
            if q.vertex_orders[p][-1][0] == a:
                nxt = comp.points[(i + 1) % len(comp.points)]
                owner, idx = comp, i
                break
        else:
            continue
        break
    orders = {p: list(l) for p, l in q.vertex_orders.items()}
    orders[p] = orders[p] + [(a1, 0)]
    orders[nxt] = [(a2, 1)] + orders[nxt]
    orders[point] = [(a1, 1), (a2, 0)]
    pts = list(owner.points)
    pts.insert(idx + 1, point)
    comps = tuple(
        BoundaryComponent(c.name, tuple(pts)) if c is owner else c for c in s.components
    )
    surface = MarkedSurfaceSpec(comps, s.genus)
    edges = list(q.edges) + [Edge(a1, (p, point)), Edge(a2, (point, nxt))]
    flags = (set(q.boundary_flags) - {a}) | {a1, a2}
    new_q = Quasitriangulation(surface, edges, orders, q.monogon_holes, flags)
    return new_q, a1, a2, point


def add_point_unmarked(q: Quasitriangulation, hole: str, point: str = None, names=None):
    """Mark a point on the unmarked component ``hole``; returns ``(q', d, e, f, point)``."""
    s = q.surface
    if hole not in s.unmarked:
        raise NotUnmarked(f"{hole!r} is not an unmarked boundary component")
    a = q.hole_edge(hole)
    taken = set(q.edge_names) | set(s.unmarked) | {c.name for c in s.components}
    if names:
        d, e, f = names
    else:
        d = _fresh("d", taken)
        e = _fresh("e", taken | {d})
        f = _fresh("f", taken | {d, e})
    point = point or _fresh("p_" + hole, s.points)
    p0, _ = q.position((a, 0))
    lst = list(q.vertex_orders[p0])
    t = min(lst.index((a, 0)), lst.index((a, 1)))
    lst[t + 1 : t + 1] = [(d, 0), (e, 0)]
    orders = {p: list(l) for p, l in q.vertex_orders.items()}
    orders[p0] = lst
    orders[point] = [(f, 0), (d, 1), (e, 1), (f, 1)]
    comps = tuple(
        BoundaryComponent(c.name, (point,)) if c.name == hole else c for c in s.components
    )
    surface = MarkedSurfaceSpec(comps, s.genus)
    edges = list(q.edges) + [Edge(d, (p0, point)), Edge(e, (p0, point)), Edge(f, (point, point))]
    holes = {k: v for k, v in q.monogon_holes.items() if v != hole}
    flags = set(q.boundary_flags) | {f}
    new_q = Quasitriangulation(surface, edges, orders, holes, flags)
    return new_q, d, e, f, point


def plug_sides(q: Quasitriangulation, hole: str):
    """``(a, b, c)`` for plugging: ``b`` is removed and identified with ``c``."""
    a = q.hole_edge(hole)
    fr = flip(q, a)
    before, after, _ = fr.labels
    return a, after, before


def plug_hole(q: Quasitriangulation, hole: str):
    """Glue a disk along ``hole``; returns ``(q', a, b, c)`` with ``a, b`` removed."""
    s = q.surface
    if hole not in s.unmarked:
        raise NotUnmarked(f"{hole!r} is not an unmarked boundary component")
    a, b, c = plug_sides(q, hole)
    orders = {p: [h for h in l if h[0] not in (a, b)] for p, l in q.vertex_orders.items()}
    comps = tuple(comp for comp in s.components if comp.name != hole)
    surface = MarkedSurfaceSpec(comps, s.genus)
    edges = [e for e in q.edges if e.name not in (a, b)]
    flags = set(q.boundary_flags) - {b}
    if b in q.boundary_flags:
        flags.add(c)
    holes = {k: v for k, v in q.monogon_holes.items() if k != a}
    new_q = Quasitriangulation(surface, edges, orders, holes, flags)
    return new_q, a, b, c


def _identity_images(src: SurgeryContext, dst: SurgeryContext, ctx, skip=()):
    return {
        lab: dst.letter(lab, ctx) for lab in src.letters if lab not in skip and lab in dst.index
    }


def psi_add_point_boundary(src: SurgeryContext, a: str, x: SurgeryElement, dst: SurgeryContext = None):
    """Inclusion ``Z(Delta) -> Z(Delta + {a1, a2})``; every letter is fixed."""
    if dst is None:
        dst = SurgeryContext(add_point_boundary(src.q, a)[0])
    elif a not in src.q.boundary_flags:
        raise NotBoundaryEdge(f"{a!r} is not a boundary edge")
    images = _identity_images(src, dst, x.ctx)
    return map_surgery(x, images, dst)


def psi_add_point_unmarked(src: SurgeryContext, hole: str, x: SurgeryElement, dst_data=None):
    """Marking a point on ``hole``; ``dst_data`` is the output of :func:`add_point_unmarked`."""
    if hole not in src.holes:
        raise NotUnmarked(f"{hole!r} is not an unmarked boundary component")
    new_q, d, e, f, _ = dst_data or add_point_unmarked(src.q, hole)
    dst = SurgeryContext(new_q)
    a = src.q.hole_edge(hole)
    rel = src.relations[a]
    ctx = x.ctx
    images = _identity_images(src, dst, ctx, skip=(hole, rel.dual))

    def mono(spec):
        return dst.element({dst.basis_vector(spec): 1}, ctx)

    b, c = rel.b, rel.c
    images[hole] = mono({d: -1, e: 1}) + mono({a: 1, d: -1, e: -1, f: 1}) + mono({d: 1, e: -1})
    bc = {b: 1, c: 1} if b != c else {b: 2}

    def merged(*parts):
        out: Dict[str, int] = {}
        for part in parts:
            for k, v in part.items():
                out[k] = out.get(k, 0) + v
        return out

    images[rel.dual] = (
        mono({a: -1, b: 2})
        + mono({a: -1, c: 2})
        + mono(merged({a: -1, d: -1, e: 1}, bc))
        + mono(merged({d: -1, e: -1, f: 1}, bc))
        + mono(merged({a: -1, d: 1, e: -1}, bc))
    )
    return map_surgery(x, images, dst), dst


def psi_plug_hole(src: SurgeryContext, hole: str, x: SurgeryElement, dst_data=None):
    """Plugging ``hole``: ``a, a* -> 0``, ``b -> c``, ``hole -> -q^2 - q^-2``."""
    if hole not in src.holes:
        raise NotUnmarked(f"{hole!r} is not an unmarked boundary component")
    new_q, a, b, c = dst_data or plug_hole(src.q, hole)
    dst = SurgeryContext(new_q)
    ctx = x.ctx
    images = _identity_images(src, dst, ctx, skip=(a, src.relations[a].dual, b, hole))
    zero = dst.one(ctx).scale(0)
    images[a] = zero
    images[src.relations[a].dual] = zero
    images[b] = dst.letter(c, ctx)
    images[hole] = dst.one(ctx).scale(-(v_power(4, ctx) + v_power(-4, ctx)))
    return map_surgery(x, images, dst), dst


# ---------------------------------------------------------------------------
# sampling helpers shared by tests and the verification suite


def random_basis_element(alg: SurgeryContext, rng: random.Random, bound: int = 2, ctx=None) -> SurgeryElement:
    k = [0] * len(alg.letters)
    for i, lab in enumerate(alg.letters):
        if i in alg.ess_index:
            k[i] = rng.randint(-bound, bound)
        else:
            k[i] = rng.randint(0, bound)
    for i, j in alg.partner.items():
        if k[i] and k[j]:
            if rng.random() < 0.5:
                k[i] = 0
            else:
                k[j] = 0
    c = GroundScalar({rng.randint(-3, 3): rng.choice([-2, -1, 1, 2])}, ctx)
    return SurgeryElement(alg, {tuple(k): c}, ctx)


def basis_window(alg: SurgeryContext, bound: int = 2, fixed_zero: Iterable[str] = ()):
    """All normal-form exponent vectors with entries in ``[-bound, bound]``."""
    from itertools import product

    zero = {alg.index[l] for l in fixed_zero}
    ranges = []
    for i in range(len(alg.letters)):
        if i in zero:
            ranges.append((0,))
        elif i in alg.ess_index:
            ranges.append(range(-bound, bound + 1))
        else:
            ranges.append(range(0, bound + 1))
    for k in product(*ranges):
        if alg.is_normal(k):
            yield k
