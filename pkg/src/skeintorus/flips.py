"""Flips of quasitriangulations and the induced transfer maps.

Flipping ``a`` produces an edge named ``a*``; flipping ``a*`` gives back
``a``.  The new edge keeps the position of the old one in the edge list, so
the two skein tori share a label order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import NegativeFlippedExponent, NotFlippable, TorusMismatch
from .frobenius import frobenius_epsilon
from .qtorus import CommutationMatrix, TorusElement, apply_monomial_map
from .scalars import _resolve_ctx
from .surface import (
    Edge,
    Quasitriangulation,
    other_half,
    skein_torus,
)

__all__ = [
    "FlipResult",
    "dual_name",
    "flip",
    "flip_commutation",
    "flippable_edges",
    "random_flips",
    "theta_image",
    "transfer",
    "transfer_round_trip",
    "verify_frobenius_flip",
]


def dual_name(a: str) -> str:
    return a[:-1] if a.endswith("*") else a + "*"


@dataclass(frozen=True)
class FlipResult:
    old_q: Quasitriangulation
    new_q: Quasitriangulation
    edge: str
    new_edge: str
    case: int
    #: case 1: quadrilateral sides (b, c, d, e) in cyclic order, with
    #: ``[b d a*^-1]`` and ``[c e a*^-1]`` the two transfer terms;
    #: case 2: (b, c, hole) with b clockwise-before the monogon at its corner
    labels: Tuple[str, ...]

    @property
    def new_torus(self) -> CommutationMatrix:
        return skein_torus(self.new_q)


def _insert_after(lst, anchor, new):
    i = lst.index(anchor)
    return lst[: i + 1] + list(new) + lst[i + 1 :]


def _walk_triangle(q: Quasitriangulation, start_point, start_index):
    """Half-edges left from each corner of the face through corner ``(p, i)``.

    Returns ``[(out_half, in_half), ...]`` where ``in_half`` is where the walk
    arrives; the arrival half sits just before the next corner's out half.
    """
    steps = []
    cur = (start_point, start_index)
    for _ in range(3):
        p, i = cur
        out = q.vertex_orders[p][i + 1]
        arrive = other_half(out)
        steps.append((out, arrive))
        cur = q.position(arrive)
    if cur != (start_point, start_index):
        raise NotFlippable("face is not a triangle")
    return steps


def flippable_edges(q: Quasitriangulation):
    out = []
    for a in q.edge_names:
        try:
            flip(q, a)
        except NotFlippable:
            continue
        out.append(a)
    return out


def flip(q: Quasitriangulation, a: str) -> FlipResult:
    if a in q.boundary_flags:
        raise NotFlippable(f"{a!r} is a boundary edge")
    q.edge(a)
    if a in q.monogon_holes:
        return _flip_case2(q, a)
    return _flip_case1(q, a)


def _flip_case1(q: Quasitriangulation, a: str) -> FlipResult:
    p, i = q.position((a, 0))
    p2, j = q.position((a, 1))
    # first triangle: a.0 leaves corner (p, i-1); second: a.1 leaves (p2, j-1)
    f1 = _walk_triangle(q, p, i - 1)
    f2 = _walk_triangle(q, p2, j - 1)
    if [s[0][0] for s in f1].count(a) != 1 or [s[0][0] for s in f2].count(a) != 1:
        raise NotFlippable(f"{a!r} does not separate two distinct triangles")
    if set(f1) & set(f2):
        raise NotFlippable(f"{a!r} borders the same triangle twice")
    (_, _), (x_out, x_in), (y_out, _) = f1
    (_, _), (z_out, z_in), (w_out, _) = f2
    r = q.edge(x_in[0]).ends[x_in[1]]
    s = q.edge(z_in[0]).ends[z_in[1]]
    star = dual_name(a)
    if star in q._edge_index:
        raise NotFlippable(f"edge name {star!r} already in use")
    orders = {pt: [h for h in lst if h[0] != a] for pt, lst in q.vertex_orders.items()}
    orders[r] = _insert_after(orders[r], x_in, [(star, 0)])
    orders[s] = _insert_after(orders[s], z_in, [(star, 1)])
    edges = [Edge(star, (r, s)) if e.name == a else e for e in q.edges]
    new_q = q.replace(edges=edges, vertex_orders=orders)
    x, y, z, w = x_out[0], y_out[0], z_out[0], w_out[0]
    T = skein_torus(new_q)
    kxz = _sum_vec(T, [x, z, (star, -1)])
    kyw = _sum_vec(T, [y, w, (star, -1)])
    if T.pairing(kxz, kyw) >= 0:
        labels = min((x, y, z, w), (z, w, x, y))
    else:
        labels = min((y, z, w, x), (w, x, y, z))
    return FlipResult(q, new_q, a, star, 1, labels)


def _flip_case2(q: Quasitriangulation, a: str) -> FlipResult:
    p, _ = q.position((a, 0))
    lst = q.vertex_orders[p]
    t = min(lst.index((a, 0)), lst.index((a, 1)))
    if lst[t + 1][0] != a:
        raise NotFlippable(f"halves of monogon edge {a!r} are not adjacent")
    b_half, c_half = lst[t - 1], lst[t + 2]
    b, c = b_half[0], c_half[0]
    if b == c or a in (b, c):
        raise NotFlippable(f"triangle around monogon {a!r} is degenerate")
    c_in = other_half(c_half)
    p2, j = q.position(c_in)
    if q.vertex_orders[p2][j + 1] != other_half(b_half):
        raise NotFlippable(f"no triangle on the far side of monogon {a!r}")
    star = dual_name(a)
    if star in q._edge_index:
        raise NotFlippable(f"edge name {star!r} already in use")
    orders = {pt: [h for h in lst2 if h[0] != a] for pt, lst2 in q.vertex_orders.items()}
    orders[p2] = _insert_after(orders[p2], c_in, [(star, 0), (star, 1)])
    edges = [Edge(star, (p2, p2)) if e.name == a else e for e in q.edges]
    holes = {(star if k == a else k): v for k, v in q.monogon_holes.items()}
    new_q = q.replace(edges=edges, vertex_orders=orders, monogon_holes=holes)
    return FlipResult(q, new_q, a, star, 2, (b, c, q.monogon_holes[a]))


def _sum_vec(T: CommutationMatrix, parts):
    out = [0] * len(T.labels)
    for part in parts:
        lab, e = part if isinstance(part, tuple) else (part, 1)
        out[T.index(lab)] += e
    return tuple(out)


def theta_image(fr: FlipResult, ctx=None) -> TorusElement:
    """Image of the flipped edge in the torus of the new quasitriangulation."""
    T = fr.new_torus
    star = fr.new_edge
    if fr.case == 1:
        b, c, d, e = fr.labels
        terms = {
            _sum_vec(T, [b, d, (star, -1)]): 1,
            _sum_vec(T, [c, e, (star, -1)]): 1,
        }
    else:
        b, c, hole = fr.labels
        terms = {}
        for k in (
            _sum_vec(T, [(b, 2), (star, -1)]),
            _sum_vec(T, [(c, 2), (star, -1)]),
            _sum_vec(T, [b, c, hole, (star, -1)]),
        ):
            terms[k] = terms.get(k, 0) + 1
    return TorusElement(T, terms, ctx)


def flip_commutation(fr: FlipResult) -> int:
    """``<X, Y>`` in the new torus for the two case-1 terms; ``XY = v^(2<X,Y>) YX``."""
    if fr.case != 1:
        raise NotFlippable("only defined for case 1 flips")
    T = fr.new_torus
    b, c, d, e = fr.labels
    kx = _sum_vec(T, [b, d, (fr.new_edge, -1)])
    ky = _sum_vec(T, [c, e, (fr.new_edge, -1)])
    return T.pairing(kx, ky)


def transfer(q: Quasitriangulation, a: str, x: TorusElement, fr: Optional[FlipResult] = None) -> TorusElement:
    """Change of coordinates from ``X(q)`` to ``X(flip(q, a))``.

    Defined on terms whose exponent of ``a`` is nonnegative.
    """
    fr = fr or flip(q, a)
    src = skein_torus(q)
    if x.torus != src:
        raise TorusMismatch("element does not live in the torus of this quasitriangulation")
    ia = src.index(a)
    if any(k[ia] < 0 for k in x.support()):
        raise NegativeFlippedExponent(f"some term has a negative power of {a!r}")
    T = fr.new_torus
    ctx = x.ctx
    images = {}
    for lab in src.labels:
        if lab == a:
            images[lab] = theta_image(fr, ctx)
        else:
            images[lab] = TorusElement.generator(T, lab, 1, ctx)

    def invert(g, img):
        return img.inverse()

    return apply_monomial_map(x, images, TorusElement.one(T, ctx), src.labels, invert)


def transfer_round_trip(q: Quasitriangulation, a: str, x: TorusElement) -> bool:
    """Check that flipping back undoes the transfer on ``x``.

    The forward image has negative powers of ``a*``; multiplying by a
    large enough power of ``a*`` clears them, and the same factor is
    pushed through on the other side.
    """
    fr = flip(q, a)
    y = transfer(q, a, x, fr)
    T1 = fr.new_torus
    star = fr.new_edge
    i_star = T1.index(star)
    K = max([0] + [-k[i_star] for k in y.support()])
    star_K = TorusElement.generator(T1, star, K, y.ctx)
    back = flip(fr.new_q, star)
    lhs = transfer(fr.new_q, star, y * star_K, back)
    T0 = back.new_torus
    if T0.labels != x.torus.labels or T0 != x.torus:
        return False
    rhs = x.retarget(T0) * theta_image(back, x.ctx) ** K
    return lhs == rhs


def verify_frobenius_flip(q: Quasitriangulation, a: str, m=None, N: int = 2) -> bool:
    """Compare ``F_N(Theta(a))`` with ``Theta(F_N(a)) = Theta(a)^N``.

    ``m`` selects the cyclotomic order of ``v`` (``None`` keeps ``v``
    generic).  True iff the two sides agree exactly.
    """
    fr = flip(q, a)
    if fr.case != 1:
        raise NotFlippable("the Frobenius check is stated for case 1 flips")
    ctx = _resolve_ctx(m)
    theta = theta_image(fr, ctx)
    lhs = frobenius_epsilon(theta, N)
    rhs = theta ** N
    return lhs == rhs


def random_flips(q: Quasitriangulation, steps: int, rng: random.Random) -> Quasitriangulation:
    """Apply ``steps`` random flips; edges keep their names up to ``*``."""
    for _ in range(steps):
        choices = flippable_edges(q)
        if not choices:
            break
        q = flip(q, rng.choice(choices)).new_q
    return q
