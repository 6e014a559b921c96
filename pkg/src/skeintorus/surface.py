"""Marked surfaces and quasitriangulations as rotation systems.

Each marked point carries the clockwise list of half-edges incident to it.
A half-edge is a pair ``(edge_name, end)`` with ``end`` in ``{0, 1}`` and is
written ``name.end`` in files.

Conventions (used everywhere in the package):

* The marked points of a boundary component are listed counterclockwise,
  ``p_0, p_1, ...``.  At ``p_i`` the *last* half-edge in the clockwise list
  belongs to the boundary edge running to ``p_{i+1}`` and the *first* one to
  the boundary edge arriving from ``p_{i-1}``.
* Corner ``(p, i)`` is the sector between positions ``i`` and ``i + 1`` of
  the list at ``p``.  The sector between the last and the first entry faces
  the boundary and is not a corner of any face.
* Walking a face: from corner ``(p, i)`` leave along half-edge ``i + 1``,
  arrive at its partner at position ``j`` of some point ``p'``; the next
  corner is ``(p', j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidQuasitriangulation, MissingLabel
from .qtorus import CommutationMatrix

HalfEdge = Tuple[str, int]

__all__ = [
    "BoundaryComponent",
    "Edge",
    "HoledMonogon",
    "MarkedSurfaceSpec",
    "Quasitriangulation",
    "Triangle",
    "builtin",
    "builtin_names",
    "classify_edges",
    "half_str",
    "skein_torus",
    "validate",
    "vertex_matrix",
]


def half_str(h: HalfEdge) -> str:
    return f"{h[0]}.{h[1]}"


def other_half(h: HalfEdge) -> HalfEdge:
    return (h[0], 1 - h[1])


@dataclass(frozen=True)
class BoundaryComponent:
    name: str
    points: Tuple[str, ...] = ()

    @property
    def is_unmarked(self) -> bool:
        return not self.points


@dataclass(frozen=True)
class MarkedSurfaceSpec:
    components: Tuple[BoundaryComponent, ...]
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise InvalidQuasitriangulation("duplicate boundary component names")
        pts = [p for c in self.components for p in c.points]
        if len(set(pts)) != len(pts):
            raise InvalidQuasitriangulation("marked point names must be unique")
        if self.genus < 0:
            raise InvalidQuasitriangulation("genus must be nonnegative")
        if not self.components:
            raise InvalidQuasitriangulation("a marked surface needs a boundary")

    @property
    def points(self) -> Tuple[str, ...]:
        return tuple(p for c in self.components for p in c.points)

    @property
    def unmarked(self) -> Tuple[str, ...]:
        """Names of the unmarked components (the set H)."""
        return tuple(c.name for c in self.components if c.is_unmarked)

    @property
    def marked(self) -> Tuple[str, ...]:
        return tuple(c.name for c in self.components if not c.is_unmarked)

    def component(self, name: str) -> BoundaryComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def component_of(self, point: str) -> BoundaryComponent:
        for c in self.components:
            if point in c.points:
                return c
        raise KeyError(point)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.components)

    def check_quasitriangulable(self):
        pts = self.points
        b = len(self.components)
        if not pts:
            raise InvalidQuasitriangulation("surface has no marked points")
        if self.genus == 0 and b == 1 and len(pts) <= 2:
            raise InvalidQuasitriangulation("a disk needs at least 3 marked points")
        if self.genus == 0 and b == 2 and len(pts) == 1:
            raise InvalidQuasitriangulation(
                "an annulus with a single marked point has no quasitriangulation"
            )


@dataclass(frozen=True)
class Edge:
    name: str
    ends: Tuple[str, str]


@dataclass(frozen=True)
class Triangle:
    corners: Tuple[Tuple[str, int], ...]
    edges: Tuple[str, str, str]


@dataclass(frozen=True)
class HoledMonogon:
    corner: Tuple[str, int]
    edge: str
    hole: Optional[str]


class Quasitriangulation:
    """Edges, clockwise incidence lists, boundary flags and hole assignments.

    Construction validates the data (set ``check=False`` to skip, e.g. for
    testing error paths with :func:`validate`).
    """

    def __init__(
        self,
        surface: MarkedSurfaceSpec,
        edges: Iterable[Edge],
        vertex_orders: Mapping[str, Sequence[HalfEdge]],
        monogon_holes: Mapping[str, str],
        boundary_flags: Iterable[str],
        check: bool = True,
    ):
        self.surface = surface
        self.edges: Tuple[Edge, ...] = tuple(edges)
        self.vertex_orders: Dict[str, Tuple[HalfEdge, ...]] = {
            p: tuple((str(n), int(e)) for n, e in vertex_orders[p]) for p in vertex_orders
        }
        self.monogon_holes: Dict[str, str] = dict(monogon_holes)
        self.boundary_flags: FrozenSet[str] = frozenset(boundary_flags)
        self._edge_index = {e.name: e for e in self.edges}
        self._faces = None
        if check:
            self._faces = validate(self)

    # lookups ----------------------------------------------------------------
    @property
    def edge_names(self) -> Tuple[str, ...]:
        return tuple(e.name for e in self.edges)

    def edge(self, name: str) -> Edge:
        try:
            return self._edge_index[name]
        except KeyError:
            raise MissingLabel(name) from None

    def position(self, h: HalfEdge) -> Tuple[str, int]:
        p = self.edge(h[0]).ends[h[1]]
        return p, self.vertex_orders[p].index(h)

    @property
    def faces(self):
        if self._faces is None:
            self._faces = validate(self)
        return self._faces

    def hole_edge(self, hole: str) -> str:
        for a, h in self.monogon_holes.items():
            if h == hole:
                return a
        raise KeyError(hole)

    def replace(self, **changes) -> "Quasitriangulation":
        data = dict(
            surface=self.surface,
            edges=self.edges,
            vertex_orders=self.vertex_orders,
            monogon_holes=self.monogon_holes,
            boundary_flags=self.boundary_flags,
        )
        data.update(changes)
        return Quasitriangulation(**data)

    # comparison -------------------------------------------------------------
    def canonical(self):
        """Hashable form that forgets the .0/.1 orientation of every edge.

        The half that appears first when scanning marked points in surface
        order, each list left to right, is renamed ``.0``.
        """
        first: Dict[str, int] = {}
        for p in self.surface.points:
            for h in self.vertex_orders.get(p, ()):
                first.setdefault(h[0], h[1])
        flip = {n: first.get(n, 0) for n in self.edge_names}

        def fix(h):
            return (h[0], h[1] ^ flip[h[0]])

        edges = tuple(
            sorted(
                (e.name, e.ends if not flip[e.name] else (e.ends[1], e.ends[0]))
                for e in self.edges
            )
        )
        orders = tuple(
            (p, tuple(fix(h) for h in self.vertex_orders.get(p, ())))
            for p in self.surface.points
        )
        return (
            self.surface,
            edges,
            orders,
            tuple(sorted(self.monogon_holes.items())),
            tuple(sorted(self.boundary_flags)),
        )

    def __eq__(self, other):
        if not isinstance(other, Quasitriangulation):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"Quasitriangulation(edges={list(self.edge_names)!r})"


# ---------------------------------------------------------------------------
# validation and face tracing


def _structural_checks(q: Quasitriangulation):
    s = q.surface
    s.check_quasitriangulable()
    names = [e.name for e in q.edges]
    if len(set(names)) != len(names):
        raise InvalidQuasitriangulation("duplicate edge names")
    for n in names:
        if n in s.unmarked:
            raise InvalidQuasitriangulation(f"edge {n!r} clashes with a hole name")
    points = set(s.points)
    if set(q.vertex_orders) != points:
        missing = points - set(q.vertex_orders)
        extra = set(q.vertex_orders) - points
        raise InvalidQuasitriangulation(
            f"order lines do not match marked points (missing {sorted(missing)}, extra {sorted(extra)})"
        )
    seen = {}
    for p, lst in q.vertex_orders.items():
        if len(lst) < 2:
            raise InvalidQuasitriangulation(f"marked point {p!r} has fewer than two half-edges")
        for h in lst:
            if h in seen:
                raise InvalidQuasitriangulation(f"half-edge {half_str(h)} listed twice")
            seen[h] = p
    for e in q.edges:
        for end in (0, 1):
            h = (e.name, end)
            if h not in seen:
                raise InvalidQuasitriangulation(f"half-edge {half_str(h)} missing from order lines")
            if seen[h] != e.ends[end]:
                raise InvalidQuasitriangulation(
                    f"half-edge {half_str(h)} listed at {seen[h]!r} but edge ends at {e.ends[end]!r}"
                )
    if len(seen) != 2 * len(q.edges):
        extra = [half_str(h) for h in seen if h[0] not in q._edge_index]
        raise InvalidQuasitriangulation(f"half-edges of unknown edges: {extra}")
    # boundary segments
    expected = set()
    for comp in s.components:
        pts = comp.points
        for i, p in enumerate(pts):
            nxt = pts[(i + 1) % len(pts)]
            last = q.vertex_orders[p][-1]
            first = q.vertex_orders[nxt][0]
            if last[0] != first[0] or last[1] == first[1]:
                raise InvalidQuasitriangulation(
                    f"boundary between {p!r} and {nxt!r} is not closed by one edge "
                    f"({half_str(last)} vs {half_str(first)})"
                )
            expected.add(last[0])
    if expected != set(q.boundary_flags):
        raise InvalidQuasitriangulation(
            f"boundary edges {sorted(q.boundary_flags)} disagree with traced boundary {sorted(expected)}"
        )
    for a, hole in q.monogon_holes.items():
        if a not in q._edge_index:
            raise InvalidQuasitriangulation(f"hole assigned to unknown edge {a!r}")
        if hole not in s.unmarked:
            raise InvalidQuasitriangulation(f"{hole!r} is not an unmarked component")


def trace_faces(q: Quasitriangulation):
    """Raw face walk: list of corner cycles, each a list of ``(point, index)``."""
    orders = q.vertex_orders
    visited = set()
    cycles = []
    for p in q.surface.points:
        for i in range(len(orders[p]) - 1):
            if (p, i) in visited:
                continue
            cycle = []
            cur = (p, i)
            while cur not in visited:
                visited.add(cur)
                cycle.append(cur)
                pt, idx = cur
                out = orders[pt][idx + 1]
                nxt = q.position(other_half(out))
                if nxt[1] == len(orders[nxt[0]]) - 1:
                    raise InvalidQuasitriangulation(
                        f"face walk from corner {cur} runs into the boundary", face=cycle
                    )
                cur = nxt
            if cur != cycle[0]:
                raise InvalidQuasitriangulation("face walk does not close up", face=cycle)
            cycles.append(cycle)
    return cycles


def validate(q: Quasitriangulation):
    """Check the rotation system; return the faces (triangles and holed monogons)."""
    _structural_checks(q)
    faces = []
    monogon_edges = []
    for cycle in trace_faces(q):
        out_edges = tuple(q.vertex_orders[p][i + 1][0] for p, i in cycle)
        if len(cycle) == 3:
            faces.append(Triangle(tuple(cycle), out_edges))
        elif len(cycle) == 1:
            a = out_edges[0]
            monogon_edges.append(a)
            if a in q.boundary_flags:
                raise InvalidQuasitriangulation(f"boundary edge {a!r} bounds a monogon", face=cycle)
            hole = q.monogon_holes.get(a)
            if hole is None:
                raise InvalidQuasitriangulation(
                    f"monogon bounded by {a!r} has no hole assigned", face=cycle
                )
            faces.append(HoledMonogon(cycle[0], a, hole))
        else:
            raise InvalidQuasitriangulation(
                f"face with {len(cycle)} corners (edges {list(out_edges)})", face=cycle
            )
    if len(set(monogon_edges)) != len(monogon_edges):
        raise InvalidQuasitriangulation("an edge bounds two monogons")
    if set(monogon_edges) != set(q.monogon_holes):
        stray = set(q.monogon_holes) - set(monogon_edges)
        raise InvalidQuasitriangulation(f"hole assigned to non-monogon edges {sorted(stray)}")
    holes = list(q.monogon_holes.values())
    if sorted(holes) != sorted(q.surface.unmarked):
        raise InvalidQuasitriangulation(
            "each unmarked component must sit in exactly one monogon"
        )
    n_tri = sum(isinstance(f, Triangle) for f in faces)
    chi = len(q.surface.points) - len(q.edges) + n_tri
    if chi != q.surface.euler_characteristic:
        raise InvalidQuasitriangulation(
            f"Euler characteristic {chi} does not match genus {q.surface.genus} "
            f"with {len(q.surface.components)} boundary components"
        )
    return faces


def classify_edges(q: Quasitriangulation):
    """Return ``(bd, inner, mon, ess)`` as tuples in edge order."""
    names = q.edge_names
    bd = tuple(n for n in names if n in q.boundary_flags)
    inner = tuple(n for n in names if n not in q.boundary_flags)
    mon = tuple(n for n in names if n in q.monogon_holes)
    ess = tuple(n for n in names if n not in q.monogon_holes)
    return bd, inner, mon, ess


# ---------------------------------------------------------------------------
# vertex matrix


def vertex_matrix(q: Quasitriangulation) -> CommutationMatrix:
    """``P(a, b)``: over all points, +1 for each half of ``a`` listed after a half of ``b``, -1 before."""
    names = q.edge_names
    idx = {n: i for i, n in enumerate(names)}
    n = len(names)
    P = [[0] * n for _ in range(n)]
    for lst in q.vertex_orders.values():
        for j, later in enumerate(lst):
            for earlier in lst[:j]:
                a, b = idx[later[0]], idx[earlier[0]]
                if a != b:
                    P[a][b] += 1
                    P[b][a] -= 1
    return CommutationMatrix(names, P)


def skein_torus(q: Quasitriangulation) -> CommutationMatrix:
    """Matrix of ``X(Delta)``: edges, then unmarked components as central generators."""
    P = vertex_matrix(q)
    holes = q.surface.unmarked
    n = len(P.labels)
    rows = [list(r) + [0] * len(holes) for r in P.entries]
    rows += [[0] * (n + len(holes)) for _ in holes]
    return CommutationMatrix(P.labels + holes, rows)


# ---------------------------------------------------------------------------
# builtin library


def _h(s: str) -> HalfEdge:
    name, end = s.rsplit(".", 1)
    return (name, int(end))


def _make(components, genus, edges, orders, holes=None):
    surface = MarkedSurfaceSpec(tuple(BoundaryComponent(n, tuple(p)) for n, p in components), genus)
    edge_objs = [Edge(n, (a, b)) for n, a, b in edges]
    vo = {p: [_h(x) for x in lst.split()] for p, lst in orders.items()}
    # boundary edges are exactly those closing a boundary segment
    flags = set()
    for comp in surface.components:
        for p in comp.points:
            flags.add(vo[p][-1][0])
    return surface, Quasitriangulation(surface, edge_objs, vo, holes or {}, flags)


def _triangle():
    return _make(
        [("beta", ["p1", "p2", "p3"])],
        0,
        [("a", "p1", "p2"), ("b", "p2", "p3"), ("c", "p3", "p1")],
        {"p1": "c.1 a.0", "p2": "a.1 b.0", "p3": "b.1 c.0"},
    )


def _quad():
    return _make(
        [("beta", ["p1", "p2", "p3", "p4"])],
        0,
        [
            ("a", "p1", "p3"),
            ("b", "p1", "p2"),
            ("c", "p2", "p3"),
            ("d", "p3", "p4"),
            ("e", "p4", "p1"),
        ],
        {"p1": "e.1 a.0 b.0", "p2": "b.1 c.0", "p3": "c.1 a.1 d.0", "p4": "d.1 e.0"},
    )


def _hexagon():
    pts = [f"p{i}" for i in range(1, 7)]
    edges = [(f"s{i}", pts[i - 1], pts[i % 6]) for i in range(1, 7)]
    # fan of diagonals from p1
    edges += [("d3", "p1", "p3"), ("d4", "p1", "p4"), ("d5", "p1", "p5")]
    orders = {
        "p1": "s6.1 d5.0 d4.0 d3.0 s1.0",
        "p2": "s1.1 s2.0",
        "p3": "s2.1 d3.1 s3.0",
        "p4": "s3.1 d4.1 s4.0",
        "p5": "s4.1 d5.1 s5.0",
        "p6": "s5.1 s6.0",
    }
    return _make([("beta", pts)], 0, edges, orders)


def _annulus2():
    return _make(
        [("beta1", ["p1"]), ("beta2", ["p2"])],
        0,
        [("a", "p1", "p2"), ("b", "p1", "p2"), ("c", "p1", "p1"), ("d", "p2", "p2")],
        {"p1": "c.0 a.0 b.0 c.1", "p2": "d.0 a.1 b.1 d.1"},
    )


def _eye():
    return _make(
        [("outer", ["p", "p'"]), ("beta", [])],
        0,
        [("a", "p", "p"), ("b", "p'", "p"), ("c", "p", "p'")],
        {"p": "b.1 a.0 a.1 c.0", "p'": "c.1 b.0"},
        {"a": "beta"},
    )


def _holed_triangle():
    return _make(
        [("outer", ["p1", "p2", "p3"]), ("beta", [])],
        0,
        [
            ("a", "p1", "p1"),
            ("c", "p1", "p2"),
            ("s1", "p1", "p2"),
            ("s2", "p2", "p3"),
            ("s3", "p3", "p1"),
        ],
        {"p1": "s3.1 c.0 a.0 a.1 s1.0", "p2": "s1.1 c.1 s2.0", "p3": "s2.1 s3.0"},
        {"a": "beta"},
    )


def _torus1():
    return _make(
        [("beta", ["p"])],
        1,
        [("x", "p", "p"), ("y", "p", "p"), ("z", "p", "p"), ("w", "p", "p"), ("f", "p", "p")],
        {"p": _TORUS1_ORDER},
        None,
    )


# first hit of an exhaustive search over placements of x, y, z, w between f.0 and f.1
_TORUS1_ORDER = "f.0 x.0 y.0 z.0 x.1 w.0 y.1 z.1 w.1 f.1"


_BUILTINS = {
    "triangle": _triangle,
    "quad": _quad,
    "hexagon": _hexagon,
    "annulus2": _annulus2,
    "eye": _eye,
    "holed_triangle": _holed_triangle,
    "torus1": _torus1,
}


def builtin_names() -> Tuple[str, ...]:
    return tuple(_BUILTINS)


def builtin(name: str):
    """Return ``(surface, quasitriangulation)`` for a named example."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin surface {name!r}; choose from {sorted(_BUILTINS)}") from None
    return factory()
