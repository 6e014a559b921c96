"""Integer kernels of vertex matrices and the central monomials of X(Delta)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .surface import Quasitriangulation, vertex_matrix

Vector = Tuple[int, ...]

__all__ = [
    "CenterReport",
    "LatticeBasis",
    "boundary_vectors",
    "hnf",
    "integer_kernel",
    "same_lattice",
    "verify_center",
]


def hnf(rows: Sequence[Sequence[int]]) -> List[Vector]:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into
    ``[0, pivot)``, zero rows are dropped.  Two generating sets span the
    same lattice iff their forms agree.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: List[List[int]] = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col]]
        if not nz:
            col += 1
            continue
        # gcd reduction on this column
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                f = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= f * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        A = [r for r in A if r is not piv and any(r)]
        out.append(piv)
        col += 1
    # reduce entries above pivots
    for i, r in enumerate(out):
        c = next(j for j, x in enumerate(r) if x)
        for prev in out[:i]:
            f = prev[c] // r[c]
            if f:
                for j in range(len(r)):
                    prev[j] -= f * r[j]
    return [tuple(r) for r in out]


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return hnf(a) == hnf(b)


@dataclass(frozen=True)
class LatticeBasis:
    labels: Tuple[str, ...]
    vectors: Tuple[Vector, ...]

    def __len__(self):
        return len(self.vectors)

    def as_mappings(self) -> List[Dict[str, int]]:
        return [{l: e for l, e in zip(self.labels, v) if e} for v in self.vectors]


def integer_kernel(M: Sequence[Sequence[int]], labels: Sequence[str] = None) -> LatticeBasis:
    """Saturated basis of ``{k : M k = 0}`` over the integers, in Hermite form.

    Column operations reduce ``M`` to echelon form while the same operations
    are applied to an identity matrix ``U``; columns of ``U`` that end up
    under zero columns of ``M U`` span the kernel, and since ``U`` is
    unimodular no rational multiples are missed.
    """
    M = [list(r) for r in M]
    n = len(M[0]) if M else len(labels or ())
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    cols = [[M[i][j] for i in range(len(M))] for j in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]  # U[j] is column j
    rank = 0
    for row in range(len(M)):
        live = [j for j in range(rank, n) if cols[j][row]]
        while len(live) > 1:
            live.sort(key=lambda j: abs(cols[j][row]))
            p = live[0]
            for j in live[1:]:
                f = cols[j][row] // cols[p][row]
                cols[j] = [x - f * y for x, y in zip(cols[j], cols[p])]
                U[j] = [x - f * y for x, y in zip(U[j], U[p])]
            live = [j for j in live if cols[j][row]]
        if live:
            p = live[0]
            cols[rank], cols[p] = cols[p], cols[rank]
            U[rank], U[p] = U[p], U[rank]
            rank += 1
    kernel = [U[j] for j in range(rank, n)]
    return LatticeBasis(labels, tuple(hnf(kernel)))


def boundary_vectors(q: Quasitriangulation) -> Dict[str, Vector]:
    """``k_beta`` for each marked component: indicator of its boundary edges."""
    names = q.edge_names
    out = {}
    for comp in q.surface.components:
        if comp.is_unmarked:
            continue
        pts = set(comp.points)
        vec = tuple(
            int(n in q.boundary_flags and q.edge(n).ends[0] in pts) for n in names
        )
        out[comp.name] = vec
    return out


@dataclass
class CenterReport:
    nullity: int
    expected_nullity: int
    kernel: LatticeBasis
    boundary: Dict[str, Vector]
    lattice_equal: bool
    central: bool
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> List[str]:
        out = [
            f"nullity {self.nullity} (marked components {self.expected_nullity})",
            "kernel basis:",
        ]
        for m in self.kernel.as_mappings():
            out.append("  " + " ".join(f"{k}:{v}" for k, v in m.items()))
        out.append("boundary vectors:")
        for name, vec in self.boundary.items():
            m = {l: e for l, e in zip(self.kernel.labels, vec) if e}
            out.append(f"  {name} " + " ".join(f"{k}:{v}" for k, v in m.items()))
        for f in self.failures:
            out.append("FAIL " + f)
        return out


def verify_center(q: Quasitriangulation) -> CenterReport:
    P = vertex_matrix(q)
    ker = integer_kernel(P.entries, P.labels)
    bvec = boundary_vectors(q)
    failures = []
    expected = len(q.surface.marked)
    if len(ker) != expected:
        failures.append(f"nullity {len(ker)} != {expected}")
    lattice_equal = same_lattice(ker.vectors, list(bvec.values()))
    if not lattice_equal:
        failures.append("kernel lattice differs from the span of the boundary vectors")
    central = True
    for name, k in bvec.items():
        for lab in P.labels:
            if P.pairing(k, P.unit(lab)):
                central = False
                failures.append(f"{name} does not commute with {lab}")
    return CenterReport(len(ker), expected, ker, bvec, lattice_equal, central, failures)
