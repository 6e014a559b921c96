"""Frobenius homomorphisms ``x^k -> x^(Nk)`` between quantum tori."""

from __future__ import annotations

from .errors import MatrixScaleMismatch
from .qtorus import CommutationMatrix, TorusElement
from .scalars import ground_substitute

__all__ = ["frobenius", "frobenius_epsilon", "frobenius_image_check"]


def frobenius(x: TorusElement, N: int, target: CommutationMatrix) -> TorusElement:
    """``F_N : T(N^2 A) -> T(A)``; scalars are left alone."""
    if N < 1:
        raise ValueError("N must be positive")
    if x.torus.labels != target.labels or x.torus != target.scaled(N * N):
        raise MatrixScaleMismatch(
            f"source matrix is not {N}^2 times the target matrix"
        )
    terms = {tuple(N * e for e in k): c for k, c in x.items()}
    return TorusElement._raw(target, terms, x.ctx)


def frobenius_epsilon(x: TorusElement, N: int) -> TorusElement:
    """Frobenius from the torus over ``epsilon = xi^(N^2)`` to the one over ``xi``.

    Both tori carry the same matrix ``A``; the source is written with ``v``
    standing for ``epsilon^(1/2)``, which becomes ``v^(N^2)`` on the target.
    """
    if N < 1:
        raise ValueError("N must be positive")
    terms = {}
    for k, c in x.items():
        c = ground_substitute(c, N * N)
        if c:
            terms[tuple(N * e for e in k)] = c
    return TorusElement._raw(x.torus, terms, x.ctx)


def frobenius_image_check(x: TorusElement, y: TorusElement, N: int) -> bool:
    """True iff ``y == F_N(x)``, with ``x`` in ``T(N^2 A)`` and ``y`` in ``T(A)``."""
    try:
        return frobenius(x, N, y.torus) == y
    except MatrixScaleMismatch:
        return False
