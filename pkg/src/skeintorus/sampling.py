"""Seeded random objects for property checks."""

from __future__ import annotations

import random
from typing import Sequence

from .qtorus import CommutationMatrix, TorusElement
from .scalars import GroundScalar

DEFAULT_SEED = 20240611


def random_scalar(rng: random.Random, ctx=None, terms: int = 3, span: int = 6) -> GroundScalar:
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        e = rng.randint(-span, span)
        coeffs[e] = coeffs.get(e, 0) + rng.randint(-5, 5)
    return GroundScalar(coeffs, ctx)


def random_matrix(rng: random.Random, labels: Sequence[str], bound: int = 3) -> CommutationMatrix:
    n = len(labels)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = x, -x
    return CommutationMatrix(labels, rows)


def random_exponent(rng: random.Random, n: int, bound: int = 3, nonneg: Sequence[int] = ()):
    out = [rng.randint(-bound, bound) for _ in range(n)]
    for i in nonneg:
        out[i] = abs(out[i])
    return tuple(out)


def random_element(
    rng: random.Random,
    torus: CommutationMatrix,
    ctx=None,
    terms: int = 3,
    bound: int = 3,
    nonneg: Sequence[int] = (),
) -> TorusElement:
    out = {}
    for _ in range(rng.randint(1, terms)):
        k = random_exponent(rng, len(torus.labels), bound, nonneg)
        out[k] = random_scalar(rng, ctx)
    return TorusElement(torus, out, ctx)
