"""Chebyshev polynomials of type one and the q-commuting closed form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .qtorus import CommutationMatrix, TorusElement, weyl_normalize
from .scalars import GroundScalar, chebyshev_coefficient

__all__ = [
    "KE_TORUS",
    "ChebyshevPolynomial",
    "cheb_closed_form",
    "cheb_eval",
    "cheb_eval_scalar",
    "cheb_poly",
    "ke_sum",
]

#: two generators with ``K E = q^2 E K``
KE_TORUS = CommutationMatrix(("K", "E"), [[0, 2], [-2, 0]])


@dataclass(frozen=True)
class ChebyshevPolynomial:
    n: int
    coefficients: Tuple[int, ...]

    def __str__(self):
        parts = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts) or "0"


@lru_cache(maxsize=None)
def cheb_poly(n: int) -> ChebyshevPolynomial:
    """``T_0 = 2``, ``T_1 = z``, ``T_n = z T_{n-1} - T_{n-2}``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    prev, cur = [2], [0, 1]
    if n == 0:
        return ChebyshevPolynomial(0, (2,))
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return ChebyshevPolynomial(n, tuple(cur))


def _horner(coeffs, x, one):
    acc = one * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x
        if c:
            acc = acc + one * c
    return acc


def cheb_eval(x: TorusElement, n: int) -> TorusElement:
    """Threading by ``T_n``: evaluate the polynomial at ``x``."""
    one = TorusElement.one(x.torus, x.ctx)
    return _horner(cheb_poly(n).coefficients, x, one)


def cheb_eval_scalar(s: GroundScalar, n: int) -> GroundScalar:
    return _horner(cheb_poly(n).coefficients, s, GroundScalar.one(s.ctx))


def ke_sum(ctx=None) -> TorusElement:
    """``K + K^-1 + E``."""
    t = KE_TORUS
    return TorusElement(t, {(1, 0): 1, (-1, 0): 1, (0, 1): 1}, ctx)


def cheb_closed_form(n: int, ctx=None) -> TorusElement:
    """``K^n + K^-n + E^n + sum_{r,j} c(n,r,j) [E^r K^(n-2j-r)]``."""
    if n < 1:
        raise ValueError("n must be positive")
    t = KE_TORUS
    out = TorusElement(t, {(n, 0): 1, (-n, 0): 1, (0, n): 1}, ctx)
    for r in range(1, n):
        for j in range(0, n - r + 1):
            c = chebyshev_coefficient(n, r, j, ctx)
            if c:
                bracket = weyl_normalize(t, [t.unit("E", r), t.unit("K", n - 2 * j - r)], ctx)
                out = out + bracket.scale(c)
    return out
