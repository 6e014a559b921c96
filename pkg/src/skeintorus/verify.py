"""Identity suite behind ``skeintorus verify``.

Every check is exact.  A check receives a seeded RNG and the optional
cyclotomic order ``m``; it returns ``(ok, detail)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from . import center, chebyshev, flips, frobenius, qtorus, scalars, surface, surgery
from .parsing import format_element, parse_expression
from .qtorus import CommutationMatrix, TorusElement
from .sampling import DEFAULT_SEED, random_element, random_matrix, random_scalar
from .scalars import GroundScalar, root_data, v_power

Result = Tuple[bool, str]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    location: str
    run: Callable[[random.Random, Optional[int]], Result]


CHECKS: List[Check] = []


def check(suite: str, name: str, location: str):
    def deco(fn):
        CHECKS.append(Check(suite, name, location, fn))
        return fn

    return deco


def _orders(m):
    return [m] if m else list(range(1, 65))


# --------------------------------------------------------------------- scalars


@check("scalars", "ring-axioms", "scalars:GroundScalar")
def _ring(rng, m):
    for _ in range(100):
        a, b, c = (random_scalar(rng, m) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            return False, f"failed on {a}, {b}, {c}"
    return True, "100 triples"


@check("scalars", "q-pascal", "scalars:quantum_binomial")
def _pascal(rng, m):
    q = v_power(2)
    for n in range(2, 13):
        for k in range(1, n):
            lhs = scalars.quantum_binomial(n, k)
            rhs = q ** k * scalars.quantum_binomial(n - 1, k) + q ** (k - n) * scalars.quantum_binomial(n - 1, k - 1)
            if lhs != rhs:
                return False, f"n={n}, k={k}"
    return True, "n <= 12"


@check("scalars", "gauss-criterion", "scalars:gauss_binomial")
def _gauss(rng, m):
    for mm in _orders(m):
        N0 = root_data(mm).N
        for N in sorted(set(range(2, 17)) | {N0}):
            vanish = all(scalars.gauss_binomial(N, k, 8, mm).is_zero() for k in range(1, N))
            if vanish != (N == N0):
                return False, f"m={mm}, N={N}"
    return True, f"m in {_orders(m)[0]}..{_orders(m)[-1]}"


@check("scalars", "chebyshev-at-minus-xi", "chebyshev:cheb_eval_scalar")
def _t_minus_xi(rng, m):
    for mm in _orders(m):
        rd = root_data(mm)
        lhs = chebyshev.cheb_eval_scalar(-(v_power(4, mm) + v_power(-4, mm)), rd.N)
        e = rd.epsilon_v_exponent
        if lhs != -(v_power(2 * e, mm) + v_power(-2 * e, mm)):
            return False, f"m={mm}"
        if v_power(4 * e, mm) != 1:
            return False, f"epsilon^4 != 1 at m={mm}"
    return True, "T_N(-xi^2 - xi^-2) = -eps^2 - eps^-2"


# ---------------------------------------------------------------------- qtorus


def _torus_laws(rng, m, count):
    labels = ("x1", "x2", "x3", "x4")
    for _ in range(count):
        T = random_matrix(rng, labels)
        k = tuple(rng.randint(-3, 3) for _ in labels)
        n = tuple(rng.randint(-3, 3) for _ in labels)
        xk = TorusElement.monomial(T, k, 1, m)
        xn = TorusElement.monomial(T, n, 1, m)
        if xk * xn != TorusElement.monomial(T, tuple(a + b for a, b in zip(k, n)), v_power(T.pairing(k, n), m), m):
            return False, "product law"
        if xk * xn != (xn * xk).scale(v_power(2 * T.pairing(k, n), m)):
            return False, "q-commutation"
        p = rng.randint(0, 5)
        if xk ** p != TorusElement.monomial(T, tuple(p * a for a in k), 1, m):
            return False, "power law"
        parts = [tuple(rng.randint(-2, 2) for _ in labels) for _ in range(3)]
        w = qtorus.weyl_normalize(T, parts, m)
        shuffled = parts[:]
        rng.shuffle(shuffled)
        if w != qtorus.weyl_normalize(T, shuffled, m):
            return False, "Weyl order independence"
        ordered = TorusElement.one(T, m)
        for part in parts:
            ordered = ordered * TorusElement.monomial(T, part, 1, m)
        shift = sum(T.pairing(parts[i], parts[j]) for i in range(3) for j in range(i + 1, 3))
        if w != ordered.scale(v_power(-shift, m)):
            return False, "Weyl prefactor"
        x = random_element(rng, T, m, bound=2)
        y = random_element(rng, T, m, bound=2)
        if qtorus.reflection(x * y) != qtorus.reflection(y) * qtorus.reflection(x):
            return False, "reflection anti-homomorphism"
        if qtorus.reflection(qtorus.reflection(x)) != x:
            return False, "reflection involution"
    return True, f"{count} random instances"


@check("qtorus", "torus-laws", "qtorus:multiply")
def _laws(rng, m):
    return _torus_laws(rng, m, 1000)


# ------------------------------------------------------------------- chebyshev


@check("chebyshev", "closed-form", "chebyshev:cheb_closed_form")
def _closed(rng, m):
    for n in range(1, 13):
        if chebyshev.cheb_closed_form(n, m) != chebyshev.cheb_eval(chebyshev.ke_sum(m), n):
            return False, f"n={n}"
    return True, "1 <= n <= 12"


@check("chebyshev", "root-of-unity-collapse", "chebyshev:cheb_eval")
def _collapse(rng, m):
    for n in range(2, 11):
        mm = 4 * n
        T = chebyshev.KE_TORUS
        target = TorusElement(T, {(n, 0): 1, (-n, 0): 1, (0, n): 1}, mm)
        if chebyshev.cheb_eval(chebyshev.ke_sum(mm), n) != target:
            return False, f"n={n}"
        for r in range(1, n):
            for j in range(n - r + 1):
                if not scalars.chebyshev_coefficient(n, r, j, mm).is_zero():
                    return False, f"c({n},{r},{j}) != 0"
    return True, "2 <= n <= 10, m = 4n"


@check("chebyshev", "positivity", "scalars:chebyshev_coefficient")
def _positive(rng, m):
    for n in range(2, 13):
        for r in range(1, n):
            for j in range(n - r + 1):
                c = scalars.chebyshev_coefficient(n, r, j)
                if any(x < 0 for _, x in c.items()):
                    return False, f"c({n},{r},{j})"
    return True, "n <= 12"


# ------------------------------------------------------------------- frobenius


@check("frobenius", "homomorphism", "frobenius:frobenius")
def _frob(rng, m):
    labels = ("x1", "x2", "x3")
    for _ in range(200):
        A = random_matrix(rng, labels, 2)
        N = rng.randint(1, 4)
        src = A.scaled(N * N)
        x = random_element(rng, src, m, bound=2)
        y = random_element(rng, src, m, bound=2)
        fx, fy = frobenius.frobenius(x, N, A), frobenius.frobenius(y, N, A)
        if frobenius.frobenius(x * y, N, A) != fx * fy:
            return False, "not multiplicative"
        if len(fx) != len(x):
            return False, "support collapsed"
    return True, "200 random pairs"


# --------------------------------------------------------------------- surface


@check("surface", "annulus-vertex-matrix", "surface:vertex_matrix")
def _golden(rng, m):
    _, q = surface.builtin("annulus2")
    P = surface.vertex_matrix(q)
    for a in P.labels:
        for b in P.labels:
            want = {("a", "b"): -2, ("b", "a"): 2}.get((a, b), 0)
            if P.entry(a, b) != want:
                return False, f"P({a},{b}) = {P.entry(a, b)}"
    return True, "P(a,b) = -2, all other pairs 0"


@check("surface", "builtins-valid", "surface:validate")
def _valid(rng, m):
    for name in surface.builtin_names():
        _, q = surface.builtin(name)
        P = surface.vertex_matrix(q)
        if any(abs(x) > 4 for r in P.entries for x in r):
            return False, f"{name}: entry out of range"
    return True, ", ".join(surface.builtin_names())


# ----------------------------------------------------------------------- flips


@check("flips", "flip-round-trip", "flips:flip")
def _flip_rt(rng, m):
    for name in surface.builtin_names():
        _, q = surface.builtin(name)
        for a in flips.flippable_edges(q):
            fr = flips.flip(q, a)
            if flips.flip(fr.new_q, fr.new_edge).new_q != q:
                return False, f"{name}: {a}"
            if fr.case == 1 and flips.flip_commutation(fr) != 4:
                return False, f"{name}: XY != xi^4 YX at {a}"
            T = surface.skein_torus(q)
            ia = T.index(a)
            x = random_element(rng, T, m, terms=2, bound=2, nonneg=[ia])
            if not flips.transfer_round_trip(q, a, x):
                return False, f"{name}: transfer round trip at {a}"
    return True, "every flippable edge of every builtin"


@check("flips", "transfer-multiplicative", "flips:transfer")
def _flip_mult(rng, m):
    for name in ("quad", "annulus2", "holed_triangle"):
        _, q = surface.builtin(name)
        T = surface.skein_torus(q)
        for a in flips.flippable_edges(q):
            ia = T.index(a)
            for _ in range(5):
                x = random_element(rng, T, m, terms=2, bound=2, nonneg=[ia])
                y = random_element(rng, T, m, terms=2, bound=2, nonneg=[ia])
                if flips.transfer(q, a, x * y) != flips.transfer(q, a, x) * flips.transfer(q, a, y):
                    return False, f"{name}: {a}"
    return True, "random pairs"


@check("flips", "frobenius-flip", "flips:verify_frobenius_flip")
def _frob_flip(rng, m):
    _, q = surface.builtin("quad")
    for mm in _orders(m):
        N0 = root_data(mm).N
        if not flips.verify_frobenius_flip(q, "a", mm, N0):
            return False, f"m={mm}, N={N0} should pass"
        for N in range(2, 7):
            if N != N0 and flips.verify_frobenius_flip(q, "a", mm, N):
                return False, f"m={mm}, N={N} should fail"
    if flips.verify_frobenius_flip(q, "a", None, 2):
        return False, "passes over generic v"
    return True, "passes exactly at N = ord(xi^4)"


# --------------------------------------------------------------------- annulus


def annulus_elements(ctx=None):
    _, q = surface.builtin("annulus2")
    T = surface.skein_torus(q)
    X = parse_expression("[a^-1 b^-1 c d]", T, ctx)
    Y = parse_expression("[a b^-1]", T, ctx)
    return q, T, X, Y


@check("annulus", "a-alpha", "flips:annulus")
def _a_alpha(rng, m):
    q, T, X, Y = annulus_elements(m)
    alpha = X + Y + Y.inverse()
    b_star = parse_expression("[b^-1 a^2] + [b^-1 c d]", T, m)
    xi = v_power(2, m)
    a = TorusElement.generator(T, "a", 1, m)
    lhs = a * alpha
    rhs = b_star.scale(xi) + TorusElement.generator(T, "b", 1, m).scale(xi.inverse())
    if lhs != rhs:
        return False, f"a alpha = {lhs}"
    if Y * X != (X * Y).scale(v_power(8, m)):
        return False, "YX != xi^4 XY"
    return True, "a alpha = xi b* + xi^-1 b"


@check("annulus", "threaded-core", "chebyshev:annulus")
def _t_alpha(rng, m):
    mm = m or 16
    N = root_data(mm).N
    _, T, X, Y = annulus_elements(mm)
    alpha = X + Y + Y.inverse()
    if chebyshev.cheb_eval(alpha, N) != X ** N + Y ** N + Y ** -N:
        return False, f"m={mm}, N={N}"
    _, T, X, Y = annulus_elements(None)
    alpha = X + Y + Y.inverse()
    if N > 1 and chebyshev.cheb_eval(alpha, N) == X ** N + Y ** N + Y ** -N:
        return False, "holds over generic v"
    return True, f"T_{N}(alpha) = X^{N} + Y^{N} + Y^-{N} at m={mm}"


# ---------------------------------------------------------------------- center


@check("center", "null-P", "center:verify_center")
def _center(rng, m):
    count = 0
    for name in surface.builtin_names():
        _, q = surface.builtin(name)
        qs = [q] + [flips.random_flips(q, rng.randint(1, 6), rng) for _ in range(3)]
        for qq in qs:
            rep = center.verify_center(qq)
            count += 1
            if not rep.ok:
                return False, f"{name}: {rep.failures}"
    return True, f"{count} quasitriangulations"


# --------------------------------------------------------------------- surgery


def rank_mod_p(rows, p=2_147_483_647):
    rows = [dict(r) for r in rows if r]
    rank = 0
    pivots = {}
    for r in rows:
        r = {k: v % p for k, v in r.items() if v % p}
        while r:
            col = min(r)
            if col in pivots:
                prow = pivots[col]
                f = r[col]
                for k, v in prow.items():
                    r[k] = (r.get(k, 0) - f * v) % p
                    if not r[k]:
                        del r[k]
            else:
                inv = pow(r[col], -1, p)
                r = {k: v * inv % p for k, v in r.items()}
                pivots[col] = r
                rank += 1
                break
    return rank


def evaluate_at(x: TorusElement, value: int, p: int = 2_147_483_647):
    out = {}
    for k, c in x.items():
        s = sum(coef * pow(value, e, p) for e, coef in c.items()) % p
        if s:
            out[k] = s
    return out


def theta_window_rank(alg: surgery.SurgeryContext, bound: int, rng: random.Random):
    window = list(surgery.basis_window(alg, bound))
    value = rng.randrange(2, 2_000_000_000)
    rows = [evaluate_at(surgery.theta_embed(alg.element({k: 1})), value) for k in window]
    return rank_mod_p(rows), len(window)


@check("surgery", "monogon-relation", "surgery:surgery_multiply")
def _relation(rng, m):
    _, q = surface.builtin("eye")
    Z = surgery.SurgeryContext(q)
    lhs = Z.letter("a", m) * Z.letter("a*", m)
    rhs = parse_expression("q^2*b^2 + q^-2*c^2 + beta b c", Z, m)
    if lhs != rhs:
        return False, f"a a* = {lhs}"
    theta = surgery.theta_embed(Z.letter("a*", m))
    T = theta.torus
    if theta != parse_expression("[a^-1 b^2] + [a^-1 c^2] + beta [a^-1 b c]", T, m):
        return False, f"theta(a*) = {theta}"
    return True, "a a* = q^2 b^2 + q^-2 c^2 + beta b c"


@check("surgery", "theta-multiplicative", "surgery:theta_embed")
def _theta(rng, m):
    for name in ("eye", "holed_triangle"):
        Z = surgery.SurgeryContext(surface.builtin(name)[1])
        for _ in range(100):
            x = surgery.random_basis_element(Z, rng, ctx=m)
            y = surgery.random_basis_element(Z, rng, ctx=m)
            if surgery.theta_embed(x * y) != surgery.theta_embed(x) * surgery.theta_embed(y):
                return False, f"{name}: {x} * {y}"
    return True, "random basis pairs"


@check("surgery", "associativity", "surgery:surgery_multiply")
def _assoc(rng, m):
    Z = surgery.SurgeryContext(surface.builtin("holed_triangle")[1])
    for _ in range(100):
        x, y, z = (surgery.random_basis_element(Z, rng, ctx=m) + surgery.random_basis_element(Z, rng, ctx=m) for _ in range(3))
        if (x * y) * z != x * (y * z):
            return False, "triple failed"
    return True, "100 triples"


@check("surgery", "theta-injective", "surgery:theta_embed")
def _inject(rng, m):
    Z = surgery.SurgeryContext(surface.builtin("eye")[1])
    rank, size = theta_window_rank(Z, 2, rng)
    return rank == size, f"rank {rank} of {size} (window 2, generic v)"


@check("surgery", "psi-maps", "surgery:psi")
def _psi(rng, m):
    _, q = surface.builtin("holed_triangle")
    Z = surgery.SurgeryContext(q)
    plug = surgery.plug_hole(q, "beta")
    mark = surgery.add_point_unmarked(q, "beta")
    for _ in range(10):
        x = surgery.random_basis_element(Z, rng, ctx=m)
        y = surgery.random_basis_element(Z, rng, ctx=m)
        for label, f in (
            ("plug", lambda u: surgery.psi_plug_hole(Z, "beta", u, plug)[0]),
            ("mark", lambda u: surgery.psi_add_point_unmarked(Z, "beta", u, mark)[0]),
            ("edge", lambda u: surgery.psi_add_point_boundary(Z, "s2", u)),
        ):
            if f(x * y) != f(x) * f(y):
                return False, f"{label} not multiplicative"
    _, a, b, c = plug
    for text in ("a", "a*", f"{b} - {c}", "beta + q^2 + q^-2"):
        if not surgery.psi_plug_hole(Z, "beta", parse_expression(text, Z, m), plug)[0].is_zero():
            return False, f"plug does not kill {text}"
    ok, detail = plug_window_bijection(Z, "beta", 2, m, plug)
    if not ok:
        return False, detail
    return True, "multiplicative; plug kernel generators vanish; " + detail


def plug_window_bijection(src, hole, bound, ctx=None, plug=None):
    """Psi restricted to the window of X_0 is a bijection onto the target window, up to units."""
    plug = plug or surgery.plug_hole(src.q, hole)
    _, a, b, _ = plug
    fixed = (a, src.relations[a].dual, b, hole)
    images = set()
    count = 0
    for k in surgery.basis_window(src, bound, fixed):
        img, dst = surgery.psi_plug_hole(src, hole, src.element({k: 1}, ctx), plug)
        if len(img) != 1:
            return False, f"image of {k} is not a monomial"
        (kk, c), = img.items()
        if not c.is_unit_monomial() and c != -1:
            return False, f"image of {k} has a non-unit coefficient"
        images.add(kk)
        count += 1
    target = set(surgery.basis_window(dst, bound))
    if images != target or len(images) != count:
        return False, f"{count} elements hit {len(images)} of {len(target)}"
    return True, f"window of {count} maps bijectively"


# ------------------------------------------------------------------------- cli


@check("cli", "parse-print", "parsing:format_element")
def _roundtrip(rng, m):
    labels = ("a", "a*", "b", "c2")
    for _ in range(200):
        T = random_matrix(rng, labels)
        x = random_element(rng, T, m, terms=4)
        if parse_expression(format_element(x), T, m) != x:
            return False, format_element(x)
    return True, "200 random elements"


SUITES = sorted({c.suite for c in CHECKS})


def run_checks(m: Optional[int] = None, suite: Optional[str] = None, seed: int = DEFAULT_SEED):
    """Yield ``(check, ok, detail)`` in registry order."""
    for chk in CHECKS:
        if suite and chk.suite != suite:
            continue
        rng = random.Random(f"{seed}:{chk.suite}:{chk.name}")
        try:
            ok, detail = chk.run(rng, m)
        except Exception as exc:  # report, do not crash the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield chk, ok, detail


def format_line(chk: Check, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} {chk.suite}/{chk.name} [{chk.location}] {detail}"
