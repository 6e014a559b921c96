"""The fourteen acceptance criteria, all at exact equality.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.
"""

import io
import random

import pytest
import sympy

from conftest import FIXTURES, SEED, V, sympy_reduce, to_sympy
from skeintorus import cli, flips, surgery
from skeintorus.center import hnf, integer_kernel, verify_center
from skeintorus.chebyshev import KE_TORUS, cheb_closed_form, cheb_eval, ke_sum
from skeintorus.errors import MatrixScaleMismatch
from skeintorus.frobenius import frobenius
from skeintorus.parsing import format_element, parse_expression, parse_surface
from skeintorus.qtorus import CommutationMatrix, TorusElement, reflection, weyl_normalize
from skeintorus.sampling import random_element, random_matrix
from skeintorus.scalars import chebyshev_coefficient, gauss_binomial, root_data, v_power
from skeintorus.surface import builtin, builtin_names, skein_torus, vertex_matrix
from skeintorus.verify import plug_window_bijection, theta_window_rank

crit = pytest.mark.criterion
ORDERS = range(1, 65)


# 1 ---------------------------------------------------------------------------

@crit(1, "Chebyshev closed form equals brute force, n <= 12")
@pytest.mark.parametrize("n", range(1, 13))
def test_closed_form(n):
    assert cheb_closed_form(n) == cheb_eval(ke_sum(), n)


@crit(1, "Chebyshev closed form equals brute force, n <= 12")
@pytest.mark.parametrize("n,r,j", [(4, 2, 1), (5, 1, 3), (6, 3, 2), (7, 2, 4)])
def test_coefficient_against_sympy(n, r, j):
    q = V ** 2

    def qint(k):
        return (q ** k - q ** -k) / (q - q ** -1)

    def qbin(a, b):
        out = sympy.Integer(1)
        for i in range(b):
            out *= qint(a - i) / qint(i + 1)
        return out

    want = qint(n) / qint(r) * qbin(n - j - 1, r - 1) * qbin(r + j - 1, r - 1)
    assert sympy.simplify(to_sympy(chebyshev_coefficient(n, r, j)) - want) == 0


# 2 ---------------------------------------------------------------------------

@crit(2, "collapse at m = 4n")
@pytest.mark.parametrize("n", range(2, 11))
def test_collapse(n):
    m = 4 * n
    want = TorusElement(KE_TORUS, {(n, 0): 1, (-n, 0): 1, (0, n): 1}, m)
    assert cheb_eval(ke_sum(m), n) == want
    for r in range(1, n):
        for j in range(n - r + 1):
            assert chebyshev_coefficient(n, r, j, m).is_zero()


# 3 ---------------------------------------------------------------------------

@crit(3, "closed-form coefficients are positive")
def test_positivity():
    for n in range(2, 13):
        for r in range(1, n):
            for j in range(n - r + 1):
                c = chebyshev_coefficient(n, r, j)
                assert not c.is_zero()
                assert all(x > 0 for _, x in c.items())
                # a Laurent polynomial in q = v^2
                assert all(e % 2 == 0 for e, _ in c.items())


# 4 ---------------------------------------------------------------------------

@crit(4, "torus laws on 1000 random instances")
def test_torus_laws():
    rng = random.Random(SEED)
    labels = ("x1", "x2", "x3", "x4")
    for _ in range(1000):
        T = random_matrix(rng, labels)
        k = tuple(rng.randint(-3, 3) for _ in labels)
        n = tuple(rng.randint(-3, 3) for _ in labels)
        pairing = sum(k[i] * n[j] * T.entries[i][j] for i in range(4) for j in range(4))
        xk, xn = (TorusElement.monomial(T, e) for e in (k, n))
        assert xk * xn == TorusElement.monomial(T, tuple(a + b for a, b in zip(k, n)), v_power(pairing))
        p = rng.randint(-3, 4)
        assert xk ** p == TorusElement.monomial(T, tuple(p * a for a in k))
        parts = [tuple(rng.randint(-2, 2) for _ in labels) for _ in range(3)]
        w = weyl_normalize(T, parts)
        assert w == weyl_normalize(T, parts[::-1])
        assert w == TorusElement.monomial(T, tuple(map(sum, zip(*parts))))
        x = random_element(rng, T, bound=2)
        y = random_element(rng, T, bound=2)
        assert reflection(x * y) == reflection(y) * reflection(x)
        assert reflection(reflection(x)) == x


# 5 ---------------------------------------------------------------------------

@crit(5, "Frobenius homomorphism and injectivity")
def test_frobenius_random():
    rng = random.Random(SEED)
    labels = ("x1", "x2", "x3")
    for _ in range(100):
        A = random_matrix(rng, labels, 2)
        N = rng.randint(1, 4)
        src = A.scaled(N * N)
        x = random_element(rng, src, bound=2, terms=4)
        y = random_element(rng, src, bound=2, terms=4)
        fx, fy = frobenius(x, N, A), frobenius(y, N, A)
        assert frobenius(x * y, N, A) == fx * fy
        assert len(fx) == len(x) and len(fy) == len(y)
        assert {k for k, _ in fx.items()} == {tuple(N * e for e in k) for k, _ in x.items()}


@crit(5, "Frobenius homomorphism and injectivity")
def test_frobenius_rejects_bad_scale():
    A = CommutationMatrix(("x1", "x2"), [[0, 1], [-1, 0]])
    x = TorusElement.generator(A.scaled(3), "x1")
    with pytest.raises(MatrixScaleMismatch):
        frobenius(x, 2, A)


# 6 ---------------------------------------------------------------------------

@crit(6, "Gauss criterion and Frobenius flip exactly at N = ord(xi^4)")
@pytest.mark.parametrize("m", ORDERS)
def test_gauss_criterion(m):
    N0 = root_data(m).N
    assert N0 == m // sympy.gcd(m, 8)
    for N in sorted(set(range(2, 17)) | {N0}):
        vanish = all(gauss_binomial(N, k, 8, m).is_zero() for k in range(1, N))
        assert vanish == (N == N0), N


@crit(6, "Gauss criterion and Frobenius flip exactly at N = ord(xi^4)")
@pytest.mark.parametrize("m", [5, 8, 12, 16, 24, 40])
def test_gauss_binomial_against_sympy(m):
    t = V ** 8
    for N in range(1, 7):
        for k in range(N + 1):
            want = sympy.Integer(1)
            for i in range(k):
                want *= (1 - t ** (N - i)) / (1 - t ** (i + 1))
            want = sympy.cancel(want)
            assert sympy_reduce(to_sympy(gauss_binomial(N, k, 8, m)), m) == sympy_reduce(want, m)


@crit(6, "Gauss criterion and Frobenius flip exactly at N = ord(xi^4)")
@pytest.mark.parametrize("m", ORDERS)
def test_frobenius_flip(m):
    _, q = builtin("quad")
    N0 = root_data(m).N
    assert flips.verify_frobenius_flip(q, "a", m, N0)
    for N in range(2, 7):
        if N != N0:
            assert not flips.verify_frobenius_flip(q, "a", m, N)


# 7 ---------------------------------------------------------------------------

def _annulus(ctx):
    T = skein_torus(builtin("annulus2")[1])
    X = parse_expression("[a^-1 b^-1 c d]", T, ctx)
    Y = parse_expression("[a b^-1]", T, ctx)
    return T, X, Y


@crit(7, "annulus: a alpha and threaded core")
@pytest.mark.parametrize("ctx", [None, 16])
def test_a_alpha(ctx):
    T, X, Y = _annulus(ctx)
    alpha = parse_expression("[a^-1 b^-1 c d] + [a b^-1] + [a^-1 b]", T, ctx)
    assert alpha == X + Y + Y ** -1
    b_star = parse_expression("[b^-1 a^2] + [b^-1 c d]", T, ctx)
    lhs = parse_expression("a", T, ctx) * alpha
    rhs = b_star.scale(v_power(2, ctx)) + parse_expression("b", T, ctx).scale(v_power(-2, ctx))
    assert lhs == rhs


@crit(7, "annulus: a alpha and threaded core")
def test_threaded_core():
    T, X, Y = _annulus(16)
    alpha = X + Y + Y ** -1
    assert cheb_eval(alpha, 2) == X ** 2 + Y ** 2 + Y ** -2
    T, X, Y = _annulus(None)
    alpha = X + Y + Y ** -1
    assert cheb_eval(alpha, 2) != X ** 2 + Y ** 2 + Y ** -2


# 8 ---------------------------------------------------------------------------

@crit(8, "T_N(-xi^2 - xi^-2) = -eps^2 - eps^-2 for m <= 64")
@pytest.mark.parametrize("m", ORDERS)
def test_scalar_identity(m):
    from skeintorus.chebyshev import cheb_eval_scalar

    rd = root_data(m)
    lhs = cheb_eval_scalar(-(v_power(4, m) + v_power(-4, m)), rd.N)
    e = rd.epsilon_v_exponent
    assert lhs == -(v_power(2 * e, m) + v_power(-2 * e, m))
    # independent oracle: T_N(z + 1/z) = z^N + z^-N with z = -xi^2
    z = -(V ** 4)
    assert sympy_reduce(to_sympy(lhs), m) == sympy_reduce(z ** rd.N + z ** -rd.N, m)
    assert sympy_reduce(V ** (4 * e) - 1, m) == 0


# 9 ---------------------------------------------------------------------------

@crit(9, "annulus vertex matrix golden value")
def test_annulus_vertex_matrix():
    P = vertex_matrix(builtin("annulus2")[1])
    assert P.labels == ("a", "b", "c", "d")
    assert P.entries == ((0, -2, 0, 0), (2, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))


# 10 --------------------------------------------------------------------------

def _flip_derived(count):
    rng = random.Random(SEED)
    names = builtin_names()
    out = []
    while len(out) < count:
        _, q = builtin(names[len(out) % len(names)])
        out.append(flips.random_flips(q, rng.randint(1, 8), rng))
    return out


@crit(10, "center: nullity and kernel lattice")
@pytest.mark.parametrize("q", [builtin(n)[1] for n in builtin_names()] + _flip_derived(20))
def test_center(q):
    rep = verify_center(q)
    assert rep.ok, rep.failures
    P = vertex_matrix(q)
    null = sympy.Matrix(P.entries).nullspace()
    assert len(null) == len(q.surface.marked) == rep.nullity
    assert hnf(integer_kernel(P.entries).vectors) == hnf(rep.boundary.values())


# 11 --------------------------------------------------------------------------

@crit(11, "surgery algebra relation, theta, associativity")
def test_monogon_relation():
    Z = surgery.SurgeryContext(builtin("eye")[1])
    lhs = Z.letter("a") * Z.letter("a*")
    assert lhs == parse_expression("q^2*b^2 + q^-2*c^2 + beta b c", Z)
    assert surgery.theta_embed(lhs) == surgery.theta_embed(Z.letter("a")) * surgery.theta_embed(Z.letter("a*"))


@crit(11, "surgery algebra relation, theta, associativity")
@pytest.mark.parametrize("name", ["eye", "holed_triangle"])
def test_theta_multiplicative(name):
    rng = random.Random(SEED)
    Z = surgery.SurgeryContext(builtin(name)[1])
    for _ in range(100):
        x = surgery.random_basis_element(Z, rng)
        y = surgery.random_basis_element(Z, rng)
        assert surgery.theta_embed(x * y) == surgery.theta_embed(x) * surgery.theta_embed(y)


@crit(11, "surgery algebra relation, theta, associativity")
def test_theta_injective_on_window():
    Z = surgery.SurgeryContext(builtin("eye")[1])
    rank, size = theta_window_rank(Z, 2, random.Random(SEED))
    assert size == 375 and rank == size


@crit(11, "surgery algebra relation, theta, associativity")
def test_associativity():
    rng = random.Random(SEED)
    Z = surgery.SurgeryContext(builtin("holed_triangle")[1])

    def elem():
        return surgery.random_basis_element(Z, rng) + surgery.random_basis_element(Z, rng)

    for _ in range(100):
        x, y, z = elem(), elem(), elem()
        assert (x * y) * z == x * (y * z)


# 12 --------------------------------------------------------------------------

@crit(12, "plug-hole kernel and window bijection")
def test_plug_kernel():
    _, q = builtin("holed_triangle")
    Z = surgery.SurgeryContext(q)
    data = surgery.plug_hole(q, "beta")
    _, a, b, c = data
    for text in (a, a + "*", f"{b} - {c}", "beta + q^2 + q^-2"):
        img, _ = surgery.psi_plug_hole(Z, "beta", parse_expression(text, Z), data)
        assert img.is_zero(), text
    img, dst = surgery.psi_plug_hole(Z, "beta", parse_expression("beta", Z), data)
    assert img == dst.one().scale(-(v_power(4) + v_power(-4)))


@crit(12, "plug-hole kernel and window bijection")
def test_plug_window():
    Z = surgery.SurgeryContext(builtin("holed_triangle")[1])
    ok, detail = plug_window_bijection(Z, "beta", 2)
    assert ok, detail
    assert "125" in detail


# 13 --------------------------------------------------------------------------

@crit(13, "flip round trip, both cases")
@pytest.mark.parametrize("name", builtin_names())
def test_flip_round_trip(name):
    rng = random.Random(SEED)
    _, q = builtin(name)
    for a in flips.flippable_edges(q):
        fr = flips.flip(q, a)
        assert flips.flip(fr.new_q, fr.new_edge).new_q == q
        T = skein_torus(q)
        for _ in range(5):
            x = random_element(rng, T, terms=2, bound=2, nonneg=[T.index(a)])
            assert flips.transfer_round_trip(q, a, x)


@crit(13, "flip round trip, both cases")
def test_both_cases_exercised():
    cases = set()
    for name in builtin_names():
        _, q = builtin(name)
        cases |= {flips.flip(q, a).case for a in flips.flippable_edges(q)}
    assert cases == {1, 2}


# 14 --------------------------------------------------------------------------

def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@crit(14, "CLI: verify, parse-print, annulus fixture")
def test_cli_verify_mod16():
    code, out, _ = _run(["verify", "--mod", "16"])
    assert code == 0
    assert "FAIL" not in out


@crit(14, "CLI: verify, parse-print, annulus fixture")
def test_parse_print_round_trip():
    rng = random.Random(SEED)
    labels = ("a", "a*", "b", "c2", "beta")
    for i in range(200):
        T = random_matrix(rng, labels)
        ctx = None if i % 2 else 16
        x = random_element(rng, T, ctx, terms=4)
        assert parse_expression(format_element(x), T, ctx) == x


@crit(14, "CLI: verify, parse-print, annulus fixture")
def test_annulus_fixture():
    path = FIXTURES / "annulus2.srf"
    _, q = parse_surface(path.read_text())
    assert q == builtin("annulus2")[1]
    for cmd in ("vmatrix", "center"):
        assert _run([cmd, str(path)]) == _run([cmd, "annulus2"])
    code, out, _ = _run(["vmatrix", str(path)])
    assert code == 0 and out.splitlines()[1].split() == ["a", "0", "-2", "0", "0"]
