import random

import pytest
import sympy

from conftest import SEED
from skeintorus import surgery
from skeintorus.errors import NonInvertibleImage, NotBoundaryEdge, NotUnmarked, ParseError
from skeintorus.parsing import parse_expression
from skeintorus.scalars import v_power
from skeintorus.surface import builtin, validate
from skeintorus.surgery import SurgeryContext, map_surgery, theta_embed
from skeintorus.verify import rank_mod_p


@pytest.fixture(scope="module")
def eye():
    return SurgeryContext(builtin("eye")[1])


@pytest.fixture(scope="module")
def holed():
    return SurgeryContext(builtin("holed_triangle")[1])


def test_letters(eye, holed):
    assert eye.letters == ("a", "a*", "b", "c", "beta")
    assert eye.relations["a"].b == "b" and eye.relations["a"].c == "c"
    assert holed.letters == ("a", "a*", "c", "s1", "s2", "s3", "beta")


def test_relation_both_orders(eye):
    a, a_star = eye.letter("a"), eye.letter("a*")
    assert a * a_star == parse_expression("v^4*b^2 + v^-4*c^2 + [b c beta]", eye)
    assert a_star * a == parse_expression("v^-4*b^2 + v^4*c^2 + [b c beta]", eye)


def test_relation_at_root_of_unity(eye):
    prod = eye.letter("a", 12) * eye.letter("a*", 12)
    assert prod == parse_expression("q^2*b^2 + q^-2*c^2 + beta b c", eye, 12)


def test_theta_of_dual(eye):
    got = theta_embed(eye.letter("a*"))
    assert got == parse_expression("[a^-1 b^2] + [a^-1 c^2] + [a^-1 b c beta]", got.torus)
    assert got.torus.labels == ("a", "b", "c", "beta")


def test_normal_forms_are_stable(holed):
    rng = random.Random(SEED)
    for _ in range(50):
        x = surgery.random_basis_element(holed, rng)
        assert x * holed.one() == x == holed.one() * x
        for k, _ in x.items():
            assert holed.is_normal(k)


def test_negative_and_clashing_monomials_rejected(eye):
    for text in ("a^-1", "a*^-1", "[a a*]"):
        with pytest.raises(ParseError):
            parse_expression(text, eye)


def test_essential_letters_invert(eye):
    b = eye.letter("b")
    assert b * b.inverse() == eye.one()
    assert not eye.letter("a").is_invertible_monomial()
    with pytest.raises(NonInvertibleImage):
        eye.letter("a") ** -1


def test_rank_helper_against_sympy():
    rng = random.Random(SEED)
    p = 2_147_483_647
    for _ in range(20):
        rows = [{j: rng.randint(-3, 3) for j in range(5) if rng.random() < 0.6} for _ in range(6)]
        dense = [[r.get(j, 0) for j in range(5)] for r in rows]
        assert rank_mod_p(rows, p) == sympy.Matrix(dense).rank()


def test_map_requires_invertible_images(holed):
    dst = holed
    images = {lab: dst.letter(lab) for lab in holed.letters}
    images["s2"] = dst.letter("s2") + dst.letter("s3")
    x = parse_expression("s2^-1", holed)
    with pytest.raises(NonInvertibleImage):
        map_surgery(x, images, dst)


# ------------------------------------------------------------- surface ops


def test_add_point_boundary(holed):
    new_q, a1, a2, point = surgery.add_point_boundary(holed.q, "s2")
    validate(new_q)
    assert {a1, a2} <= set(new_q.boundary_flags) and "s2" not in new_q.boundary_flags
    with pytest.raises(NotBoundaryEdge):
        surgery.add_point_boundary(holed.q, "c")


def test_psi_boundary_is_inclusion(holed):
    rng = random.Random(SEED)
    dst = SurgeryContext(surgery.add_point_boundary(holed.q, "s2")[0])
    for _ in range(20):
        x = surgery.random_basis_element(holed, rng)
        y = surgery.random_basis_element(holed, rng)
        f = surgery.psi_add_point_boundary
        assert f(holed, "s2", x * y, dst) == f(holed, "s2", x, dst) * f(holed, "s2", y, dst)
    assert f(holed, "s2", holed.letter("a*"), dst) == dst.letter("a*")


def test_add_point_unmarked(eye):
    new_q, d, e, f, point = surgery.add_point_unmarked(eye.q, "beta")
    validate(new_q)
    assert new_q.monogon_holes == {}
    assert f in new_q.boundary_flags
    with pytest.raises(NotUnmarked):
        surgery.add_point_unmarked(eye.q, "outer")


def test_psi_unmarked(eye):
    data = surgery.add_point_unmarked(eye.q, "beta")
    img, dst = surgery.psi_add_point_unmarked(eye, "beta", eye.letter("beta"), data)
    assert img == parse_expression("[d^-1 e] + [a d^-1 e^-1 f] + [d e^-1]", dst)
    rng = random.Random(SEED)
    f = surgery.psi_add_point_unmarked
    for _ in range(40):
        x = surgery.random_basis_element(eye, rng)
        y = surgery.random_basis_element(eye, rng)
        assert f(eye, "beta", x * y, data)[0] == f(eye, "beta", x, data)[0] * f(eye, "beta", y, data)[0]


def test_plug_hole(holed):
    new_q, a, b, c = surgery.plug_hole(holed.q, "beta")
    validate(new_q)
    assert (a, b, c) == ("a", "s1", "c")
    assert "beta" not in {comp.name for comp in new_q.surface.components}
    with pytest.raises(NotUnmarked):
        surgery.plug_hole(holed.q, "outer")


def test_psi_plug(holed):
    data = surgery.plug_hole(holed.q, "beta")
    f = surgery.psi_plug_hole
    img, dst = f(holed, "beta", parse_expression("s1^-1 c", holed), data)
    assert img == dst.one()
    img, _ = f(holed, "beta", parse_expression("beta^2", holed), data)
    assert img == dst.one().scale((v_power(4) + v_power(-4)) ** 2)
    rng = random.Random(SEED)
    for _ in range(40):
        x = surgery.random_basis_element(holed, rng)
        y = surgery.random_basis_element(holed, rng)
        assert f(holed, "beta", x * y, data)[0] == f(holed, "beta", x, data)[0] * f(holed, "beta", y, data)[0]


def test_plug_sides(holed):
    # b is the side clockwise after the monogon at its corner, and is removed
    assert surgery.plug_sides(holed.q, "beta") == ("a", "s1", "c")
