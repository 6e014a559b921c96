import random

import pytest

from conftest import SEED
from skeintorus.errors import MissingLabel, NegativeFlippedExponent, NotFlippable, TorusMismatch
from skeintorus.flips import (
    dual_name,
    flip,
    flip_commutation,
    flippable_edges,
    random_flips,
    theta_image,
    transfer,
    transfer_round_trip,
    verify_frobenius_flip,
)
from skeintorus.parsing import parse_expression
from skeintorus.sampling import random_element
from skeintorus.surface import builtin, builtin_names, skein_torus, validate


def q_of(name):
    return builtin(name)[1]


def test_dual_names():
    assert dual_name("a") == "a*"
    assert dual_name("a*") == "a"


def test_quad_flip():
    fr = flip(q_of("quad"), "a")
    assert (fr.case, fr.edge, fr.new_edge, fr.labels) == (1, "a", "a*", ("b", "c", "d", "e"))
    assert "a*" in fr.new_q.edge_names and "a" not in fr.new_q.edge_names
    assert theta_image(fr) == parse_expression("[c e a*^-1] + [b d a*^-1]", fr.new_torus)
    assert flip_commutation(fr) == 4


def test_eye_flip_is_case_two():
    fr = flip(q_of("eye"), "a")
    assert fr.case == 2 and fr.labels == ("b", "c", "beta")
    want = parse_expression("[a*^-1 b^2] + [a*^-1 c^2] + [a*^-1 b c beta]", fr.new_torus)
    assert theta_image(fr) == want


def test_annulus_flip():
    fr = flip(q_of("annulus2"), "b")
    assert theta_image(fr) == parse_expression("[b*^-1 c d] + [a^2 b*^-1]", fr.new_torus)


@pytest.mark.parametrize("name", builtin_names())
def test_case_one_commutation(name):
    q = q_of(name)
    for a in flippable_edges(q):
        fr = flip(q, a)
        validate(fr.new_q)
        if fr.case == 1:
            assert flip_commutation(fr) == 4


@pytest.mark.parametrize("name", builtin_names())
def test_double_flip(name):
    q = q_of(name)
    for a in flippable_edges(q):
        fr = flip(q, a)
        back = flip(fr.new_q, fr.new_edge)
        assert back.new_edge == a
        assert back.new_q == q


def test_transfer_is_multiplicative():
    rng = random.Random(SEED)
    for name in ("quad", "annulus2", "holed_triangle", "torus1"):
        q = q_of(name)
        T = skein_torus(q)
        for a in flippable_edges(q):
            for _ in range(4):
                x = random_element(rng, T, terms=2, bound=2, nonneg=[T.index(a)])
                y = random_element(rng, T, terms=2, bound=2, nonneg=[T.index(a)])
                assert transfer(q, a, x * y) == transfer(q, a, x) * transfer(q, a, y)


def test_transfer_round_trip_at_root_of_unity():
    rng = random.Random(SEED)
    q = q_of("holed_triangle")
    T = skein_torus(q)
    for a in flippable_edges(q):
        x = random_element(rng, T, 16, terms=3, bound=2, nonneg=[T.index(a)])
        assert transfer_round_trip(q, a, x)


def test_transfer_errors():
    q = q_of("quad")
    T = skein_torus(q)
    with pytest.raises(NegativeFlippedExponent):
        transfer(q, "a", parse_expression("a^-1", T))
    with pytest.raises(TorusMismatch):
        transfer(q, "a", parse_expression("a", skein_torus(q_of("annulus2"))))
    with pytest.raises(NotFlippable):
        flip(q, "b")
    with pytest.raises(MissingLabel):
        flip(q, "zz")


def test_frobenius_flip_depends_on_order():
    q = q_of("quad")
    assert verify_frobenius_flip(q, "a", 16, 2)
    assert not verify_frobenius_flip(q, "a", 16, 3)
    assert not verify_frobenius_flip(q, "a", None, 2)
    assert verify_frobenius_flip(q, "a", None, 1)


def test_random_flips_stay_valid():
    rng = random.Random(SEED)
    for name in builtin_names():
        q = random_flips(q_of(name), 10, rng)
        validate(q)
        assert len(q.edge_names) == len(q_of(name).edge_names)
