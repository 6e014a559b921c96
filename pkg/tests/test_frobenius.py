import random

import pytest

from conftest import SEED
from skeintorus.errors import MatrixScaleMismatch
from skeintorus.frobenius import frobenius, frobenius_epsilon, frobenius_image_check
from skeintorus.qtorus import CommutationMatrix, TorusElement
from skeintorus.sampling import random_element, random_matrix
from skeintorus.scalars import v_power

A = CommutationMatrix(("x", "y"), [[0, 1], [-1, 0]])


def test_generator_goes_to_power():
    x = TorusElement.generator(A.scaled(4), "x")
    assert frobenius(x, 2, A) == TorusElement.generator(A, "x", 2)


def test_identity_at_one():
    rng = random.Random(SEED)
    x = random_element(rng, A)
    assert frobenius(x, 1, A) == x


def test_scale_checked():
    with pytest.raises(MatrixScaleMismatch):
        frobenius(TorusElement.generator(A, "x"), 2, A)
    other = CommutationMatrix(("u", "w"), A.scaled(4).entries)
    with pytest.raises(MatrixScaleMismatch):
        frobenius(TorusElement.generator(other, "u"), 2, A)


def test_homomorphism_with_roots_of_unity():
    rng = random.Random(SEED)
    for ctx in (None, 9, 16):
        for _ in range(20):
            T = random_matrix(rng, ("a", "b", "c"), 2)
            N = rng.randint(1, 3)
            x = random_element(rng, T.scaled(N * N), ctx, bound=2)
            y = random_element(rng, T.scaled(N * N), ctx, bound=2)
            assert frobenius(x * y, N, T) == frobenius(x, N, T) * frobenius(y, N, T)


def test_epsilon_variant_substitutes_scalars():
    x = TorusElement.generator(A, "x") + TorusElement.generator(A, "y").scale(v_power(1))
    got = frobenius_epsilon(x, 2)
    assert got == TorusElement.generator(A, "x", 2) + TorusElement.generator(A, "y", 2).scale(v_power(4))


def test_epsilon_variant_is_multiplicative():
    rng = random.Random(SEED)
    for _ in range(30):
        T = random_matrix(rng, ("a", "b", "c"), 2)
        N = rng.randint(1, 3)
        x, y = random_element(rng, T, bound=2), random_element(rng, T, bound=2)
        assert frobenius_epsilon(x * y, N) == frobenius_epsilon(x, N) * frobenius_epsilon(y, N)


def test_image_check():
    src = TorusElement.generator(A.scaled(4), "x")
    assert frobenius_image_check(src, TorusElement.generator(A, "x", 2), 2)
    assert not frobenius_image_check(src, TorusElement.generator(A, "y", 2), 2)
