from math import comb

import pytest

from sysid.basis.service import enumerate_monomials
from sysid.core.errors import ConfigError


@pytest.mark.parametrize(
    "state_dim, max_degree, expected",
    [(3, 2, 10), (3, 7, 120), (16, 2, 153), (50, 2, 1326), (20, 2, 231), (4, 0, 1)],
)
def test_monomial_count(state_dim, max_degree, expected):
    assert len(enumerate_monomials(state_dim, max_degree)) == expected


def test_count_matches_binomial_law():
    for n in range(1, 6):
        for d in range(0, 6):
            assert len(enumerate_monomials(n, d)) == comb(n + d, d)


def test_graded_lexicographic_order_two_variables():
    monomials = enumerate_monomials(2, 2)
    assert [m.exponents for m in monomials] == [
        (0, 0),
        (1, 0),
        (0, 1),
        (2, 0),
        (1, 1),
        (0, 2),
    ]


def test_lorenz_prefix_order():
    labels = [m.label() for m in enumerate_monomials(3, 2)]
    assert labels[:7] == ["1", "z1", "z2", "z3", "z1^2", "z1 z2", "z1 z3"]


def test_degrees_are_nondecreasing_and_consistent():
    monomials = enumerate_monomials(3, 4)
    degrees = [m.degree for m in monomials]
    assert degrees == sorted(degrees)
    assert all(m.degree == sum(m.exponents) for m in monomials)


def test_monomials_are_distinct():
    monomials = enumerate_monomials(4, 3)
    assert len({m.exponents for m in monomials}) == len(monomials)


def test_invalid_state_dim():
    with pytest.raises(ConfigError):
        enumerate_monomials(0, 2)
