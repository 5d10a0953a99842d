from fractions import Fraction

import pytest

from src.exact.polynomials import (
    all_roots_real,
    count_real_roots,
    evaluate,
    rational_roots,
    root_multiplicities,
)


@pytest.mark.parametrize(
    "coeffs, expected",
    [([1, 0, -2], 2), ([1, 0, 1], 0), ([1, -3, 3, -1], 1), ([1, 0, -1, 0], 3), ([5], 0)],
)
def test_count_real_roots(coeffs, expected):
    assert count_real_roots(coeffs) == expected


def test_all_roots_real_counts_multiplicity():
    assert all_roots_real([1, -3, 3, -1])
    assert all_roots_real([1, 0, -2])
    assert not all_roots_real([1, 0, 1])
    assert not all_roots_real([1, 0, 0, -1])


def test_rational_roots():
    assert rational_roots([2, -3, 1]) == [Fraction(1, 2), Fraction(1)]
    assert rational_roots([1, 0, 0]) == [Fraction(0)]
    assert rational_roots([1, 0, -2]) == []
    assert rational_roots(["1/2", 0, "-1/8"]) == [Fraction(-1, 2), Fraction(1, 2)]


def test_evaluate_and_multiplicities():
    assert evaluate([1, 0, -2], 3) == 7
    assert root_multiplicities([1, -3, 3, -1]) == {3: 1}


def test_zero_polynomial():
    with pytest.raises(ValueError):
        count_real_roots([0])
