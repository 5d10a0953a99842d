from fractions import Fraction

import pytest

from src.errors import DimensionMismatchError, InconsistentSystemError, SingularMatrixError
from src.exact.matrix import (
    Matrix,
    char_poly,
    compound,
    determinant,
    gram_projection,
    in_span,
    inverse,
    is_positive_definite,
    rank,
    restricted_kernel,
    rref_kernel,
    solve,
)
from src.exact.polynomials import evaluate_at_matrix
from src.exact.scalars import I
from tests.conftest import random_invertible, random_matrix


def test_columns_are_images_of_basis_vectors():
    m = Matrix.from_columns([(1, 2), (3, 4)])
    assert m.to_rows() == [[1, 3], [2, 4]]
    assert m.apply((1, 0)) == (1, 2)
    assert m[0, 1] == 3


def test_inverse_and_determinant():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    assert inverse(m) == Matrix.from_rows([[1, -1], [-1, 2]])
    assert m @ inverse(m) == Matrix.identity(2)
    assert determinant(Matrix.from_rows([[1, 2], [3, 4]])) == -2
    assert determinant(Matrix.from_rows([["1/2", "1/3"], ["1/4", "1/5"]])) == Fraction(1, 60)


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        inverse(Matrix.from_rows([[1, 2], [2, 4]]))


def test_rank_and_kernel():
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1
    m = Matrix.from_rows([[1, 2, 3]])
    kernel = rref_kernel(m)
    assert kernel == [(-2, 1, 0), (-3, 0, 1)]
    assert all(m.apply(v) == (0,) for v in kernel)


def test_solve():
    assert solve(Matrix.from_rows([[1, 1], [1, -1]]), (3, 1)) == (2, 1)
    with pytest.raises(InconsistentSystemError):
        solve(Matrix.from_rows([[1, 1], [1, 1]]), (1, 2))


def test_shape_errors():
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(DimensionMismatchError):
        Matrix.from_rows([[1, 2], [3]])


def test_char_poly_and_cayley_hamilton():
    rotation = Matrix.from_rows([[0, -1], [1, 0]])
    assert char_poly(rotation) == (1, 0, 1)
    m = Matrix.from_rows([[1, 2, 0], ["1/2", 0, 3], [0, -1, 4]])
    assert evaluate_at_matrix(char_poly(m), m).is_zero()


def test_cayley_hamilton_on_random_matrices(rng):
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 5))
        assert evaluate_at_matrix(char_poly(m), m).is_zero()


def test_rank_nullity_and_inverse_on_random_matrices(rng):
    for _ in range(30):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        kernel = rref_kernel(m)
        assert rank(m) + len(kernel) == cols
        assert all(not any(m.apply(v)) for v in kernel)

        square = random_invertible(rng, rows)
        assert square @ inverse(square) == Matrix.identity(rows)


def test_positive_definite():
    assert is_positive_definite(Matrix.identity(3))
    assert not is_positive_definite(Matrix.from_rows([[1, 2], [2, 1]]))
    assert not is_positive_definite(Matrix.from_rows([[1, 1], [0, 1]]))


def test_hermitian_positive_definite():
    h = Matrix.from_rows([[2, I], [-I, 2]])
    assert h.is_hermitian()
    assert not h.is_symmetric()
    assert is_positive_definite(h)


def test_compound_extremes():
    m = Matrix.from_rows([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    assert compound(m, 1) == m
    assert compound(m, 3) == Matrix.from_rows([[determinant(m)]])


def test_projection_and_span():
    assert gram_projection([(1, 0)], Matrix.identity(2), (3, 4)) == (3, 0)
    assert in_span((2, 4, 0), [(1, 2, 0)])
    assert not in_span((0, 0, 1), [(1, 2, 0)])
    assert restricted_kernel(Matrix.from_rows([[1, -1, 0]]), [(1, 0, 0), (0, 1, 0)]) == [(1, 1, 0)]
