import pytest

from src.errors import DimensionMismatchError
from src.exact.matrix import Matrix
from src.forms.exterior import (
    KForm,
    contraction_operator,
    derivation_extension,
    monomials,
    sort_with_sign,
    wedge_operator,
)


def test_sort_with_sign():
    assert sort_with_sign((1, 0)) == (-1, (0, 1))
    assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))
    assert sort_with_sign((0, 0)) == (0, None)


def test_monomials_are_lexicographic():
    assert monomials(3, 2) == ((0, 1), (0, 2), (1, 2))
    assert monomials(3, 4) == ()


def test_wedge_is_graded_commutative():
    a, b = KForm.basis(3, [0]), KForm.basis(3, [1])
    assert a.wedge(b) == KForm.basis(3, [0, 1])
    assert b.wedge(a) == KForm.basis(3, [0, 1], -1)
    assert a.wedge(a).is_zero()
    assert KForm.basis(3, [1, 0]) == -KForm.basis(3, [0, 1])


def test_evaluate():
    phi = KForm.basis(3, [0, 1])
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert phi.evaluate([e[0], e[1]]) == 1
    assert phi.evaluate([e[1], e[0]]) == -1
    assert phi.evaluate([e[0], e[2]]) == 0


def test_wedge_operator_matches_wedge():
    theta = (1, 2, 0)
    phi = KForm.basis(3, [1], 3) + KForm.basis(3, [2])
    expected = KForm.covector(theta).wedge(phi)
    assert wedge_operator(theta, 1).apply(phi.to_vector()) == expected.to_vector()


def test_contraction():
    phi = KForm.basis(3, [0, 1])
    assert contraction_operator((1, 0, 0), 2).apply(phi.to_vector()) == KForm.basis(3, [1]).to_vector()
    assert contraction_operator((0, 1, 0), 2).apply(phi.to_vector()) == KForm.basis(3, [0], -1).to_vector()


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_identity_extends_to_degree(k):
    block = derivation_extension(Matrix.identity(3), k)
    assert block == Matrix.identity(len(monomials(3, k))).scale(k)


def test_mismatched_forms():
    with pytest.raises(DimensionMismatchError):
        KForm.basis(3, [0]) + KForm.basis(3, [0, 1])
    with pytest.raises(DimensionMismatchError):
        KForm(3, 2, {(1, 0): 1})
