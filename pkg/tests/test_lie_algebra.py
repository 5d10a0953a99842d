from itertools import combinations, product

import pytest

from src.catalogue.families import dorfmeister_base, dorfmeister_derivation, heisenberg3
from src.errors import PreconditionError
from src.exact.matrix import Matrix, dot
from src.ingestion.loaders import load_algebra
from src.lie.algebra import LieAlgebra, default_names, is_derivation, semidirect_extend, trace_form, validate
from src.lie.classify import is_unimodular
from tests.conftest import NOT_JACOBI_JSON, random_heisenberg_derivation, random_lie_algebra, random_matrix, random_vector


def test_bracket_and_ad(heisenberg):
    L = heisenberg.algebra
    assert L.bracket(L.vector(0), L.vector(1)) == (0, 0, 1)
    assert L.bracket(L.vector(1), L.vector(0)) == (0, 0, -1)
    assert L.ad_basis(0).to_rows() == [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
    assert L.derived_algebra() == [(0, 0, 1)]


@pytest.mark.parametrize(
    "name", ["torus(5)", "marrero(2,1)", "heisenberg3", "kahler_aff", "hyperbolic_cosymplectic", "dorfmeister_cosym(1)"]
)
def test_catalogue_algebras_validate(name):
    from src import catalogue

    assert validate(catalogue.get(name).algebra).passed


def test_jacobi_witness():
    report = validate(load_algebra(NOT_JACOBI_JSON))
    assert report.stage("antisymmetry").passed
    stage = report.stage("jacobi")
    assert not stage.passed
    assert stage.witness["triple"] == [1, 2, 3]
    assert stage.witness["residual"] == (0, 0, 1)


def test_antisymmetry_witness_without_completion():
    L = LieAlgebra.from_brackets(("a", "b"), {(0, 1): {0: 1}}, complete=False)
    report = validate(L)
    assert report.failed_stage.name == "antisymmetry"
    assert report.failed_stage.witness["basis"] == ["a", "b", "a"]


def test_conflicting_mirror_entries():
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(("a", "b"), {(0, 1): {0: 1}, (1, 0): {0: 1}})


def test_is_derivation():
    h = dorfmeister_base(1)
    assert is_derivation(h.algebra, dorfmeister_derivation(1).D).passed

    L, _ = heisenberg3()
    report = is_derivation(L, Matrix.diagonal([1, 0, 0]))
    assert not report.passed
    assert report.failed_stage.witness["pair"] == [1, 2]


def test_semidirect_extend():
    rotation = Matrix.from_rows([[0, -1], [1, 0]])
    L = semidirect_extend(LieAlgebra.abelian(2), rotation, new_name="t")
    assert L.basis_names == ("e1", "e2", "t")
    assert L.bracket(L.vector(2), L.vector(0)) == (0, 1, 0)
    assert L.bracket(L.vector(1), L.vector(2)) == (1, 0, 0)
    assert validate(L).passed


def test_semidirect_extend_needs_derivation():
    L, _ = heisenberg3()
    with pytest.raises(PreconditionError):
        semidirect_extend(L, Matrix.diagonal([1, 0, 0]))


def test_change_basis_and_restrict(heisenberg):
    L = heisenberg.algebra
    swapped = L.change_basis([L.vector(1), L.vector(0), L.vector(2)])
    assert swapped.basis_bracket(0, 1) == (0, 0, -1)

    sub = L.restrict([L.vector(0), L.vector(2)], ("X", "Z"))
    assert sub.brackets_dict() == {}
    with pytest.raises(PreconditionError):
        L.restrict([L.vector(0), L.vector(1)], ("X", "Y"))


def test_trace_form(kahler_aff):
    assert trace_form(kahler_aff.algebra) == (0, 1)


def _random_table(rng, n):
    brackets = {}
    for i, j in combinations(range(n), 2):
        if rng.random() < 0.5:
            brackets[(i, j)] = {k: rng.choice((-1, 1)) for k in range(n) if rng.random() < 0.4}
    return LieAlgebra.from_brackets(default_names(n), brackets, name="random")


def _jacobi_by_constants(L):
    c, n = L.c, L.dim
    for i, j, k, l in product(range(n), repeat=4):
        total = sum(c[j][k][m] * c[i][m][l] + c[k][i][m] * c[j][m][l] + c[i][j][m] * c[k][m][l] for m in range(n))
        if total:
            return False
    return True


def test_jacobi_agrees_with_the_structure_constants(rng):
    seen = set()
    for _ in range(80):
        L = _random_table(rng, rng.randint(2, 4))
        expected = _jacobi_by_constants(L)
        report = validate(L)
        assert report.stage("antisymmetry").passed
        assert report.stage("jacobi").passed is expected
        seen.add(expected)
    assert seen == {True, False}


def test_abelian_extensions_are_lie_algebras(rng):
    for _ in range(100):
        n = rng.randint(1, 4)
        D = random_matrix(rng, n)
        L = semidirect_extend(LieAlgebra.abelian(n), D)
        assert validate(L).passed
        assert L.ad_basis(n).submatrix(range(n), range(n)) == D


def test_heisenberg_derivations_extend(rng, heisenberg):
    for _ in range(20):
        D = random_heisenberg_derivation(rng)
        assert is_derivation(heisenberg.algebra, D).passed
        assert validate(semidirect_extend(heisenberg.algebra, D)).passed


def test_ad_is_a_derivation(rng):
    for _ in range(20):
        L = random_lie_algebra(rng, 5)
        assert is_derivation(L, L.ad(random_vector(rng, L.dim))).passed


def test_trace_of_ad(rng):
    for _ in range(20):
        L = random_lie_algebra(rng, 5)
        x = random_vector(rng, L.dim)
        assert L.ad(x).trace() == dot(trace_form(L), x)

        U = random_lie_algebra(rng, 5, unimodular=True)
        assert is_unimodular(U)
        assert U.ad(random_vector(rng, U.dim)).trace() == 0
