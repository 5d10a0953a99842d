import pytest

from src.catalogue.families import (
    admissible_form,
    dorfmeister_base,
    dorfmeister_cosym,
    dorfmeister_derivation,
    kahler_aff,
    rotation_modification,
)
from src.errors import PreconditionError
from src.exact.matrix import Matrix
from src.geometry.correspondence import (
    DerivationData,
    check_derivation_data,
    check_modification_map,
    check_normal_j_algebra,
    extend,
    modify,
    random_unitary_derivation,
    reduce,
    standard_kahler,
)
from src.geometry.structures import verify_cosymplectic
from src.lie.algebra import LieAlgebra, validate


def test_extend_dorfmeister():
    L, S = extend(dorfmeister_base(1), dorfmeister_derivation(1))
    assert L.dim == 5
    assert L.basis_names[-1] == "xi"
    assert S.xi == (0, 0, 0, 0, 1)
    assert verify_cosymplectic(L, S).passed


def test_derivation_data_stages():
    h = standard_kahler(1)
    report = check_derivation_data(h, DerivationData(Matrix.diagonal([1, -1])))
    assert [s.name for s in report.stages] == ["derivation", "skew-adjoint", "commutes with J"]
    assert report.stage("derivation").passed
    assert report.failed_stage.name == "skew-adjoint"


def test_extend_rejects_bad_derivation():
    with pytest.raises(PreconditionError) as info:
        extend(standard_kahler(1), DerivationData(Matrix.diagonal([1, -1])))
    assert info.value.report.failed_stage.name == "skew-adjoint"


@pytest.mark.parametrize("beta", [0, 1, 2])
def test_reduce_inverts_extend_on_dorfmeister(beta):
    h, data = reduce(*dorfmeister_cosym(beta))
    base = dorfmeister_base(beta)
    assert h.algebra == base.algebra
    assert h.J == base.J
    assert h.g == base.g
    assert data.D == dorfmeister_derivation(beta).D


@pytest.mark.parametrize("m", [1, 2, 3])
def test_round_trip_on_random_derivations(rng, m):
    for _ in range(17):
        h = standard_kahler(m)
        D = random_unitary_derivation(rng, m)
        L, S = extend(h, DerivationData(D))
        h2, data = reduce(L, S)
        assert h2.algebra == h.algebra
        assert (h2.J, h2.g) == (h.J, h.g)
        assert data.D == D


def test_reduce_needs_cosymplectic(heisenberg):
    with pytest.raises(PreconditionError):
        reduce(heisenberg.algebra, heisenberg.structure)


def test_rotation_modification():
    h, maps = rotation_modification()
    result = modify(h, maps)
    assert result.report.passed
    assert result.algebra.brackets_dict() == {(0, 2): (0, 0, 0, 1), (0, 3): (0, 0, -1, 0)}
    assert result.report.data["kahler"]["verdict"] == "pass"


def test_modification_map_conditions():
    h, maps = rotation_modification()
    report = check_modification_map(h, maps)
    assert report.passed
    assert [s.name for s in report.stages] == [
        "(1) skew-adjoint",
        "(2) commutes with J",
        "(3) commuting and flat on brackets",
        "(4) D(D(X)Y - D(Y)X) = 0",
    ]
    stretched = [Matrix.diagonal([1, 1, 1, 1])] + maps[1:]
    assert check_modification_map(h, stretched).failed_stage.witness["basis"] == h.algebra.basis_names[0]
    with pytest.raises(PreconditionError) as info:
        modify(h, stretched)
    assert info.value.report.failed_stage.name == "(1) skew-adjoint"


def _plane_rotation(n, plane):
    rows = [[0] * n for _ in range(n)]
    rows[2 * plane + 1][2 * plane], rows[2 * plane][2 * plane + 1] = 1, -1
    return Matrix.from_rows(rows)


def test_random_modifications_are_kahler(rng):
    for _ in range(10):
        m = rng.randint(2, 3)
        n = 2 * m
        h = standard_kahler(m)
        planes = list(range(m))
        rng.shuffle(planes)
        cut = rng.randint(1, m - 1)
        rotated, active = planes[:cut], planes[cut:]
        maps = [Matrix.zeros(n, n)] * n
        for p in active:
            for e in (2 * p, 2 * p + 1):
                value = Matrix.zeros(n, n)
                for q in rotated:
                    value = value + _plane_rotation(n, q).scale(rng.randint(-2, 2))
                maps[e] = value

        assert check_modification_map(h, maps).passed
        result = modify(h, maps)
        assert validate(result.algebra).passed
        assert result.kahler.J == h.J
        assert result.report.data["kahler"]["verdict"] == "pass"


def test_normal_j_algebra():
    h = kahler_aff()
    report = check_normal_j_algebra(h.algebra, h.J, admissible_form(2))
    assert report.passed
    assert report.data["metric"] == [[1, 0], [0, 1]]

    negative = check_normal_j_algebra(h.algebra, h.J, (-1, 0))
    assert negative.failed_stage.name == "μ([JX,Y]) positive definite"


def test_normal_j_algebra_rejects_odd_dimension():
    L = LieAlgebra.abelian(3)
    report = check_normal_j_algebra(L, Matrix.identity(3), (1, 0, 0))
    assert report.verdict.value == "reject"
