from math import comb

import pytest

from src import catalogue
from src.errors import DimensionMismatchError, InvariantBreach, PreconditionError
from src.exact.matrix import Matrix
from src.forms.ce_complex import (
    NECESSARY_ONLY,
    betti,
    build_ce_operators,
    ce_differential,
    ce_operator,
    check_betti_conditions,
    cohomology_report,
    hodge,
    screen_torus_profile,
)
from src.forms.exterior import KForm
from src.ingestion.loaders import load_algebra
from tests.conftest import NOT_JACOBI_JSON, random_lie_algebra, random_metric


@pytest.mark.parametrize("name", ["torus(3)", "marrero(2,1)", "heisenberg3", "dorfmeister_cosym(1)"])
def test_d_squares_to_zero(name):
    d = ce_operator(catalogue.get(name).algebra)
    assert (d @ d).is_zero()


def test_d_on_covectors(heisenberg):
    L = heisenberg.algebra
    assert ce_differential(L, KForm.basis(3, [2])) == KForm.basis(3, [0, 1], -1)
    assert ce_differential(L, KForm.basis(3, [0])).is_zero()


def test_jacobi_failure_breaks_d_squared():
    with pytest.raises(InvariantBreach):
        ce_operator(load_algebra(NOT_JACOBI_JSON))


@pytest.mark.parametrize(
    "name, expected",
    [
        ("torus(3)", [1, 3, 3, 1]),
        ("heisenberg3", [1, 2, 2, 1]),
        ("marrero(1,1)", [1, 1, 1, 1]),
        ("kahler_aff", [1, 1, 0]),
        ("hyperbolic_cosymplectic", [1, 2, 1, 0]),
    ],
)
def test_betti(name, expected):
    assert betti(catalogue.get(name).algebra) == expected


def test_hodge_decomposition(heisenberg):
    L, g = heisenberg.algebra, Matrix.identity(3)
    decomposition = hodge(L, g, 1)
    assert decomposition.dimensions == {"harmonic": 2, "exact": 0, "coexact": 1}
    assert decomposition.is_orthogonal()

    v = (1, 2, 3)
    parts = decomposition.split(v)
    assert tuple(sum(xs) for xs in zip(*parts)) == v


def test_laplacian_is_self_adjoint(marrero1):
    ops = build_ce_operators(marrero1.algebra, Matrix.identity(3))
    for k in range(4):
        block = ops.laplacian.block(k)
        assert ops.grams[k] @ block == block.transpose() @ ops.grams[k]


def test_hodge_needs_positive_metric(heisenberg):
    with pytest.raises(PreconditionError):
        hodge(heisenberg.algebra, Matrix.diagonal([1, -1, 1]), 1)


def test_cohomology_report_matches_harmonic_forms(hyperbolic):
    report = cohomology_report(hyperbolic.algebra, hyperbolic.metric)
    assert report.passed
    assert report.data["betti"] == [1, 2, 1, 0]
    assert [d["harmonic"] for d in report.data["hodge"]] == [1, 2, 1, 0]
    assert report.data["betti_conditions"]["verdict"] == "fail"


@pytest.mark.parametrize("name", catalogue.list_names())
def test_harmonic_forms_match_betti_numbers(name):
    entry = catalogue.get(name)
    L = entry.algebra
    report = cohomology_report(L, entry.metric)
    assert report.passed
    for k, dims in enumerate(report.data["hodge"]):
        assert dims["harmonic"] == report.data["betti"][k]
        assert sum(dims.values()) == comb(L.dim, k)


def test_hodge_decomposition_on_random_algebras(rng):
    for _ in range(8):
        L = random_lie_algebra(rng, 5)
        g = random_metric(rng, L.dim)
        b = betti(L)
        assert sum((-1) ** k * v for k, v in enumerate(b)) == 0
        for k in range(L.dim + 1):
            decomposition = hodge(L, g, k)
            assert decomposition.is_orthogonal()
            assert len(decomposition.harmonic) == b[k]


def test_betti_conditions_pass():
    report = check_betti_conditions([1, 2, 3, 3, 2, 1], 2)
    assert report.passed
    assert NECESSARY_ONLY in report.notes


def test_betti_conditions_witnesses():
    report = check_betti_conditions([1, 3, 2, 2, 3, 1], 2)
    assert report.stage("ascending").witness == {"inequality": "b_1 <= b_2", "values": [3, 2]}
    assert report.stage("middle").passed
    assert report.stage("descending").witness == {"inequality": "b_3 >= b_4", "values": [2, 3]}

    zero = check_betti_conditions([1, 2, 1, 0], 1)
    assert zero.failed_stage.name == "positivity"
    assert zero.failed_stage.witness["inequality"] == "b_3 > 0"


def test_betti_conditions_length():
    with pytest.raises(DimensionMismatchError):
        check_betti_conditions([1, 1, 1], 1)


def test_torus_profile(torus3, heisenberg, marrero1):
    assert screen_torus_profile(torus3.algebra).passed
    failing = screen_torus_profile(heisenberg.algebra)
    assert failing.failed_stage.witness == {"degree": 1, "betti": 2, "torus": 3}
    assert screen_torus_profile(marrero1.algebra).verdict.value == "reject"
