from src.catalogue.families import kahler_aff
from src.exact.scalars import to_plain
from src.ingestion import algebra_to_dict
from src.pipeline.graph import DossierGraph, build_dossier, should_continue_after_validate, should_run_foliated
from tests.conftest import HEISENBERG_JSON, MARRERO_JSON, NOT_JACOBI_JSON, REEB_STRUCTURE_JSON


def test_cosymplectic_dossier():
    result = build_dossier(MARRERO_JSON, REEB_STRUCTURE_JSON)
    dossier = result["dossier"]
    assert dossier["subject"] == "marrero"
    assert dossier["verdicts"] == {
        "cohomology": "pass",
        "cosymplectic": "pass",
        "flat": "true",
        "kahler_identities": "pass",
        "unimodular": "true",
        "validate": "pass",
    }
    assert list(dossier["sections"]) == [
        "validate",
        "classify",
        "cohomology",
        "structure",
        "curvature",
        "unimodular_flatness",
        "foliated",
    ]
    assert dossier["sections"]["structure"]["kind"] == "cosymplectic"
    assert dossier["sections"]["cohomology"]["data"]["betti"] == [1, 1, 1, 1]
    assert dossier["errors"] == []
    assert result["markdown"].startswith("# Dossier: marrero\n")


def test_failing_structure_skips_foliated_checks():
    dossier = build_dossier(HEISENBERG_JSON, REEB_STRUCTURE_JSON)["dossier"]
    assert dossier["verdicts"]["cosymplectic"] == "fail"
    assert dossier["verdicts"]["flat"] == "false"
    assert "kahler_identities" not in dossier["verdicts"]
    assert "foliated" not in dossier["sections"]
    assert dossier["sections"]["structure"]["failed_stage"] == "dα = 0"


def test_indefinite_metric_is_reported_by_the_structure_stage():
    structure = {**REEB_STRUCTURE_JSON, "g": [[1, 0, 0], [0, 1, 0], [0, 0, -1]]}
    result = build_dossier(MARRERO_JSON, structure)
    dossier = result["dossier"]
    assert dossier["verdicts"]["cosymplectic"] == "fail"
    assert dossier["sections"]["structure"]["failed_stage"] == "metric compatibility"
    assert dossier["verdicts"]["cohomology"] == "pass"
    cohomology = dossier["sections"]["cohomology"]
    assert cohomology["data"]["betti"] == [1, 1, 1, 1]
    assert "hodge" not in cohomology["data"]
    assert any("Hodge dimensions skipped" in note for note in cohomology["notes"])
    assert "flat" not in dossier["verdicts"]
    assert "curvature" not in dossier["sections"]
    assert "foliated" not in dossier["sections"]


def test_algebra_only_dossier():
    dossier = build_dossier(HEISENBERG_JSON)["dossier"]
    assert set(dossier["verdicts"]) == {"validate", "unimodular", "cohomology"}
    assert "curvature" not in dossier["sections"]


def test_metric_without_structure():
    metric = {"g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}
    dossier = build_dossier(HEISENBERG_JSON, metric=metric)["dossier"]
    assert dossier["verdicts"]["flat"] == "false"
    assert "unimodular_flatness" not in dossier["sections"]


def test_kahler_pair_dossier():
    h = kahler_aff()
    structure = to_plain({"J": h.J.to_rows(), "g": h.g.to_rows()})
    dossier = build_dossier(algebra_to_dict(h.algebra), structure)["dossier"]
    assert dossier["verdicts"]["kahler"] == "pass"
    assert dossier["verdicts"]["unimodular"] == "false"
    assert "foliated" not in dossier["sections"]


def test_not_a_lie_algebra_ends_after_validation():
    result = build_dossier(NOT_JACOBI_JSON)
    dossier = result["dossier"]
    assert dossier["verdicts"] == {"validate": "fail"}
    assert list(dossier["sections"]) == ["validate"]
    assert dossier["subject"] == "algebra of dimension 3"


def test_parse_error_is_a_fatal_dossier_error():
    payload = {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": 0.5}}]}
    result = build_dossier(payload)
    dossier = result["dossier"]
    assert dossier["verdicts"] == {"validate": "reject"}
    assert dossier["sections"] == {}
    assert dossier["errors"][0].startswith("fatal: ")
    assert "> error: fatal: " in result["markdown"]


def test_routers():
    assert should_continue_after_validate({"verdicts": {"validate": "pass"}}) == "classify"
    assert should_continue_after_validate({"verdicts": {"validate": "reject"}}) == "end"
    assert should_run_foliated({"verdicts": {"cosymplectic": "pass"}}) == "foliated"
    assert should_run_foliated({"verdicts": {"kahler": "pass"}}) == "dossier"


def test_graph_shape_and_stream():
    graph = DossierGraph()
    diagram = graph.get_graph_visualization()
    for node in ("validate", "classify", "cohomology", "structure", "curvature", "foliated", "dossier"):
        assert node in diagram

    steps = [name for event in graph.stream(MARRERO_JSON, REEB_STRUCTURE_JSON) for name in event]
    assert steps[0] == "validate"
    assert steps[-1] == "dossier"
    assert "foliated" in steps


def test_checkpointed_run():
    result = DossierGraph(checkpointer=True).run(HEISENBERG_JSON)
    assert result["current_step"] == "dossier"
    assert result["dossier"]["verdicts"]["validate"] == "pass"
