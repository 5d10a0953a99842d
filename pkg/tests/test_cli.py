import json
from pathlib import Path

import pytest

from src import catalogue, cli
from src.catalogue.families import dorfmeister_base, dorfmeister_derivation, kahler_aff, rotation_modification
from src.errors import InvariantBreach
from src.exact.scalars import to_plain
from src.ingestion import algebra_to_dict, derivation_to_dict, kahler_to_dict, load_algebra, load_kahler
from tests.conftest import HEISENBERG_JSON, MARRERO_JSON, NOT_JACOBI_JSON, REEB_STRUCTURE_JSON

DOSSIERS = Path(__file__).parent / "fixtures" / "dossiers"


@pytest.fixture
def files(write_json):
    return {
        "heisenberg": str(write_json("heisenberg.json", HEISENBERG_JSON)),
        "marrero": str(write_json("marrero.json", MARRERO_JSON)),
        "not_jacobi": str(write_json("not_jacobi.json", NOT_JACOBI_JSON)),
        "reeb": str(write_json("reeb.json", REEB_STRUCTURE_JSON)),
        "identity": str(write_json("identity.json", {"g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})),
        "float": str(write_json("float.json", {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": 0.5}}]})),
    }


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_validate_exit_codes(capsys, files):
    code, payload = run_json(capsys, "validate", files["heisenberg"])
    assert code == cli.EXIT_PASS
    assert payload["verdict"] == "pass"

    code, payload = run_json(capsys, "validate", files["not_jacobi"])
    assert code == cli.EXIT_FAIL
    assert payload["failed_stage"] == "jacobi"

    code, _, err = run(capsys, "validate", files["float"])
    assert code == cli.EXIT_PARSE
    assert err.startswith("error:")
    assert "brackets[0].coeffs" in err


def test_missing_input_is_a_parse_error(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "absent.json"))
    assert code == cli.EXIT_PARSE
    assert "cannot read" in err


def test_malformed_inputs_are_parse_errors(capsys, write_json, tmp_path):
    zero = write_json("zero.json", {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"1": "1/0"}}]})
    code, _, err = run(capsys, "validate", str(zero))
    assert code == cli.EXIT_PARSE
    assert "brackets[0].coeffs" in err

    latin = tmp_path / "latin.json"
    latin.write_bytes(b"\xff\xfe{}")
    code, _, err = run(capsys, "validate", str(latin))
    assert code == cli.EXIT_PARSE
    assert "cannot decode" in err


def test_markdown_and_output_file(capsys, files, tmp_path):
    code, out, _ = run(capsys, "--format", "md", "validate", files["heisenberg"])
    assert code == 0
    assert out.startswith("## ")

    target = tmp_path / "nested" / "report.json"
    code, out, _ = run(capsys, "--out", str(target), "validate", files["heisenberg"])
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["verdict"] == "pass"


def test_classify(capsys, files):
    code, payload = run_json(capsys, "classify", files["heisenberg"])
    assert code == 0
    assert payload["nilpotent"] is True
    assert payload["derived_series"] == [3, 1, 0]


def test_cohomology_with_betti_conditions(capsys, files):
    code, payload = run_json(capsys, "cohomology", files["marrero"], "-n", "1", "--metric", files["identity"])
    assert code == 0
    assert payload["data"]["betti"] == [1, 1, 1, 1]
    assert any(s["name"].startswith("betti conditions: ") for s in payload["stages"])


@pytest.mark.parametrize(
    "argv",
    [
        ["cohomology", "{not_jacobi}"],
        ["cohomology", "{not_jacobi}", "--metric", "{identity}"],
        ["classify", "{not_jacobi}"],
        ["curvature", "{not_jacobi}", "--metric", "{identity}"],
        ["verify", "{not_jacobi}", "{reeb}"],
        ["kahler-identities", "{not_jacobi}", "{reeb}"],
    ],
)
def test_non_lie_table_is_rejected_before_computing(capsys, files, argv):
    code, out, err = run(capsys, *[arg.format(**files) for arg in argv])
    assert code == cli.EXIT_FAIL
    assert err.startswith("precondition failed: not a Lie algebra")
    assert json.loads(out)["failed_stage"] == "jacobi"


def test_verify_kinds(capsys, files):
    code, payload = run_json(capsys, "verify", files["marrero"], files["reeb"])
    assert code == 0

    code, payload = run_json(capsys, "verify", files["heisenberg"], files["reeb"])
    assert code == cli.EXIT_FAIL
    assert payload["failed_stage"] == "dα = 0"

    code, payload = run_json(capsys, "verify", "--kind", "almost-contact", files["heisenberg"], files["reeb"])
    assert code == 0


def test_verify_dimension_mismatch(capsys, files, write_json):
    small = write_json("small.json", {"dim": 5})
    code, _, _ = run(capsys, "verify", str(small), files["reeb"])
    assert code == cli.EXIT_PARSE


def test_curvature(capsys, files):
    code, payload = run_json(capsys, "curvature", files["marrero"], "--metric", files["identity"])
    assert code == 0
    code, payload = run_json(capsys, "curvature", files["heisenberg"], "--metric", files["identity"])
    assert code == cli.EXIT_FAIL
    assert payload["failed_stage"] == "flat"


def test_extend_verify_reduce(capsys, write_json, tmp_path):
    kahler = write_json("kahler.json", to_plain(kahler_to_dict(dorfmeister_base(1))))
    derivation = write_json("derivation.json", to_plain(derivation_to_dict(dorfmeister_derivation(1))))
    out_dir = tmp_path / "ext"
    code, payload = run_json(capsys, "extend", str(kahler), str(derivation), "--out-dir", str(out_dir))
    assert code == 0
    assert payload["algebra"]["basis"][-1] == "xi"

    algebra, structure = out_dir / "algebra.json", out_dir / "structure.json"
    code, _ = run_json(capsys, "verify", str(algebra), str(structure))
    assert code == 0

    back = tmp_path / "back"
    code, _ = run_json(capsys, "reduce", str(algebra), str(structure), "--out-dir", str(back))
    assert code == 0
    assert load_kahler(back / "kahler.json").algebra == dorfmeister_base(1).algebra


def test_reduce_rejects_non_cosymplectic(capsys, files):
    code, out, err = run(capsys, "reduce", files["heisenberg"], files["reeb"])
    assert code == cli.EXIT_FAIL
    assert err.startswith("precondition failed:")
    assert json.loads(out)["failed_stage"] == "dα = 0"


def test_modify(capsys, write_json):
    h, maps = rotation_modification()
    kahler = write_json("r4.json", to_plain(kahler_to_dict(h)))
    maps_file = write_json("maps.json", to_plain({"maps": [m.to_rows() for m in maps]}))
    code, payload = run_json(capsys, "modify", str(kahler), str(maps_file))
    assert code == 0
    assert load_algebra(payload["data"]["algebra"]).basis_bracket(0, 2) == (0, 0, 0, 1)


def test_normal_j(capsys, write_json):
    h = kahler_aff()
    payload = to_plain({"algebra": kahler_to_dict(h)["algebra"], "J": h.J.to_rows(), "mu": [1, 0]})
    code, report = run_json(capsys, "normal-j", str(write_json("normal.json", payload)))
    assert code == 0
    assert report["data"]["metric"] == [[1, 0], [0, 1]]


def test_kahler_identities(capsys, files):
    assert run_json(capsys, "kahler-identities", files["marrero"], files["reeb"])[0] == 0
    code, payload = run_json(capsys, "kahler-identities", files["heisenberg"], files["reeb"])
    assert code == cli.EXIT_FAIL
    assert payload["verdict"] == "reject"


def test_deform_single_and_list(capsys):
    code, payload = run_json(capsys, "deform", "--entry", "torus(3)", "--t", "1/2")
    assert code == 0
    assert payload["data"]["t"] == "1/2"

    code, payload = run_json(capsys, "deform", "--entry", "torus(3)", "--t-list", "0, 1/2")
    assert code == 0
    assert [r["data"]["t"] for r in payload] == [0, "1/2"]


def test_deform_bisect(capsys):
    code, payload = run_json(capsys, "deform", "--entry", "torus(3)", "--bisect", "1", "--steps", "2")
    assert code == 0
    assert payload["largest_stable_t"] == 1


def test_deform_from_files(capsys, files, write_json):
    abelian = write_json("abelian.json", {"dim": 3})
    jt = write_json("jt.json", {"family": [REEB_STRUCTURE_JSON["J"], [[1, 0, 0], [0, -1, 0], [0, 0, 0]], [[0, -1, 0], [0, 0, 0], [0, 0, 0]]]})
    code, payload = run_json(capsys, "deform", str(abelian), files["reeb"], "--jt", str(jt), "--t", "1/3")
    assert code == 0
    assert payload["data"]["t"] == "1/3"


def test_deform_input_errors(capsys, files):
    assert run(capsys, "deform")[0] == cli.EXIT_PARSE
    assert run(capsys, "deform", "--entry", "sphere")[0] == cli.EXIT_PARSE
    assert run(capsys, "deform", "--entry", "torus(3)", "--t", "x")[0] == cli.EXIT_PARSE
    assert run(capsys, "deform", "--entry", "heisenberg3")[0] == cli.EXIT_FAIL


def test_catalogue_actions(capsys):
    code, names = run_json(capsys, "catalogue", "list")
    assert code == 0
    assert "heisenberg3" in names

    code, shown = run_json(capsys, "catalogue", "show", "marrero(2, 1/2)")
    assert shown["name"] == "marrero(2,1/2)"

    code, reports = run_json(capsys, "catalogue", "check", "torus(3)")
    assert code == 0
    assert reports[0]["verdict"] == "pass"

    assert run(capsys, "catalogue", "show")[0] == cli.EXIT_PARSE
    assert run(capsys, "catalogue", "show", "sphere")[0] == cli.EXIT_PARSE


def test_catalogue_emit_then_verify(capsys, tmp_path):
    code, payload = run_json(capsys, "catalogue", "emit", "torus(3)", "--out-dir", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["torus_3.json", "torus_3_jt.json", "torus_3_struct.json"]
    code, _ = run_json(capsys, "verify", str(tmp_path / "torus_3.json"), str(tmp_path / "torus_3_struct.json"))
    assert code == 0

    code, _ = run_json(capsys, "catalogue", "emit", "kahler_aff", "--out-dir", str(tmp_path))
    kahler = tmp_path / "kahler_aff_kahler.json"
    assert kahler.exists()
    assert load_kahler(kahler).verify().passed


def test_report(capsys, files, write_json):
    code, dossier = run_json(capsys, "report", files["marrero"], files["reeb"])
    assert code == 0
    assert dossier["verdicts"]["cosymplectic"] == "pass"

    code, dossier = run_json(capsys, "report", files["heisenberg"], files["reeb"])
    assert code == cli.EXIT_FAIL

    indefinite = write_json("indefinite.json", {**REEB_STRUCTURE_JSON, "g": [[1, 0, 0], [0, 1, 0], [0, 0, -1]]})
    code, dossier = run_json(capsys, "report", files["marrero"], str(indefinite))
    assert code == cli.EXIT_FAIL
    assert dossier["sections"]["structure"]["failed_stage"] == "metric compatibility"

    code, out, err = run(capsys, "report", files["float"])
    assert code == cli.EXIT_PARSE
    assert json.loads(out)["verdicts"]["validate"] == "reject"


@pytest.mark.parametrize(
    "name, fixture",
    [("heisenberg3", "heisenberg3.json"), ("marrero(1,1)", "marrero_1_1.json"), ("torus(3)", "torus_3.json")],
)
def test_report_matches_golden_dossier(capsys, write_json, name, fixture):
    path = write_json("algebra.json", algebra_to_dict(catalogue.get(name).algebra))
    code, out, _ = run(capsys, "report", str(path))
    assert code == cli.EXIT_PASS
    assert out == (DOSSIERS / fixture).read_text(encoding="utf-8")


def test_invariant_breach_exit_code(capsys, files, monkeypatch):
    def breach(_):
        raise InvariantBreach("d² ≠ 0")

    monkeypatch.setattr(cli, "validate", breach)
    code, _, err = run(capsys, "validate", files["heisenberg"])
    assert code == cli.EXIT_INVARIANT
    assert "internal invariant breach" in err
