import json
from fractions import Fraction

import pytest

from src.errors import ParseError
from src.exact.matrix import Matrix
from src.exact.scalars import ComplexScalar
from src.geometry.deformation import ConjugatedFamily, JtFamily
from src.geometry.structures import StructureData
from src.ingestion import (
    algebra_to_dict,
    canonical_json,
    load_algebra,
    load_any_structure,
    load_family,
    load_form,
    load_metric,
    load_modification,
    load_structure,
    structure_to_dict,
    write_json,
)
from tests.conftest import HEISENBERG_JSON, MARRERO_JSON, REEB_STRUCTURE_JSON


def _with_coeff(value):
    return {"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": value}}]}


def test_load_algebra_from_dict_text_and_path(write_json):
    from_dict = load_algebra(HEISENBERG_JSON)
    from_text = load_algebra(json.dumps(HEISENBERG_JSON))
    from_path = load_algebra(write_json("h.json", HEISENBERG_JSON))
    assert from_dict == from_text == from_path
    assert from_dict.name == "heisenberg3"
    assert from_dict.basis_bracket(0, 1) == (0, 0, 1)
    assert from_dict.basis_bracket(1, 0) == (0, 0, -1)


def test_default_basis_names():
    assert load_algebra({"dim": 2}).basis_names == ("e1", "e2")


def test_rational_strings():
    L = load_algebra(_with_coeff("-3/4"))
    assert L.basis_bracket(0, 1)[2] == Fraction(-3, 4)
    assert load_algebra(_with_coeff("1/10")).basis_bracket(0, 1)[2] == Fraction(1, 10)


@pytest.mark.parametrize("value", [0.5, True, "1/2.5", "half", "1/0", "-3/00"])
def test_inexact_coefficients_are_rejected(value):
    with pytest.raises(ParseError) as info:
        load_algebra(_with_coeff(value))
    assert info.value.field.startswith("brackets[0].coeffs")


def test_duplicate_entries_must_agree():
    payload = {
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": 1}},
            {"i": 1, "j": 2, "coeffs": {"3": 2}},
        ],
    }
    with pytest.raises(ParseError) as info:
        load_algebra(payload)
    assert info.value.field == "brackets[1]"


def test_mirror_entries_must_be_antisymmetric():
    consistent = {
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": 1}},
            {"i": 2, "j": 1, "coeffs": {"3": -1}},
        ],
    }
    assert load_algebra(consistent) == load_algebra(HEISENBERG_JSON | {"basis": ["e1", "e2", "e3"]})

    conflicting = {
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": 1}},
            {"i": 2, "j": 1, "coeffs": {"3": 1}},
        ],
    }
    with pytest.raises(ParseError) as info:
        load_algebra(conflicting)
    assert info.value.field == "brackets"


@pytest.mark.parametrize(
    "payload",
    [
        {"dim": 3, "extra": 1},
        {"dim": 0},
        {"dim": 3, "basis": ["X", "Y"]},
        {"dim": 3, "basis": ["X", "X", "Z"]},
        {"dim": 2, "brackets": [{"i": 1, "j": 3, "coeffs": {}}]},
        {"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"x": 1}}]},
    ],
)
def test_schema_violations(payload):
    with pytest.raises(ParseError):
        load_algebra(payload)


def test_schema_violation_is_located():
    text = json.dumps(HEISENBERG_JSON | {"dim": 3.0}, indent=2)
    with pytest.raises(ParseError) as info:
        load_algebra(text)
    assert info.value.field == "dim"
    assert info.value.line == 2


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as info:
        load_algebra('{"dim": 3,')
    assert info.value.line == 1
    assert "line 1" in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_algebra(tmp_path / "absent.json")


def test_undecodable_file(tmp_path):
    path = tmp_path / "latin.json"
    path.write_bytes(b"\xff\xfe{}")
    with pytest.raises(ParseError, match="cannot decode"):
        load_algebra(path)


def test_load_structure():
    S = load_structure(REEB_STRUCTURE_JSON, dim=3)
    assert S == StructureData(
        J=Matrix.from_rows([[0, -1, 0], [1, 0, 0], [0, 0, 0]]),
        xi=(0, 0, 1),
        alpha=(0, 0, 1),
        g=Matrix.identity(3),
    )
    assert structure_to_dict(S) == REEB_STRUCTURE_JSON


def test_structure_dimension_mismatch():
    with pytest.raises(ParseError) as info:
        load_structure(REEB_STRUCTURE_JSON, dim=5)
    assert info.value.field == "J"
    with pytest.raises(ParseError):
        load_structure(REEB_STRUCTURE_JSON | {"xi": [0, 1]})


def test_load_metric():
    assert load_metric({"g": [[2, "1/2"], ["1/2", 1]]}, dim=2)[0, 1] == Fraction(1, 2)
    with pytest.raises(ParseError):
        load_metric({"g": [[1, 0], [0, 1]]}, dim=3)


def test_load_modification():
    maps = load_modification({"maps": [[[0, 0], [0, 0]], [[0, 1], [-1, 0]]]}, dim=2)
    assert maps[1].column(0) == (0, -1)
    with pytest.raises(ParseError):
        load_modification({"maps": [[[0, 0], [0, 0]]]})


def test_load_family_variants():
    fixed = load_family({"J": REEB_STRUCTURE_JSON["J"]}, dim=3)
    assert isinstance(fixed, JtFamily)
    assert len(fixed.coefficients) == 1

    polynomial = load_family({"family": [REEB_STRUCTURE_JSON["J"], [[1, 0, 0], [0, -1, 0], [0, 0, 0]]]})
    assert polynomial.at(1)[0, 0] == 1

    conjugated = load_family({"conjugate": REEB_STRUCTURE_JSON["J"], "plane": [1, 2]})
    assert isinstance(conjugated, ConjugatedFamily)
    assert conjugated.plane == (0, 1)
    assert conjugated.to_dict()["plane"] == [1, 2]


@pytest.mark.parametrize(
    "payload",
    [
        {"J": [[0]], "family": [[[0]]]},
        {"conjugate": [[0, -1], [1, 0]]},
        {"conjugate": [[0, -1], [1, 0]], "plane": [1, 3]},
        {"family": []},
    ],
)
def test_family_schema_violations(payload):
    with pytest.raises(ParseError):
        load_family(payload)


def test_family_dimension_mismatch():
    with pytest.raises(ParseError):
        load_family({"J": [[0, -1], [1, 0]]}, dim=3)


def test_load_form():
    form = load_form({"degree": 2, "terms": [{"idx": [2, 1], "coeff": "3/2"}]}, dim=3)
    assert form.coefficients == {(0, 1): Fraction(-3, 2)}

    complex_form = load_form({"degree": 1, "terms": [{"idx": [1], "coeff": {"re": 1, "im": "1/2"}}]}, dim=2)
    assert complex_form.coefficients == {(0,): ComplexScalar(Fraction(1), Fraction(1, 2))}


@pytest.mark.parametrize(
    "payload",
    [
        {"degree": 2, "terms": [{"idx": [1, 1], "coeff": 1}]},
        {"degree": 2, "terms": [{"idx": [1, 4], "coeff": 1}]},
    ],
)
def test_bad_form_indices(payload):
    with pytest.raises(ParseError) as info:
        load_form(payload, dim=3)
    assert info.value.field == "terms[0].idx"


def test_canonical_output():
    text = canonical_json({"b": Fraction(1, 2), "a": [Fraction(2), "é"]})
    assert text == '{\n  "a": [\n    2,\n    "é"\n  ],\n  "b": "1/2"\n}\n'


def test_algebra_serialization_is_stable():
    assert algebra_to_dict(load_algebra(HEISENBERG_JSON)) == HEISENBERG_JSON
    assert algebra_to_dict(load_algebra(MARRERO_JSON)) == MARRERO_JSON


def test_write_json(tmp_path):
    path = tmp_path / "out.json"
    text = write_json(algebra_to_dict(load_algebra(HEISENBERG_JSON)), path)
    assert path.read_text(encoding="utf-8") == text
    assert load_algebra(path) == load_algebra(HEISENBERG_JSON)


def test_load_any_structure():
    assert isinstance(load_any_structure(REEB_STRUCTURE_JSON), StructureData)
    J, g = load_any_structure({"J": [[0, -1], [1, 0]], "g": [[1, 0], [0, 1]]}, dim=2)
    assert J @ J == Matrix.identity(2).scale(-1)
    assert g == Matrix.identity(2)
