from dataclasses import replace
from fractions import Fraction

import pytest

from src import catalogue
from src.catalogue.entries import DEFAULT_NAMES
from src.errors import UnknownEntryError


def test_parse_name():
    assert catalogue.parse_name("marrero(2, 1/2)") == ("marrero", [2, Fraction(1, 2)])
    assert catalogue.parse_name("heisenberg3") == ("heisenberg3", [])
    assert catalogue.parse_name(" torus(5) ") == ("torus", [5])


@pytest.mark.parametrize(
    "name",
    ["sphere", "torus(4)", "torus(1/2)", "marrero(1,0)", "marrero(4)", "heisenberg3(1)", "torus(3", "marrero(1,x)"],
)
def test_unknown_entries(name):
    with pytest.raises(UnknownEntryError):
        catalogue.get(name)


def test_list_names():
    names = catalogue.list_names()
    assert names == list(DEFAULT_NAMES)
    assert len(names) == 10


@pytest.mark.parametrize("name", DEFAULT_NAMES)
def test_fixture_properties_regenerate(name):
    report = catalogue.check_entry(catalogue.get(name))
    assert report.passed, report.to_dict()


def test_parameterized_entries_check():
    for name in ("marrero(2, 1/2)", "marrero(3)", "dorfmeister_base(0)", "dorfmeister_cosym(2)"):
        assert catalogue.check_entry(catalogue.get(name)).passed, name


def test_canonical_entry_names():
    assert catalogue.get("marrero(2, 1/2)").name == "marrero(2,1/2)"
    assert catalogue.get("marrero").name == "marrero(1,1)"
    assert catalogue.get("torus").name == "torus(3)"


def test_compute_properties_mirrors_expected_keys(heisenberg):
    actual = catalogue.compute_properties(heisenberg)
    assert set(actual) == set(heisenberg.expected)
    assert actual["failed_stage"] == "dα = 0"
    assert actual["betti"] == [1, 2, 2, 1]


def test_sectional_keys(kahler_aff):
    assert catalogue.compute_properties(kahler_aff)["sectional(e1,e2)"] == -1


def test_to_dict(hyperbolic):
    payload = hyperbolic.to_dict()
    assert payload["name"] == "hyperbolic_cosymplectic"
    assert payload["dim"] == 3
    assert payload["expected"]["betti"] == [1, 2, 1, 0]
    assert payload["notes"]


def test_mismatched_expectation_is_reported(torus3):
    wrong = replace(torus3, expected={**torus3.expected, "betti": [1, 3, 3, 2]})
    report = catalogue.check_entry(wrong)
    assert report.failed_stage.name == "betti"
    assert report.failed_stage.witness == {"expected": [1, 3, 3, 2], "actual": [1, 3, 3, 1]}
