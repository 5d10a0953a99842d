"""Regenerate a catalogue entry's property map from the verifiers and compare it."""

import logging
import re
from typing import Any, Dict

from ..exact.scalars import to_plain
from ..forms.ce_complex import betti, check_betti_conditions
from ..geometry.curvature import CurvatureTensor, curvature
from ..geometry.structures import verify_cosymplectic, verify_kahler
from ..lie.classify import completely_solvable, is_unimodular
from ..report import Report, failed, passed
from .entries import CatalogueEntry

logger = logging.getLogger(__name__)

_SECTIONAL = re.compile(r"^sectional\((\w+),(\w+)\)$")


def _sectional(entry: CatalogueEntry, tensor: CurvatureTensor, key: str) -> Any:
    match = _SECTIONAL.match(key)
    names = list(entry.algebra.basis_names)
    i, j = names.index(match.group(1)), names.index(match.group(2))
    return tensor.sectional(i, j)


def compute_properties(entry: CatalogueEntry) -> Dict[str, Any]:
    """
    Run the verifiers on ``entry`` and return the same keys as its expected map.

    Raises:
        KeyError: the expected map names a property no verifier produces
    """
    L = entry.algebra
    out: Dict[str, Any] = {}
    structure_report = None
    if entry.structure is not None:
        structure_report = verify_cosymplectic(L, entry.structure)
    elif entry.kahler is not None:
        structure_report = verify_kahler(L, entry.kahler.J, entry.kahler.g)

    tensor = None
    b = None
    for key in entry.expected:
        if key in ("cosymplectic", "kahler"):
            out[key] = structure_report.verdict.value
        elif key == "failed_stage":
            stage = structure_report.failed_stage
            out[key] = stage.name if stage else None
        elif key == "unimodular":
            out[key] = is_unimodular(L)
        elif key == "flat":
            tensor = tensor or curvature(L, entry.metric)
            out[key] = tensor.flat
        elif key == "betti":
            b = b or betti(L)
            out[key] = list(b)
        elif key == "completely_solvable":
            out[key] = completely_solvable(L).value
        elif key == "betti_conditions":
            b = b or betti(L)
            out[key] = check_betti_conditions(b, (L.dim - 1) // 2).verdict.value
        elif _SECTIONAL.match(key):
            tensor = tensor or curvature(L, entry.metric)
            out[key] = _sectional(entry, tensor, key)
        else:
            raise KeyError(f"no verifier produces '{key}'")
    return to_plain(out)


def check_entry(entry: CatalogueEntry) -> Report:
    """One stage per expected property: the regenerated value must match exactly."""
    report = Report(subject=f"catalogue fixture {entry.name}")
    actual = compute_properties(entry)
    expected = to_plain(entry.expected)
    for key in sorted(expected):
        if actual[key] == expected[key]:
            report.add(passed(key))
        else:
            report.add(failed(key, {"expected": expected[key], "actual": actual[key]}))
    report.data["properties"] = actual
    logger.debug("fixture check on %s: %s", entry.name, report.verdict.value)
    return report
