"""Canonical JSON output: sorted keys, 1-based indices, lowest-terms rationals."""

import json
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..exact.matrix import Matrix
from ..exact.scalars import plain_rational, to_plain
from ..geometry.correspondence import DerivationData, KahlerAlgebra
from ..geometry.structures import StructureData
from ..lie.algebra import LieAlgebra


def canonical_json(payload: Any) -> str:
    """The byte-stable rendering used for every emitted file and fixture."""
    return json.dumps(to_plain(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def algebra_to_dict(L: LieAlgebra) -> Dict[str, Any]:
    brackets = []
    for i, j in combinations(range(L.dim), 2):
        coeffs = {str(k + 1): plain_rational(v) for k, v in enumerate(L.c[i][j]) if v}
        if coeffs:
            brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    out: Dict[str, Any] = {"dim": L.dim, "basis": list(L.basis_names), "brackets": brackets}
    if L.name:
        out["name"] = L.name
    return out


def structure_to_dict(S: StructureData) -> Dict[str, Any]:
    return to_plain(S.to_dict())


def metric_to_dict(g: Matrix) -> Dict[str, Any]:
    return {"g": to_plain(g.to_rows())}


def kahler_to_dict(h: KahlerAlgebra) -> Dict[str, Any]:
    return {"algebra": algebra_to_dict(h.algebra), "J": to_plain(h.J.to_rows()), "g": to_plain(h.g.to_rows())}


def derivation_to_dict(data: DerivationData) -> Dict[str, Any]:
    return {"D": to_plain(data.D.to_rows())}


def write_json(payload: Any, path: Optional[Union[str, Path]] = None) -> str:
    """Render canonically and, with a ``path``, write the file too."""
    text = canonical_json(payload)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
