"""Named catalogue entries with their expected properties."""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..errors import UnknownEntryError
from ..exact.matrix import Matrix
from ..exact.scalars import as_fraction
from ..geometry.correspondence import DerivationData, KahlerAlgebra
from ..geometry.structures import StructureData
from ..lie.algebra import LieAlgebra
from . import families

logger = logging.getLogger(__name__)

_NAME = re.compile(r"^\s*([a-z_][a-z0-9_]*)\s*(?:\((.*)\))?\s*$")


@dataclass(frozen=True)
class CatalogueEntry:
    """
    A named algebra with its structure (cosymplectic quadruple or Kähler
    pair) and the property map the verifiers must reproduce.
    """
    name: str
    algebra: LieAlgebra
    expected: Dict[str, Any]
    structure: Optional[StructureData] = None
    kahler: Optional[KahlerAlgebra] = None
    derivation: Optional[DerivationData] = None
    family: Any = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def metric(self) -> Matrix:
        if self.structure is not None:
            return self.structure.g
        if self.kahler is not None:
            return self.kahler.g
        return Matrix.identity(self.algebra.dim)

    @property
    def is_cosymplectic_entry(self) -> bool:
        return self.structure is not None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "dim": self.algebra.dim, "expected": self.expected}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _torus(dim: int = 3) -> CatalogueEntry:
    dim = int(dim)
    L, S = families.torus(dim)
    return CatalogueEntry(
        name=f"torus({dim})",
        algebra=L,
        structure=S,
        family=families.torus_family(dim),
        expected={
            "cosymplectic": "pass",
            "unimodular": True,
            "flat": True,
            "betti": [comb(dim, k) for k in range(dim + 1)],
            "completely_solvable": "proved",
            "betti_conditions": "pass",
        },
    )


def _marrero(n: int = 1, lam: Fraction = Fraction(1)) -> CatalogueEntry:
    n = int(n)
    L, S = families.marrero(n, lam)
    betti = {1: [1, 1, 1, 1], 2: [1, 1, 4, 4, 1, 1], 3: [1, 1, 9, 9, 9, 9, 1, 1]}[n]
    return CatalogueEntry(
        name=f"marrero({n},{as_fraction(lam)})",
        algebra=L,
        structure=S,
        family=families.marrero_rotation_family(n, lam),
        expected={
            "cosymplectic": "pass",
            "unimodular": True,
            "flat": True,
            "betti": betti,
            "completely_solvable": "fail",
            "betti_conditions": "pass",
        },
        notes=("rescaling xi is an isomorphism between marrero(n, lam) for all nonzero lam",),
    )


def _heisenberg3() -> CatalogueEntry:
    L, S = families.heisenberg3()
    return CatalogueEntry(
        name="heisenberg3",
        algebra=L,
        structure=S,
        expected={
            "cosymplectic": "fail",
            "failed_stage": "dα = 0",
            "unimodular": True,
            "flat": False,
            "betti": [1, 2, 2, 1],
            "completely_solvable": "proved",
        },
    )


def _kahler_aff() -> CatalogueEntry:
    h = families.kahler_aff()
    return CatalogueEntry(
        name="kahler_aff",
        algebra=h.algebra,
        kahler=h,
        expected={
            "kahler": "pass",
            "unimodular": False,
            "flat": False,
            "sectional(e1,e2)": -1,
            "betti": [1, 1, 0],
            "completely_solvable": "proved",
        },
    )


def _hyperbolic_cosymplectic() -> CatalogueEntry:
    L, S = families.hyperbolic_cosymplectic()
    return CatalogueEntry(
        name="hyperbolic_cosymplectic",
        algebra=L,
        structure=S,
        expected={
            "cosymplectic": "pass",
            "unimodular": False,
            "flat": False,
            "sectional(e1,e2)": -1,
            "betti": [1, 2, 1, 0],
            "completely_solvable": "proved",
            "betti_conditions": "fail",
        },
        notes=("not unimodular, so no compact quotient; the Betti screen is expected to fail",),
    )


def _dorfmeister_base(beta: Fraction = Fraction(1)) -> CatalogueEntry:
    beta = as_fraction(beta)
    h = families.dorfmeister_base(beta)
    return CatalogueEntry(
        name=f"dorfmeister_base({beta})",
        algebra=h.algebra,
        kahler=h,
        derivation=families.dorfmeister_derivation(beta),
        expected={
            "kahler": "pass",
            "unimodular": False,
            "flat": False,
            "betti": [1, 1, 0, 0, 0],
            "completely_solvable": "fail" if beta else "proved",
        },
    )


def _dorfmeister_cosym(beta: Fraction = Fraction(1)) -> CatalogueEntry:
    beta = as_fraction(beta)
    L, S = families.dorfmeister_cosym(beta)
    return CatalogueEntry(
        name=f"dorfmeister_cosym({beta})",
        algebra=L,
        structure=S,
        expected={
            "cosymplectic": "pass",
            "unimodular": False,
            "flat": False,
            "betti": [1, 2, 1, 0, 0, 0],
            "completely_solvable": "fail" if beta else "proved",
            "betti_conditions": "fail",
        },
        notes=("not unimodular, so no compact quotient; the Betti screen is expected to fail",),
    )


_BUILDERS: Dict[str, Tuple[Callable[..., CatalogueEntry], Tuple[type, ...]]] = {
    "torus": (_torus, (int,)),
    "marrero": (_marrero, (int, Fraction)),
    "heisenberg3": (_heisenberg3, ()),
    "kahler_aff": (_kahler_aff, ()),
    "hyperbolic_cosymplectic": (_hyperbolic_cosymplectic, ()),
    "dorfmeister_base": (_dorfmeister_base, (Fraction,)),
    "dorfmeister_cosym": (_dorfmeister_cosym, (Fraction,)),
}

DEFAULT_NAMES = (
    "torus(3)",
    "torus(5)",
    "torus(7)",
    "marrero(1,1)",
    "marrero(2,1)",
    "heisenberg3",
    "kahler_aff",
    "hyperbolic_cosymplectic",
    "dorfmeister_base(1)",
    "dorfmeister_cosym(1)",
)


def parse_name(name: str) -> Tuple[str, List[Any]]:
    """
    Split ``"marrero(2, 1/2)"`` into ``("marrero", [2, Fraction(1, 2)])``.

    Raises:
        UnknownEntryError: unknown family or malformed arguments
    """
    match = _NAME.match(name)
    if not match:
        raise UnknownEntryError(f"malformed catalogue name '{name}'")
    family, raw = match.group(1), match.group(2)
    if family not in _BUILDERS:
        raise UnknownEntryError(f"unknown catalogue entry '{family}'; known: {', '.join(sorted(_BUILDERS))}")
    kinds = _BUILDERS[family][1]
    parts = [p.strip() for p in raw.split(",")] if raw and raw.strip() else []
    if len(parts) > len(kinds):
        raise UnknownEntryError(f"'{family}' takes at most {len(kinds)} arguments")
    args: List[Any] = []
    for kind, part in zip(kinds, parts):
        try:
            value = as_fraction(part)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise UnknownEntryError(f"argument '{part}' of '{family}' is not a rational number") from exc
        if kind is int:
            if value.denominator != 1:
                raise UnknownEntryError(f"argument '{part}' of '{family}' must be an integer")
            value = int(value)
        args.append(value)
    return family, args


def get(name: str) -> CatalogueEntry:
    """
    Raises:
        UnknownEntryError: the name or its arguments do not match an entry
    """
    family, args = parse_name(name)
    entry = _BUILDERS[family][0](*args)
    logger.debug("built catalogue entry %s", entry.name)
    return entry


def list_names() -> List[str]:
    return list(DEFAULT_NAMES)
