"""Pydantic schemas for the JSON input files."""

import re
from fractions import Fraction
from typing import Annotated, Dict, List, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, StrictInt, StrictStr, model_validator

_RATIONAL = re.compile(r"^-?\d+(/\d*[1-9]\d*)?$")


def _to_fraction(value: Union[int, str]) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    text = value.strip()
    if not _RATIONAL.match(text):
        raise ValueError(f"'{value}' is not an exact rational (use an integer or \"p/q\" with q > 0)")
    return Fraction(text)


# ``1``, ``"-3/4"``; floats and booleans are rejected
Rational = Annotated[Union[StrictInt, StrictStr], AfterValidator(_to_fraction)]
RationalRow = List[Rational]
RationalMatrix = List[RationalRow]


def _check_square(name: str, rows: List[list], size: Optional[int] = None) -> int:
    n = len(rows) if size is None else size
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"{name} must be a square {n}x{n} matrix")
    return n


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ============== Lie algebras ==============

class BracketEntry(_Strict):
    """``[e_i, e_j] = sum_k coeffs[k] e_k`` with 1-based indices."""
    i: StrictInt = Field(..., ge=1)
    j: StrictInt = Field(..., ge=1)
    coeffs: Dict[str, Rational] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _keys_are_indices(self) -> "BracketEntry":
        for key in self.coeffs:
            if not key.isdigit() or int(key) < 1:
                raise ValueError(f"coefficient key '{key}' is not a 1-based index")
        return self


class AlgebraSchema(_Strict):
    """Structure constants; omitted pairs are zero."""
    dim: StrictInt = Field(..., ge=1, description="Dimension of the algebra")
    basis: Optional[List[StrictStr]] = Field(default=None, description="Basis names, e1..en when omitted")
    brackets: List[BracketEntry] = Field(default_factory=list)
    name: Optional[StrictStr] = None

    @model_validator(mode="after")
    def _indices_in_range(self) -> "AlgebraSchema":
        if self.basis is not None:
            if len(self.basis) != self.dim:
                raise ValueError(f"{len(self.basis)} basis names for dim {self.dim}")
            if len(set(self.basis)) != self.dim:
                raise ValueError("basis names must be distinct")
        for n, entry in enumerate(self.brackets):
            if entry.i > self.dim or entry.j > self.dim:
                raise ValueError(f"brackets[{n}] refers to a basis vector beyond dim {self.dim}")
            if any(int(k) > self.dim for k in entry.coeffs):
                raise ValueError(f"brackets[{n}] has a coefficient index beyond dim {self.dim}")
        return self


# ============== Structures ==============

class StructureSchema(_Strict):
    """The quadruple ``(J, xi, alpha, g)``; matrices are row-major."""
    J: RationalMatrix
    xi: RationalRow
    alpha: RationalRow
    g: RationalMatrix

    @model_validator(mode="after")
    def _shapes_agree(self) -> "StructureSchema":
        n = _check_square("J", self.J)
        _check_square("g", self.g, n)
        if len(self.xi) != n or len(self.alpha) != n:
            raise ValueError(f"xi and alpha must have length {n}")
        return self


class MetricSchema(_Strict):
    g: RationalMatrix

    @model_validator(mode="after")
    def _square(self) -> "MetricSchema":
        _check_square("g", self.g)
        return self


class PairSchema(_Strict):
    """``(J, g)`` on an even-dimensional algebra given separately."""
    J: RationalMatrix
    g: RationalMatrix

    @model_validator(mode="after")
    def _shapes_agree(self) -> "PairSchema":
        n = _check_square("J", self.J)
        _check_square("g", self.g, n)
        return self


class KahlerSchema(_Strict):
    """An even-dimensional algebra with ``J`` and ``g``."""
    algebra: AlgebraSchema
    J: RationalMatrix
    g: RationalMatrix

    @model_validator(mode="after")
    def _shapes_agree(self) -> "KahlerSchema":
        _check_square("J", self.J, self.algebra.dim)
        _check_square("g", self.g, self.algebra.dim)
        return self


class DerivationSchema(_Strict):
    D: RationalMatrix

    @model_validator(mode="after")
    def _square(self) -> "DerivationSchema":
        _check_square("D", self.D)
        return self


class ModificationSchema(_Strict):
    """``maps[i]`` is the matrix of the modification map at ``e_(i+1)``."""
    maps: List[RationalMatrix]

    @model_validator(mode="after")
    def _shapes_agree(self) -> "ModificationSchema":
        n = len(self.maps)
        for m in self.maps:
            _check_square("each map", m, n)
        return self


class NormalJSchema(_Strict):
    algebra: AlgebraSchema
    J: RationalMatrix
    mu: RationalRow

    @model_validator(mode="after")
    def _shapes_agree(self) -> "NormalJSchema":
        _check_square("J", self.J, self.algebra.dim)
        if len(self.mu) != self.algebra.dim:
            raise ValueError(f"mu must have length {self.algebra.dim}")
        return self


class FamilySchema(_Strict):
    """
    One of ``{"family": [M0, M1, ...]}`` (``J_t = sum t^k M_k``),
    ``{"J": M}`` (fixed) or ``{"conjugate": J, "plane": [i, j]}``.
    """
    family: Optional[List[RationalMatrix]] = None
    J: Optional[RationalMatrix] = None
    conjugate: Optional[RationalMatrix] = None
    plane: Optional[List[StrictInt]] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "FamilySchema":
        given = [k for k in ("family", "J", "conjugate") if getattr(self, k) is not None]
        if len(given) != 1:
            raise ValueError("give exactly one of 'family', 'J' or 'conjugate'")
        if self.family is not None:
            if not self.family:
                raise ValueError("'family' needs at least one coefficient matrix")
            n = _check_square("family[0]", self.family[0])
            for m in self.family[1:]:
                _check_square("each family coefficient", m, n)
        if self.J is not None:
            _check_square("J", self.J)
        if self.conjugate is not None:
            n = _check_square("conjugate", self.conjugate)
            if self.plane is None or len(self.plane) != 2 or len(set(self.plane)) != 2:
                raise ValueError("'conjugate' needs a 'plane' of two distinct 1-based indices")
            if any(not 1 <= p <= n for p in self.plane):
                raise ValueError(f"plane indices must lie in 1..{n}")
        return self


# ============== Forms ==============

class ComplexValue(_Strict):
    re: Rational = Fraction(0)
    im: Rational = Fraction(0)


class FormTerm(_Strict):
    idx: List[StrictInt]
    coeff: Union[Rational, ComplexValue]


class FormSchema(_Strict):
    """``{"degree": k, "terms": [{"idx": [i, ...], "coeff": "p/q"}]}`` with 1-based indices."""
    degree: StrictInt = Field(..., ge=0)
    terms: List[FormTerm] = Field(default_factory=list)

    @model_validator(mode="after")
    def _degrees_agree(self) -> "FormSchema":
        for n, term in enumerate(self.terms):
            if len(term.idx) != self.degree:
                raise ValueError(f"terms[{n}] has {len(term.idx)} indices for degree {self.degree}")
            if any(i < 1 for i in term.idx):
                raise ValueError(f"terms[{n}] indices are 1-based")
        return self
