"""
Read JSON input files into domain objects.

Every failure (syntax, schema, inconsistent brackets) surfaces as a
``ParseError`` carrying the dotted field path and, where it can be located,
the line and column in the source text.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from ..errors import ParseError
from ..exact.matrix import Matrix
from ..exact.scalars import ComplexScalar
from ..forms.exterior import KForm
from ..geometry.correspondence import DerivationData, KahlerAlgebra
from ..geometry.deformation import ConjugatedFamily, JtFamily
from ..geometry.structures import StructureData
from ..lie.algebra import LieAlgebra, default_names, require_lie_algebra
from .schemas import (
    AlgebraSchema,
    ComplexValue,
    DerivationSchema,
    FamilySchema,
    FormSchema,
    KahlerSchema,
    MetricSchema,
    ModificationSchema,
    NormalJSchema,
    PairSchema,
    StructureSchema,
)

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)
Source = Union[str, Path, Dict[str, Any]]


_UNION_TAGS = ("int", "str", "ComplexValue")


def _dotted(loc: Tuple) -> str:
    out = ""
    for part in loc:
        if isinstance(part, str) and (part in _UNION_TAGS or part.startswith("function-")):
            continue
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += f".{part}" if out else str(part)
    return out


def _locate(text: Optional[str], loc: Tuple) -> Optional[int]:
    """Line of the innermost named key of ``loc``, if it appears in ``text``."""
    if not text:
        return None
    keys = [p for p in loc if isinstance(p, str) and p not in _UNION_TAGS and not p.startswith("function-")]
    if not keys:
        return None
    needle = f'"{keys[-1]}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def read_json(source: Source) -> Tuple[Any, Optional[str]]:
    """
    Parse a path, a JSON string or an already-decoded object.

    Raises:
        ParseError: unreadable file or malformed JSON
    """
    if isinstance(source, dict):
        return source, None
    text: str
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith(("{", "["))):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
        except UnicodeDecodeError as exc:
            raise ParseError(f"cannot decode {path} as UTF-8: {exc.reason} at byte {exc.start}") from exc
    else:
        text = source
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc


def parse_model(model: Type[Model], source: Source) -> Model:
    """
    Validate ``source`` against ``model``.

    Raises:
        ParseError: malformed JSON or a schema violation
    """
    data, text = read_json(source)
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = tuple(first.get("loc", ()))
        logger.debug("schema violation in %s: %s", model.__name__, first)
        raise ParseError(first.get("msg", "invalid value"), field=_dotted(loc) or None, line=_locate(text, loc)) from exc


# ---------------------------------------------------------------------- conversions

def _matrix(rows: List[list]) -> Matrix:
    return Matrix.from_rows(rows)


def algebra_from_schema(schema: AlgebraSchema) -> LieAlgebra:
    """
    Raises:
        ParseError: a bracket contradicts its antisymmetric mirror
    """
    names = tuple(schema.basis) if schema.basis else default_names(schema.dim)
    brackets: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for n, entry in enumerate(schema.brackets):
        key = (entry.i - 1, entry.j - 1)
        coeffs = {int(k) - 1: v for k, v in entry.coeffs.items()}
        if key in brackets and brackets[key] != coeffs:
            raise ParseError(f"duplicate entry for [{names[key[0]]}, {names[key[1]]}]", field=f"brackets[{n}]")
        brackets[key] = coeffs
    try:
        return LieAlgebra.from_brackets(names, brackets, name=schema.name or "")
    except ValueError as exc:
        raise ParseError(str(exc), field="brackets") from exc


def structure_from_schema(schema: StructureSchema) -> StructureData:
    return StructureData(J=_matrix(schema.J), xi=tuple(schema.xi), alpha=tuple(schema.alpha), g=_matrix(schema.g))


def kahler_from_schema(schema: KahlerSchema) -> KahlerAlgebra:
    return KahlerAlgebra(algebra_from_schema(schema.algebra), _matrix(schema.J), _matrix(schema.g))


def family_from_schema(schema: FamilySchema):
    if schema.family is not None:
        return JtFamily(tuple(_matrix(m) for m in schema.family))
    if schema.J is not None:
        return JtFamily.fixed(_matrix(schema.J))
    i, j = schema.plane
    return ConjugatedFamily(_matrix(schema.conjugate), (i - 1, j - 1))


def form_from_schema(schema: FormSchema, dim: int) -> KForm:
    """
    Raises:
        ParseError: an index exceeds ``dim`` or repeats
    """
    out = KForm.zero(dim, schema.degree)
    for n, term in enumerate(schema.terms):
        if any(i > dim for i in term.idx) or len(set(term.idx)) != len(term.idx):
            raise ParseError(f"indices {term.idx} are not distinct indices in 1..{dim}", field=f"terms[{n}].idx")
        coeff = term.coeff
        if isinstance(coeff, ComplexValue):
            coeff = ComplexScalar(coeff.re, coeff.im)
        out = out + KForm.basis(dim, [i - 1 for i in term.idx], coeff)
    return out


# ---------------------------------------------------------------------- file loaders

def load_algebra(source: Source) -> LieAlgebra:
    algebra = algebra_from_schema(parse_model(AlgebraSchema, source))
    logger.debug("loaded algebra %s of dimension %d", algebra.name or "<unnamed>", algebra.dim)
    return algebra


def load_lie_algebra(source: Source) -> LieAlgebra:
    """
    Raises:
        ParseError: malformed input
        PreconditionError: the table fails Jacobi
    """
    algebra = load_algebra(source)
    require_lie_algebra(algebra)
    return algebra


def load_structure(source: Source, dim: Optional[int] = None) -> StructureData:
    """
    Raises:
        ParseError: schema violation, or the size disagrees with ``dim``
    """
    structure = structure_from_schema(parse_model(StructureSchema, source))
    if dim is not None and structure.dim != dim:
        raise ParseError(f"structure has size {structure.dim}, the algebra has dimension {dim}", field="J")
    return structure


def load_metric(source: Source, dim: Optional[int] = None) -> Matrix:
    g = _matrix(parse_model(MetricSchema, source).g)
    if dim is not None and g.rows != dim:
        raise ParseError(f"metric has size {g.rows}, the algebra has dimension {dim}", field="g")
    return g


def load_kahler(source: Source) -> KahlerAlgebra:
    return kahler_from_schema(parse_model(KahlerSchema, source))


def load_derivation(source: Source, dim: Optional[int] = None) -> DerivationData:
    D = _matrix(parse_model(DerivationSchema, source).D)
    if dim is not None and D.rows != dim:
        raise ParseError(f"D has size {D.rows}, the algebra has dimension {dim}", field="D")
    return DerivationData(D)


def load_modification(source: Source, dim: Optional[int] = None) -> List[Matrix]:
    maps = [_matrix(m) for m in parse_model(ModificationSchema, source).maps]
    if dim is not None and len(maps) != dim:
        raise ParseError(f"{len(maps)} maps for an algebra of dimension {dim}", field="maps")
    return maps


def load_normal_j(source: Source) -> Tuple[LieAlgebra, Matrix, Tuple]:
    schema = parse_model(NormalJSchema, source)
    return algebra_from_schema(schema.algebra), _matrix(schema.J), tuple(schema.mu)


def load_family(source: Source, dim: Optional[int] = None):
    family = family_from_schema(parse_model(FamilySchema, source))
    size = family.coefficients[0].rows if isinstance(family, JtFamily) else family.J.rows
    if dim is not None and size != dim:
        raise ParseError(f"J_t has size {size}, the algebra has dimension {dim}")
    return family


def load_form(source: Source, dim: int) -> KForm:
    return form_from_schema(parse_model(FormSchema, source), dim)


def load_pair(source: Source, dim: Optional[int] = None) -> Tuple[Matrix, Matrix]:
    """``(J, g)`` for a Kähler check on an even-dimensional algebra."""
    schema = parse_model(PairSchema, source)
    J, g = _matrix(schema.J), _matrix(schema.g)
    if dim is not None and J.rows != dim:
        raise ParseError(f"J has size {J.rows}, the algebra has dimension {dim}", field="J")
    return J, g


def load_any_structure(source: Source, dim: Optional[int] = None) -> Union[StructureData, Tuple[Matrix, Matrix]]:
    """A cosymplectic quadruple when the file carries ``xi``, otherwise a ``(J, g)`` pair."""
    data, _ = read_json(source)
    if isinstance(data, dict) and "xi" not in data and "alpha" not in data:
        return load_pair(source, dim)
    return load_structure(source, dim)
