"""Builders for the named algebras, structures and deformation families."""

from fractions import Fraction
from typing import List, Sequence, Tuple

from ..errors import UnknownEntryError
from ..exact.matrix import Matrix, basis_vector
from ..exact.scalars import ONE, ZERO, as_fraction
from ..geometry.correspondence import DerivationData, KahlerAlgebra, extend
from ..geometry.deformation import ConjugatedFamily, JtFamily
from ..geometry.structures import StructureData
from ..lie.algebra import LieAlgebra

HALF = Fraction(1, 2)


def pair_names(n: int) -> Tuple[str, ...]:
    """``X, Y`` for one pair, else ``X1, Y1, X2, Y2, ...``."""
    if n == 1:
        return ("X", "Y")
    return tuple(name for i in range(1, n + 1) for name in (f"X{i}", f"Y{i}"))


def paired_J(n: int, extra: int = 1) -> Matrix:
    """``J X_i = Y_i`` on ``n`` pairs, zero on the ``extra`` trailing vectors."""
    size = 2 * n + extra
    rows = [[ZERO] * size for _ in range(size)]
    for k in range(n):
        rows[2 * k + 1][2 * k] = ONE
        rows[2 * k][2 * k + 1] = -ONE
    return Matrix.from_rows(rows)


def reeb_structure(n: int) -> StructureData:
    """``J X_i = Y_i``, ``xi`` the last vector, ``alpha`` its dual, ``g = I``."""
    dim = 2 * n + 1
    xi = basis_vector(dim, dim - 1)
    return StructureData(J=paired_J(n), xi=xi, alpha=xi, g=Matrix.identity(dim))


# ---------------------------------------------------------------------- cosymplectic

def torus(dim: int) -> Tuple[LieAlgebra, StructureData]:
    if dim % 2 == 0 or not 3 <= dim <= 7:
        raise UnknownEntryError(f"torus dimension must be 3, 5 or 7, got {dim}")
    n = (dim - 1) // 2
    return LieAlgebra.abelian(dim, pair_names(n) + ("Z",), name=f"torus({dim})"), reeb_structure(n)


def marrero(n: int = 1, lam=1) -> Tuple[LieAlgebra, StructureData]:
    """``[X_i, Z] = lam Y_i``, ``[Y_i, Z] = -lam X_i``."""
    lam = as_fraction(lam)
    if lam == 0:
        raise UnknownEntryError("marrero needs a nonzero rotation speed")
    if not 1 <= n <= 3:
        raise UnknownEntryError(f"marrero rank must be 1, 2 or 3, got {n}")
    names = pair_names(n) + ("Z",)
    z = 2 * n
    brackets = {}
    for k in range(n):
        brackets[(2 * k, z)] = {2 * k + 1: lam}
        brackets[(2 * k + 1, z)] = {2 * k: -lam}
    L = LieAlgebra.from_brackets(names, brackets, name=f"marrero({n},{lam})")
    return L, reeb_structure(n)


def heisenberg3() -> Tuple[LieAlgebra, StructureData]:
    """``[X, Y] = Z`` with the structure of ``torus(3)``; ``d alpha != 0``."""
    L = LieAlgebra.from_brackets(("X", "Y", "Z"), {(0, 1): {2: 1}}, name="heisenberg3")
    return L, reeb_structure(1)


# ---------------------------------------------------------------------- Kähler

def kahler_aff() -> KahlerAlgebra:
    """``[e2, e1] = e1`` with ``J e1 = e2`` and ``g = I``; curvature ``-1``."""
    L = LieAlgebra.from_brackets(("e1", "e2"), {(1, 0): {0: 1}}, name="kahler_aff")
    return KahlerAlgebra(L, paired_J(1, extra=0), Matrix.identity(2))


def hyperbolic_cosymplectic() -> Tuple[LieAlgebra, StructureData]:
    L, S = extend(kahler_aff(), DerivationData(Matrix.zeros(2, 2)), xi_name="e3", name="hyperbolic_cosymplectic")
    return L, S


def dorfmeister_base(beta=1) -> KahlerAlgebra:
    """
    ``[JX0, X0] = X0``, ``[JX0, U] = U/2 + beta JU``, ``[JX0, JU] = -beta U + JU/2``,
    ``[JU, U] = X0`` with ``J X0 = JX0``, ``J U = JU`` and ``g = I``.
    """
    beta = as_fraction(beta)
    x0, jx0, u, ju = range(4)
    brackets = {
        (jx0, x0): {x0: 1},
        (jx0, u): {u: HALF, ju: beta},
        (jx0, ju): {u: -beta, ju: HALF},
        (ju, u): {x0: 1},
    }
    L = LieAlgebra.from_brackets(("X0", "JX0", "U", "JU"), brackets, name=f"dorfmeister_base({beta})")
    return KahlerAlgebra(L, paired_J(2, extra=0), Matrix.identity(4))


def dorfmeister_derivation(beta=1) -> DerivationData:
    """``D U = beta JU``, ``D JU = -beta U``, zero on ``X0, JX0``."""
    beta = as_fraction(beta)
    rows = [[ZERO] * 4 for _ in range(4)]
    rows[3][2] = beta
    rows[2][3] = -beta
    return DerivationData(Matrix.from_rows(rows))


def dorfmeister_cosym(beta=1) -> Tuple[LieAlgebra, StructureData]:
    beta = as_fraction(beta)
    return extend(dorfmeister_base(beta), dorfmeister_derivation(beta), name=f"dorfmeister_cosym({beta})")


def admissible_form(dim: int) -> Tuple[Fraction, ...]:
    """The covector dual to the first basis vector."""
    return basis_vector(dim, 0)


# ---------------------------------------------------------------------- modification maps

def rotation_modification() -> Tuple[KahlerAlgebra, List[Matrix]]:
    """Abelian ``R^4`` with ``D(e1)`` the rotation of ``(e3, e4)``, zero elsewhere."""
    L = LieAlgebra.abelian(4, name="R^4")
    h = KahlerAlgebra(L, paired_J(2, extra=0), Matrix.identity(4))
    rotation = [[ZERO] * 4 for _ in range(4)]
    rotation[3][2] = ONE
    rotation[2][3] = -ONE
    maps = [Matrix.from_rows(rotation)] + [Matrix.zeros(4, 4) for _ in range(3)]
    return h, maps


# ---------------------------------------------------------------------- deformation families

def torus_family(dim: int = 3) -> JtFamily:
    """
    ``J_t X1 = t X1 + Y1``, ``J_t Y1 = -(1 + t^2) X1 - t Y1``; the other
    pairs keep ``J``.
    """
    J = torus(dim)[1].J
    linear = [[ZERO] * dim for _ in range(dim)]
    linear[0][0], linear[1][1] = ONE, -ONE
    quadratic = [[ZERO] * dim for _ in range(dim)]
    quadratic[0][1] = -ONE
    return JtFamily((J, Matrix.from_rows(linear), Matrix.from_rows(quadratic)))


def marrero_rotation_family(n: int = 1, lam=1) -> ConjugatedFamily:
    """``J`` conjugated by the rational rotation of the first pair; a ``g``-isometry family."""
    return ConjugatedFamily(marrero(n, lam)[1].J, (0, 1))


def matrix_family(coefficients: Sequence[Sequence[Sequence]]) -> JtFamily:
    return JtFamily(tuple(Matrix.from_rows(m) for m in coefficients))
