"""Levi-Civita connection and curvature of a left-invariant metric."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Optional, Sequence, Tuple

from ..errors import InvariantBreach
from ..exact.matrix import Matrix, Vector, bilinear, inverse, is_zero_vector, vec_add
from ..exact.scalars import Number
from ..forms.ce_complex import require_metric
from ..lie.algebra import LieAlgebra
from ..lie.classify import classify
from ..report import Report, failed, passed
from .structures import StructureData, verify_cosymplectic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Connection:
    """``gamma[i]`` is the matrix of ``Y -> nabla_{e_i} Y``."""
    algebra: LieAlgebra
    metric: Matrix
    gamma: Tuple[Matrix, ...]

    def operator(self, x: Sequence) -> Matrix:
        """Matrix of ``nabla_X``."""
        n = self.algebra.dim
        out = Matrix.zeros(n, n)
        for i, xi in enumerate(x):
            if xi:
                out = out + self.gamma[i].scale(xi)
        return out

    def covariant(self, x: Sequence, y: Sequence) -> Vector:
        return self.operator(x).apply(y)

    def to_dict(self) -> Dict[str, Any]:
        names = self.algebra.basis_names
        return {
            f"∇_{names[i]} {names[j]}": self.gamma[i].column(j)
            for i in range(self.algebra.dim)
            for j in range(self.algebra.dim)
            if not is_zero_vector(self.gamma[i].column(j))
        }


@lru_cache(maxsize=64)
def levi_civita(L: LieAlgebra, g: Matrix) -> Connection:
    """
    Koszul formula ``2g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``.

    Raises:
        PreconditionError: ``g`` is not positive definite
        InvariantBreach: the result is not torsion free or not metric
    """
    require_metric(g, L.dim)
    n = L.dim
    g_inv = inverse(g)
    e = L.vector
    gamma = []
    for i in range(n):
        columns = []
        for j in range(n):
            w = [
                bilinear(L.basis_bracket(i, j), g, e(k))
                - bilinear(L.basis_bracket(j, k), g, e(i))
                + bilinear(L.basis_bracket(k, i), g, e(j))
                for k in range(n)
            ]
            columns.append(tuple(x / 2 for x in g_inv.apply(w)))
        gamma.append(Matrix.from_columns(columns))
    connection = Connection(L, g, tuple(gamma))
    _check_connection(connection)
    logger.debug("Levi-Civita connection of %s assembled", L.name or L.dim)
    return connection


def _check_connection(connection: Connection) -> None:
    L, g, gamma = connection.algebra, connection.metric, connection.gamma
    for i, j in combinations(range(L.dim), 2):
        torsion = tuple(
            a - b - c for a, b, c in zip(gamma[i].column(j), gamma[j].column(i), L.basis_bracket(i, j))
        )
        if not is_zero_vector(torsion):
            raise InvariantBreach(f"connection has torsion on ({L.basis_names[i]}, {L.basis_names[j]})")
    for i in range(L.dim):
        if not (gamma[i].transpose() @ g + g @ gamma[i]).is_zero():
            raise InvariantBreach(f"connection is not metric along {L.basis_names[i]}")


@dataclass(frozen=True)
class CurvatureTensor:
    """``components[(i, j)]`` is the matrix of ``R(e_i, e_j)`` for ``i < j``."""
    connection: Connection
    components: Dict[Tuple[int, int], Matrix]

    @property
    def flat(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def operator(self, i: int, j: int) -> Matrix:
        if i == j:
            n = self.connection.algebra.dim
            return Matrix.zeros(n, n)
        if i < j:
            return self.components[(i, j)]
        return -self.components[(j, i)]

    def value(self, i: int, j: int, k: int) -> Vector:
        """``R(e_i, e_j) e_k``."""
        return self.operator(i, j).column(k)

    def sectional(self, i: int, j: int) -> Number:
        """``g(R(X,Y)Y, X) / (|X|^2 |Y|^2 - g(X,Y)^2)`` on the coordinate plane."""
        L, g = self.connection.algebra, self.connection.metric
        numerator = bilinear(self.value(i, j, j), g, L.vector(i))
        return numerator / (g[i, i] * g[j, j] - g[i, j] * g[i, j])

    def sectional_curvatures(self) -> Dict[Tuple[str, str], Number]:
        names = self.connection.algebra.basis_names
        n = self.connection.algebra.dim
        return {(names[i], names[j]): self.sectional(i, j) for i, j in combinations(range(n), 2)}

    def first_nonzero(self) -> Optional[Dict[str, Any]]:
        names = self.connection.algebra.basis_names
        for (i, j), m in sorted(self.components.items()):
            hit = m.first_nonzero()
            if hit is not None:
                row, col, value = hit
                return {"R": [names[i], names[j], names[col]], "component": names[row], "value": value}
        return None

    def to_dict(self) -> Dict[str, Any]:
        names = self.connection.algebra.basis_names
        n = self.connection.algebra.dim
        return {
            "flat": self.flat,
            "connection": self.connection.to_dict(),
            "curvature": {
                f"R({names[i]},{names[j]}){names[k]}": self.value(i, j, k)
                for i, j in combinations(range(n), 2)
                for k in range(n)
                if not is_zero_vector(self.value(i, j, k))
            },
            "sectional": self.sectional_curvatures(),
        }


@lru_cache(maxsize=64)
def curvature(L: LieAlgebra, g: Matrix) -> CurvatureTensor:
    """
    ``R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]`` on basis pairs.

    Raises:
        InvariantBreach: the first Bianchi identity fails
    """
    connection = levi_civita(L, g)
    components = {}
    for i, j in combinations(range(L.dim), 2):
        components[(i, j)] = (
            connection.gamma[i].commutator(connection.gamma[j]) - connection.operator(L.basis_bracket(i, j))
        )
    tensor = CurvatureTensor(connection, components)
    for i, j, k in combinations(range(L.dim), 3):
        cyclic = vec_add(vec_add(tensor.value(i, j, k), tensor.value(j, k, i)), tensor.value(k, i, j))
        if not is_zero_vector(cyclic):
            raise InvariantBreach(f"first Bianchi identity fails on {L.basis_names[i]}, {L.basis_names[j]}, {L.basis_names[k]}")
    return tensor


def curvature_report(L: LieAlgebra, g: Matrix) -> Report:
    """Connection, curvature components, sectional curvatures and the flatness verdict."""
    tensor = curvature(L, g)
    report = Report(subject=f"curvature of {L.name or L.dim}", data=tensor.to_dict())
    report.add(passed("flat") if tensor.flat else failed("flat", tensor.first_nonzero()))
    return report


def unimodular_flatness_report(L: LieAlgebra, S: StructureData) -> Report:
    """
    A unimodular Lie algebra carrying a cosymplectic structure is flat and
    solvable; the report records the hypotheses and checks the conclusion.
    """
    cosymplectic = verify_cosymplectic(L, S).passed
    flags = classify(L)
    tensor = curvature(L, S.g)
    report = Report(
        subject=f"unimodular flatness on {L.name or L.dim}",
        data={
            "cosymplectic": cosymplectic,
            "unimodular": flags.unimodular,
            "flat": tensor.flat,
            "solvable": flags.solvable,
        },
    )
    name = "cosymplectic ∧ unimodular ⇒ flat ∧ solvable"
    if not (cosymplectic and flags.unimodular):
        report.add(passed(name, "hypotheses not met"))
    elif tensor.flat and flags.solvable:
        report.add(passed(name))
    else:
        report.add(failed(name, tensor.first_nonzero() or {"solvable": flags.solvable}))
    return report
