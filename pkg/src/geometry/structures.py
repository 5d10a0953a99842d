"""
Almost contact metric, normal, cosymplectic and Kähler structures on Lie algebras.

Every verifier returns a staged ``Report``; a failing stage carries the
first basis pair (or triple) that breaks it.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence

from ..errors import DimensionMismatchError
from ..exact.matrix import Matrix, Vector, bilinear, dot, is_positive_definite, is_zero_vector, rref_kernel, vec_add, vec_scale, vec_sub
from ..exact.scalars import ONE, ZERO, Number
from ..forms.ce_complex import ce_differential
from ..forms.exterior import KForm
from ..lie.algebra import LieAlgebra
from ..report import Report, Stage, failed, passed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StructureData:
    """The quadruple ``(J, xi, alpha, g)``; ``J`` acts on column vectors."""
    J: Matrix
    xi: Vector
    alpha: Vector
    g: Matrix

    @property
    def dim(self) -> int:
        return self.J.rows

    def check_shapes(self, dim: int) -> None:
        if self.J.shape != (dim, dim) or self.g.shape != (dim, dim):
            raise DimensionMismatchError(f"J and g must be {dim}x{dim}")
        if len(self.xi) != dim or len(self.alpha) != dim:
            raise DimensionMismatchError(f"xi and alpha must have length {dim}")

    def leaf_basis(self) -> List[Vector]:
        """Basis of ``ker alpha``."""
        return rref_kernel(Matrix.from_rows([self.alpha]))

    def with_metric(self, g: Matrix) -> "StructureData":
        return StructureData(self.J, self.xi, self.alpha, g)

    def with_J(self, J: Matrix) -> "StructureData":
        return StructureData(J, self.xi, self.alpha, self.g)

    def to_dict(self) -> Dict[str, Any]:
        return {"J": self.J.to_rows(), "xi": list(self.xi), "alpha": list(self.alpha), "g": self.g.to_rows()}


def _names(L: LieAlgebra, *indices: int) -> List[str]:
    return [L.basis_names[i] for i in indices]


def _check_dims(L: LieAlgebra, S: StructureData) -> None:
    S.check_shapes(L.dim)


# ---------------------------------------------------------------------- almost contact

def _almost_contact_stages(L: LieAlgebra, S: StructureData) -> List[Stage]:
    n = L.dim
    stages = []

    pairing = dot(S.alpha, S.xi)
    stages.append(passed("α(ξ) = 1") if pairing == ONE else failed("α(ξ) = 1", {"alpha(xi)": pairing}))

    square = S.J @ S.J
    expected = Matrix.identity(n).scale(-1) + Matrix.outer(S.xi, S.alpha)
    diff = square.first_difference(expected)
    if diff is None:
        stages.append(passed("J² = -Id + α⊗ξ"))
    else:
        i, j, got, want = diff
        stages.append(failed("J² = -Id + α⊗ξ", {"image_of": L.basis_names[j], "component": L.basis_names[i], "J^2": got, "expected": want}))

    columns = S.J.columns()
    witness = None
    for i in range(n):
        for j in range(i, n):
            lhs = bilinear(columns[i], S.g, columns[j])
            rhs = S.g[i, j] - S.alpha[i] * S.alpha[j]
            if lhs != rhs:
                witness = {"pair": _names(L, i, j), "g(JX,JY)": lhs, "g(X,Y)-α(X)α(Y)": rhs}
                break
        if witness:
            break
    stages.append(failed("metric compatibility", witness) if witness else passed("metric compatibility"))

    if is_positive_definite(S.g):
        stages.append(passed("g positive definite"))
    else:
        stages.append(failed("g positive definite", {"g": S.g.to_rows()}))
    return stages


def verify_almost_contact(L: LieAlgebra, S: StructureData) -> Report:
    """``alpha(xi) = 1``, ``J^2 = -Id + alpha (x) xi``, ``g(JX,JY) = g(X,Y) - alpha(X)alpha(Y)``, ``g > 0``."""
    _check_dims(L, S)
    report = Report(subject=f"almost contact metric structure on {L.name or L.dim}")
    for stage in _almost_contact_stages(L, S):
        report.add(stage)
    return report


# ---------------------------------------------------------------------- Nijenhuis tensors

def nijenhuis(L: LieAlgebra, S: StructureData, x: Sequence, y: Sequence) -> Vector:
    """Contact convention ``[JX,JY] - J[JX,Y] - J[X,JY] + J^2[X,Y]``."""
    J = S.J
    jx, jy = J.apply(x), J.apply(y)
    out = L.bracket(jx, jy)
    out = vec_sub(out, J.apply(L.bracket(jx, y)))
    out = vec_sub(out, J.apply(L.bracket(x, jy)))
    return vec_add(out, J.apply(J.apply(L.bracket(x, y))))


def nijenhuis_complex(L: LieAlgebra, J: Matrix, x: Sequence, y: Sequence) -> Vector:
    """Complex convention ``[JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]``."""
    jx, jy = J.apply(x), J.apply(y)
    out = L.bracket(jx, jy)
    out = vec_sub(out, J.apply(L.bracket(jx, y)))
    out = vec_sub(out, J.apply(L.bracket(x, jy)))
    return vec_sub(out, L.bracket(x, y))


def nijenhuis_operator(L: LieAlgebra, J: Matrix, x: Sequence, contact: bool = True) -> Matrix:
    """
    ``Y -> N_J(X, Y)`` assembled from ``ad`` matrices:
    ``ad_{JX} J - J ad_{JX} - J ad_X J + J^2 ad_X`` (contact) or ``- ad_X`` (complex).
    """
    ad_jx, ad_x = L.ad(J.apply(x)), L.ad(x)
    out = ad_jx @ J - J @ ad_jx - J @ ad_x @ J
    return out + (J @ J @ ad_x if contact else -ad_x)


def d_alpha(L: LieAlgebra, alpha: Sequence, x: Sequence, y: Sequence) -> Number:
    """``d alpha(X, Y) = -alpha([X, Y])``."""
    return -dot(alpha, L.bracket(x, y))


def verify_normal(L: LieAlgebra, S: StructureData) -> Report:
    """``N_J(X,Y) = 2 d alpha(X,Y) xi`` on all basis pairs."""
    _check_dims(L, S)
    report = Report(subject=f"normality on {L.name or L.dim}")
    report.add(_normal_stage(L, S))
    return report


def _normal_stage(L: LieAlgebra, S: StructureData) -> Stage:
    for i, j in combinations(range(L.dim), 2):
        x, y = L.vector(i), L.vector(j)
        lhs = nijenhuis(L, S, x, y)
        rhs = vec_scale(2 * d_alpha(L, S.alpha, x, y), S.xi)
        if lhs != rhs:
            return failed("normal", {"pair": _names(L, i, j), "N_J": lhs, "2dα(X,Y)ξ": rhs})
    return passed("normal")


# ---------------------------------------------------------------------- forms

def two_form_from_matrix(W: Matrix) -> KForm:
    """The 2-form with ``omega(e_i, e_j) = W[i][j]``, read from the upper triangle."""
    n = W.rows
    return KForm(n, 2, {(i, j): W[i, j] for i, j in combinations(range(n), 2)})


def fundamental_form(L: LieAlgebra, S: StructureData) -> KForm:
    """``omega(X, Y) = g(JX, Y)``; its matrix is ``J^T g``."""
    _check_dims(L, S)
    return two_form_from_matrix(S.J.transpose() @ S.g)


def top_coefficient(alpha: Sequence, omega: KForm) -> Number:
    """Coefficient of ``alpha ^ omega^n`` on the top monomial."""
    n = (omega.dim - 1) // 2
    form = KForm.covector(alpha)
    for _ in range(n):
        form = form.wedge(omega)
    return form.coefficients.get(tuple(range(omega.dim)), ZERO) if form.degree == omega.dim else ZERO


def _closed_stage(L: LieAlgebra, name: str, phi: KForm) -> Stage:
    image = ce_differential(L, phi)
    if image.is_zero():
        return passed(name)
    idx, value = next(iter(sorted(image.coefficients.items())))
    return failed(name, {"basis": _names(L, *idx), "value": value})


def verify_cosymplectic(L: LieAlgebra, S: StructureData) -> Report:
    """
    Full chain: almost contact metric, ``d alpha = 0``, normal,
    ``d omega = 0`` and ``alpha ^ omega^n != 0``.

    The first failing stage names the condition; every stage is evaluated.
    """
    _check_dims(L, S)
    report = Report(subject=f"cosymplectic structure on {L.name or L.dim}")
    for stage in _almost_contact_stages(L, S):
        report.add(stage)

    witness = None
    for i, j in combinations(range(L.dim), 2):
        value = d_alpha(L, S.alpha, L.vector(i), L.vector(j))
        if value:
            witness = {"pair": _names(L, i, j), "dα(X,Y)": value}
            break
    report.add(failed("dα = 0", witness) if witness else passed("dα = 0"))
    report.add(_normal_stage(L, S))

    omega = fundamental_form(L, S)
    report.add(_closed_stage(L, "dω = 0", omega))

    top = top_coefficient(S.alpha, omega) if L.dim % 2 == 1 else ZERO
    report.add(passed("α∧ωⁿ ≠ 0") if top else failed("α∧ωⁿ ≠ 0", {"coefficient": top}))
    report.data["omega"] = omega.to_dict()
    report.data["top_coefficient"] = top
    logger.debug("cosymplectic check on %s: %s", L.name or L.dim, report.verdict.value)
    return report


def kahler_form(J: Matrix, g: Matrix) -> KForm:
    return two_form_from_matrix(J.transpose() @ g)


def verify_kahler(L: LieAlgebra, J: Matrix, g: Matrix) -> Report:
    """
    ``J^2 = -Id``, complex Nijenhuis tensor zero, ``g(JX,JY) = g(X,Y)``,
    ``g > 0`` and ``d omega = 0``. Odd dimensions are rejected.
    """
    subject = f"Kähler structure on {L.name or L.dim}"
    if L.dim % 2:
        return Report.rejected(subject, "Kähler structures need even dimension", {"dim": L.dim})
    if J.shape != (L.dim, L.dim) or g.shape != (L.dim, L.dim):
        raise DimensionMismatchError(f"J and g must be {L.dim}x{L.dim}")
    report = Report(subject=subject)
    n = L.dim

    diff = (J @ J).first_difference(Matrix.identity(n).scale(-1))
    if diff is None:
        report.add(passed("J² = -Id"))
    else:
        i, j, got, want = diff
        report.add(failed("J² = -Id", {"image_of": L.basis_names[j], "component": L.basis_names[i], "J^2": got, "expected": want}))

    witness = None
    for i, j in combinations(range(n), 2):
        value = nijenhuis_complex(L, J, L.vector(i), L.vector(j))
        if not is_zero_vector(value):
            witness = {"pair": _names(L, i, j), "N_J": value}
            break
    report.add(failed("N_J = 0", witness) if witness else passed("N_J = 0"))

    columns = J.columns()
    witness = None
    for i in range(n):
        for j in range(i, n):
            lhs = bilinear(columns[i], g, columns[j])
            if lhs != g[i, j]:
                witness = {"pair": _names(L, i, j), "g(JX,JY)": lhs, "g(X,Y)": g[i, j]}
                break
        if witness:
            break
    report.add(failed("compatibility", witness) if witness else passed("compatibility"))
    report.add(passed("g positive definite") if is_positive_definite(g) else failed("g positive definite", {"g": g.to_rows()}))
    report.add(_closed_stage(L, "dω = 0", kahler_form(J, g)))
    return report


def first_failure(report: Report) -> Optional[Dict[str, Any]]:
    """Name and witness of the first failing stage, for precondition messages."""
    stage = report.failed_stage
    if stage is None:
        return None
    return {"stage": stage.name, "witness": stage.witness}
