"""
Deformations ``J_t`` of a cosymplectic structure: the auxiliary metric,
the operators ``E~_t`` and ``E_t`` on invariant forms, harmonic projection
onto ``ker E_t`` and the reconstruction of ``(omega_t, g_t)``.

Each call analyzes one rational ``t``. ``largest_stable_parameter``
bisects for the largest tested ``t`` at which the reconstruction still
produces a cosymplectic structure.
"""

import concurrent.futures
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..config import settings
from ..errors import DimensionMismatchError, InvariantBreach, PreconditionError
from ..exact.matrix import (
    Matrix,
    column_space,
    gram_projection,
    in_span,
    is_positive_definite,
    restricted_kernel,
    span_basis,
)
from ..exact.scalars import ONE, ZERO, as_fraction, real_part
from ..forms.ce_complex import ce_differential
from ..forms.exterior import KForm
from ..forms.foliated import AdjointConvention, FoliatedOperators, component_operators
from ..forms.operators import GradedOperator
from ..lie.algebra import LieAlgebra
from ..report import Report, failed, passed
from .structures import (
    StructureData,
    first_failure,
    nijenhuis,
    top_coefficient,
    two_form_from_matrix,
    verify_cosymplectic,
)

logger = logging.getLogger(__name__)

DEGENERATE = "degenerate at this t"


# ---------------------------------------------------------------------- families

@dataclass(frozen=True)
class JtFamily:
    """``J_t = sum_k t^k coefficients[k]``."""
    coefficients: Tuple[Matrix, ...]

    @classmethod
    def fixed(cls, J: Matrix) -> "JtFamily":
        return cls((J,))

    def at(self, t) -> Matrix:
        t = as_fraction(t)
        out = Matrix.zeros(*self.coefficients[0].shape)
        power = ONE
        for m in self.coefficients:
            out = out + m.scale(power)
            power = power * t
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {"family": [m.to_rows() for m in self.coefficients]}


@dataclass(frozen=True)
class ConjugatedFamily:
    """
    ``J_t = R_t J R_t^-1`` for the rational rotation
    ``R_t = ((1 - t^2) I + 2t K) / (1 + t^2)`` in the plane ``(i, j)``.
    """
    J: Matrix
    plane: Tuple[int, int]

    def rotation(self, t) -> Matrix:
        t = as_fraction(t)
        n = self.J.rows
        i, j = self.plane
        c, s = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
        rows = Matrix.identity(n).to_rows()
        rows[i][i], rows[i][j], rows[j][i], rows[j][j] = c, -s, s, c
        return Matrix.from_rows(rows)

    def at(self, t) -> Matrix:
        r = self.rotation(t)
        return r @ self.J @ r.transpose()

    def to_dict(self) -> Dict[str, Any]:
        return {"conjugate": self.J.to_rows(), "plane": [self.plane[0] + 1, self.plane[1] + 1]}


# ---------------------------------------------------------------------- deformed structures

@dataclass(frozen=True)
class DeformedStructure:
    """A cosymplectic base ``(L, S)`` and ``J_t`` at one rational ``t``."""
    algebra: LieAlgebra
    base: StructureData
    t: Fraction
    J_t: Matrix


def _deformation_stages(L: LieAlgebra, S: StructureData, J_t: Matrix) -> Report:
    n = L.dim
    report = Report(subject="deformation J_t")
    expected = Matrix.identity(n).scale(-1) + Matrix.outer(S.xi, S.alpha)
    diff = (J_t @ J_t).first_difference(expected)
    if diff is None:
        report.add(passed("J_t² = -Id + α⊗ξ"))
    else:
        i, j, got, want = diff
        report.add(failed("J_t² = -Id + α⊗ξ", {"image_of": L.basis_names[j], "component": L.basis_names[i], "J_t^2": got, "expected": want}))
    moved = S.with_J(J_t)
    witness = None
    for i, j in combinations(range(n), 2):
        value = nijenhuis(L, moved, L.vector(i), L.vector(j))
        if any(value):
            witness = {"pair": [L.basis_names[i], L.basis_names[j]], "N_J_t": value}
            break
    report.add(failed("N_J_t = 0", witness) if witness else passed("N_J_t = 0"))
    return report


def deform(L: LieAlgebra, S: StructureData, family, t) -> DeformedStructure:
    """
    Raises:
        PreconditionError: the base is not cosymplectic, ``J_0 != J``, or ``J_t``
            fails ``J_t^2 = -Id + alpha (x) xi`` or ``N_{J_t} = 0``
    """
    base = verify_cosymplectic(L, S)
    if not base.passed:
        failure = first_failure(base)
        raise PreconditionError(f"deformation base is not cosymplectic: stage '{failure['stage']}' fails", report=base)
    if family.at(0) != S.J:
        raise PreconditionError("the family does not start at J (J_0 != J)")
    t = as_fraction(t)
    J_t = family.at(t)
    if J_t.shape != S.J.shape:
        raise DimensionMismatchError(f"J_t must be {L.dim}x{L.dim}")
    check = _deformation_stages(L, S, J_t)
    if not check.passed:
        failure = first_failure(check)
        raise PreconditionError(f"J_t at t = {t} rejected: stage '{failure['stage']}' fails", report=check)
    return DeformedStructure(L, S, t, J_t)


def auxiliary_metric(D: DeformedStructure) -> Matrix:
    """
    ``g~_t = (g + g(J_t., J_t.)) / 2 + (alpha (x) alpha) / 2``.

    Raises:
        InvariantBreach: ``g~_t`` is not positive definite or not ``J_t``-compatible
    """
    g, J, alpha = D.base.g, D.J_t, D.base.alpha
    aa = Matrix.outer(alpha, alpha)
    metric = (g + J.transpose() @ g @ J + aa).scale(Fraction(1, 2))
    if not is_positive_definite(metric):
        raise InvariantBreach(f"auxiliary metric at t = {D.t} is not positive definite")
    diff = (J.transpose() @ metric @ J).first_difference(metric - aa)
    if diff is not None:
        i, j, got, want = diff
        raise InvariantBreach(f"auxiliary metric is not J_t-compatible at entry ({i}, {j}): {got} != {want}")
    return metric


def deformed_data(D: DeformedStructure) -> StructureData:
    return StructureData(D.J_t, D.base.xi, D.base.alpha, auxiliary_metric(D))


# ---------------------------------------------------------------------- operators

@dataclass(frozen=True)
class DeformationOperators:
    """
    ``E~_t`` and ``E_t`` with the component operators they are built from,
    all in the adapted frame of ``(J_t, g~_t)``.
    """
    deformation: DeformedStructure
    components: FoliatedOperators
    E_tilde: GradedOperator
    E: GradedOperator

    @property
    def frame(self):
        return self.components.frame

    def leaf_type_basis(self, k: int, r: Optional[int] = None, s: Optional[int] = None) -> List[tuple]:
        return self.frame.type_basis(
            k, lambda ty: ty[0] == 0 and (r is None or ty[1] == r) and (s is None or ty[2] == s)
        )

    def kernel(self, k: int, r: Optional[int] = None, s: Optional[int] = None) -> List[tuple]:
        return restricted_kernel(self.E.block(k), self.leaf_type_basis(k, r, s))

    def is_self_adjoint(self) -> bool:
        grams = self.frame.grams
        for k in range(self.frame.dim + 1):
            block = self.E.block(k)
            if grams[k] @ block != block.conjugate_transpose() @ grams[k]:
                return False
        return True


def assemble_E(D: DeformedStructure) -> DeformationOperators:
    """
    ``E~_t = dd~ th th~ + th th~ dd~ + th d th~ d~ + th~ d~ th d + th d~ + th~ d`` with
    ``d = partial_t``, ``d~ = partial-bar_t``, ``th = theta_t``, ``th~ = theta-bar_t``,
    and ``E_t = E~_t + delta_-1,0 d_1,0 delta_-1,0 d_1,0 + delta_-1,0 d_1,0``.

    Raises:
        InvariantBreach: ``E_t`` is not self-adjoint for the frame Gram product
    """
    ops = component_operators(D.algebra, deformed_data(D), AdjointConvention.GRAM)
    p, pb, th, thb = ops.partial, ops.partial_bar, ops.theta, ops.theta_bar
    e_tilde = (
        p @ pb @ th @ thb
        + th @ thb @ p @ pb
        + th @ p @ thb @ pb
        + thb @ pb @ th @ p
        + th @ pb
        + thb @ p
    )
    perp = ops.delta_perp @ ops.d_10
    e = e_tilde + perp @ perp + perp
    result = DeformationOperators(D, ops, e_tilde, e)
    if not result.is_self_adjoint():
        raise InvariantBreach(f"E_t is not self-adjoint at t = {D.t}")
    logger.debug("assembled E_t on %s at t = %s", D.algebra.name or D.algebra.dim, D.t)
    return result


def _same_span(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and all(in_span(v, b) for v in a)


def characterized_kernel(ops: DeformationOperators, k: int, r: Optional[int] = None, s: Optional[int] = None) -> List[tuple]:
    """``{theta theta-bar phi = partial phi = partial-bar phi = d_1,0 phi = 0}``."""
    c = ops.components
    stacked = (c.theta @ c.theta_bar).block(k)
    for op in (c.partial, c.partial_bar, c.d_10):
        stacked = stacked.vstack(op.block(k))
    return restricted_kernel(stacked, ops.leaf_type_basis(k, r, s))


def check_kernel_characterization(ops: DeformationOperators, k: int = 2) -> Report:
    """``ker E_t`` and the four-condition space agree on every leaf type of degree ``k``."""
    D = ops.deformation
    report = Report(subject=f"kernel characterization at t = {D.t}")
    for r in range(k + 1):
        s = k - r
        if not ops.leaf_type_basis(k, r, s):
            continue
        left, right = ops.kernel(k, r, s), characterized_kernel(ops, k, r, s)
        name = f"type (0,{r},{s})"
        if _same_span(left, right):
            report.add(passed(name))
        else:
            report.add(failed(name, {"ker E_t": len(left), "conditions": len(right)}))
    return report


def check_e0_identity(ops: DeformationOperators) -> Report:
    """``E~_0 = box box + theta partial-bar + theta-bar partial`` on ``(0,1,1)``-forms."""
    c = ops.components
    rhs = c.box @ c.box + c.theta @ c.partial_bar + c.theta_bar @ c.partial
    columns = ops.frame.monomials_of_type(2, (0, 1, 1))
    lhs_block, rhs_block = ops.E_tilde.block(2), rhs.block(2)
    report = Report(subject=f"E~ identity at t = {ops.deformation.t}")
    witness = None
    for j in columns:
        for i in range(lhs_block.rows):
            if lhs_block[i, j] != rhs_block[i, j]:
                witness = {"entry": [i, j], "E~": lhs_block[i, j], "□□ + ϑ∂̄ + ϑ̄∂": rhs_block[i, j]}
                break
        if witness:
            break
    name = "E~_0 = □□ + ϑ∂̄ + ϑ̄∂ on (0,1,1)"
    report.add(failed(name, witness) if witness else passed(name))
    return report


def kernel_dimensions(ops: DeformationOperators) -> Dict[str, Any]:
    """
    ``dim ker E_t`` on each ``(0, r, s)`` with ``r + s = 2``, plus the
    dimension count of ``Z^{1,1} = (partial partial-bar Omega^0 cap ker d_1,0) + F^{1,1}``.

    Raises:
        InvariantBreach: the two summands intersect or do not fill ``Z^{1,1}``
    """
    c = ops.components
    dims = {f"({r},{2 - r})": len(ops.kernel(2, r, 2 - r)) for r in range(3) if ops.leaf_type_basis(2, r, 2 - r)}

    closed = restricted_kernel(
        c.partial.block(2).vstack(c.partial_bar.block(2)).vstack(c.d_10.block(2)),
        ops.leaf_type_basis(2, 1, 1),
    )
    exact = restricted_kernel(c.d_10.block(2), column_space((c.partial @ c.partial_bar).block(0)))
    harmonic = ops.kernel(2, 1, 1)
    combined = span_basis(exact + harmonic)
    if len(combined) != len(exact) + len(harmonic) or not _same_span(combined, closed):
        raise InvariantBreach(
            f"Z^(1,1) does not split: dim Z = {len(closed)}, exact {len(exact)}, harmonic {len(harmonic)}"
        )
    return {"kernel": dims, "Z^(1,1)": len(closed), "exact part": len(exact), "F^(1,1)": len(harmonic)}


# ---------------------------------------------------------------------- stabilization

@dataclass(frozen=True)
class StabilizationResult:
    omega: KForm
    metric: Matrix
    structure: StructureData
    report: Report

    @property
    def passed(self) -> bool:
        return self.report.passed


def _full_matrix(omega: KForm) -> Matrix:
    n = omega.dim
    rows = [[ZERO] * n for _ in range(n)]
    for (i, j), value in omega.coefficients.items():
        rows[i][j], rows[j][i] = value, -value
    return Matrix.from_rows(rows)


def stabilize(D: DeformedStructure, ops: Optional[DeformationOperators] = None) -> StabilizationResult:
    """
    ``omega_t = Re F_t(omega~_t)`` with ``F_t`` the Gram projection onto
    ``ker E_t`` in degree two and ``g_t(X, Y) = omega_t(X, J_t Y) + alpha(X) alpha(Y)``.

    A degenerate ``omega_t`` or an indefinite ``g_t`` is a failing report,
    not an error.

    Raises:
        InvariantBreach: ``omega_t`` is not closed
    """
    ops = ops or assemble_E(D)
    L, frame = D.algebra, ops.frame
    metric = auxiliary_metric(D)
    omega_tilde = two_form_from_matrix(D.J_t.transpose() @ metric)

    coords = frame.backward[2].apply(omega_tilde.to_vector())
    projected = gram_projection(ops.kernel(2), frame.grams[2], coords)
    standard = frame.forward[2].apply(projected)
    omega = KForm.from_vector(L.dim, 2, tuple(real_part(x) for x in standard))

    report = Report(subject=f"stabilization of {L.name or L.dim} at t = {D.t}")

    closed = ce_differential(L, omega)
    if not closed.is_zero():
        raise InvariantBreach(f"omega_t is not closed at t = {D.t}")
    report.add(passed("dω_t = 0"))

    W = _full_matrix(omega)
    diff = (D.J_t.transpose() @ W @ D.J_t).first_difference(W)
    if diff is None:
        report.add(passed("ω_t J_t-invariant"))
    else:
        i, j, got, want = diff
        report.add(failed("ω_t J_t-invariant", {"pair": [L.basis_names[i], L.basis_names[j]], "ω_t(J_tX,J_tY)": got, "ω_t(X,Y)": want}))

    top = top_coefficient(D.base.alpha, omega)
    report.add(passed("α∧ω_tⁿ ≠ 0") if top else failed("α∧ω_tⁿ ≠ 0", {"coefficient": top}, DEGENERATE))

    g_t = W @ D.J_t + Matrix.outer(D.base.alpha, D.base.alpha)
    if is_positive_definite(g_t):
        report.add(passed("g_t positive definite"))
    else:
        report.add(failed("g_t positive definite", {"g_t": g_t.to_rows()}, DEGENERATE))

    structure = StructureData(D.J_t, D.base.xi, D.base.alpha, g_t)
    if report.passed:
        report.extend(verify_cosymplectic(L, structure), prefix="cosymplectic: ")
    report.data.update({
        "t": D.t,
        "omega_t": omega.to_dict(),
        "g_t": g_t.to_rows(),
        "auxiliary_metric": metric.to_rows(),
    })
    logger.debug("stabilization at t = %s: %s", D.t, report.verdict.value)
    return StabilizationResult(omega, g_t, structure, report)


def evaluate(L: LieAlgebra, S: StructureData, family, t) -> Report:
    """Full per-t run; a rejected ``J_t`` gives a rejected report."""
    try:
        D = deform(L, S, family, t)
    except PreconditionError as exc:
        return Report.rejected(f"deformation at t = {as_fraction(t)}", str(exc))
    ops = assemble_E(D)
    result = stabilize(D, ops)
    report = result.report
    report.data["kernel_dimensions"] = kernel_dimensions(ops)
    report.data["kernel_characterization"] = check_kernel_characterization(ops).verdict.value
    return report


def evaluate_family(L: LieAlgebra, S: StructureData, family, ts: Sequence, workers: Optional[int] = None) -> List[Report]:
    """Reports for every ``t`` in order; ``workers > 1`` fans out over processes."""
    workers = workers or settings.deform_workers
    run = partial(evaluate, L, S, family)
    if workers <= 1 or len(ts) <= 1:
        return [run(t) for t in ts]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run, ts, chunksize=1))


def largest_stable_parameter(L: LieAlgebra, S: StructureData, family, t_max, steps: Optional[int] = None) -> Tuple[Fraction, List[Dict[str, Any]]]:
    """
    Bisection on ``[0, t_max]`` for the largest tested ``t`` at which the
    stabilization passes; returns it with the trail of tested values.
    """
    steps = settings.bisection_steps if steps is None else steps
    trail: List[Dict[str, Any]] = []

    def stable(t: Fraction) -> bool:
        verdict = evaluate(L, S, family, t).passed
        trail.append({"t": t, "passed": verdict})
        return verdict

    lo, hi = Fraction(0), as_fraction(t_max)
    if not stable(lo):
        raise PreconditionError("the stabilization fails at t = 0")
    if stable(hi):
        return hi, trail
    for _ in range(steps):
        mid = (lo + hi) / 2
        if stable(mid):
            lo = mid
        else:
            hi = mid
    logger.info("largest stable parameter found: %s after %d steps", lo, steps)
    return lo, trail


__all__ = [
    "JtFamily",
    "ConjugatedFamily",
    "DeformedStructure",
    "DeformationOperators",
    "StabilizationResult",
    "deform",
    "auxiliary_metric",
    "deformed_data",
    "assemble_E",
    "characterized_kernel",
    "check_kernel_characterization",
    "check_e0_identity",
    "kernel_dimensions",
    "stabilize",
    "evaluate",
    "evaluate_family",
    "largest_stable_parameter",
]
