"""
Foliated bigrading of the invariant complex of an almost contact metric
Lie algebra and the Kähler identities on its leaf.

Forms are graded by their alpha-degree ``u`` and leaf degree ``v``; the
leaf part is refined by J-type ``(r, s)``. All operators are assembled in
an adapted complex coframe: a Hermitian-orthogonal basis of
(1,0)-covectors, their conjugates, and alpha. In that frame every
component operator is a mask on the type of monomials.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

from ..errors import InvariantBreach, PreconditionError
from ..exact.matrix import (
    Matrix,
    Vector,
    basis_vector,
    compound,
    dot,
    hermitian,
    in_span,
    inverse,
    restricted_kernel,
    rref_kernel,
    span_basis,
    vec_scale,
    vec_sub,
)
from ..exact.scalars import ZERO, ComplexScalar, I, conj
from ..lie.algebra import LieAlgebra
from ..report import Report, failed, passed
from .ce_complex import build_ce_operators, ce_operator
from .exterior import Index, KForm, contraction_operator, derivation_extension, monomials
from .operators import GradedOperator

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int, int]
HALF = ComplexScalar.lift(1) / 2


class AdjointConvention(str, Enum):
    """How leafwise codifferentials are formed."""
    GRAM = "gram"
    RIEMANNIAN = "riemannian"


# ---------------------------------------------------------------------- adapted frame

@dataclass(frozen=True)
class AdaptedFrame:
    """
    Complex coframe ``u_1..u_m, conj(u_1)..conj(u_m), alpha``.

    ``forward[k]`` maps frame coordinates of k-forms to standard
    coordinates, ``backward[k]`` is its inverse, and ``grams[k]`` is the
    Hermitian Gram matrix of frame monomials.
    """
    dim: int
    m: int
    coframe: Matrix
    forward: Tuple[Matrix, ...]
    backward: Tuple[Matrix, ...]
    grams: Tuple[Matrix, ...]
    grams_inv: Tuple[Matrix, ...]

    def type_of(self, idx: Index) -> Bidegree:
        u = sum(1 for i in idx if i == 2 * self.m)
        r = sum(1 for i in idx if i < self.m)
        return (u, r, len(idx) - u - r)

    def monomials_of_type(self, k: int, bidegree: Bidegree) -> List[int]:
        return [pos for pos, idx in enumerate(monomials(self.dim, k)) if self.type_of(idx) == bidegree]

    def type_basis(self, k: int, keep) -> List[Vector]:
        """Frame coordinate vectors of the degree-k monomials whose type satisfies ``keep``."""
        size = len(monomials(self.dim, k))
        return [
            basis_vector(size, pos)
            for pos, idx in enumerate(monomials(self.dim, k))
            if keep(self.type_of(idx))
        ]

    def to_frame(self, op: GradedOperator) -> GradedOperator:
        return op.conjugate_by(self.forward, self.backward)

    def select(self, op: GradedOperator, keep) -> GradedOperator:
        """Entries whose (target type, source type) satisfy ``keep``."""
        return op.select(lambda t, s: keep(self.type_of(t), self.type_of(s)))


def _require_leaf_complex(S) -> None:
    if dot(S.alpha, S.xi) != 1:
        raise PreconditionError("alpha(xi) must be 1")
    n = S.J.rows
    square = S.J @ S.J
    expected = Matrix.identity(n).scale(-1) + Matrix.outer(S.xi, S.alpha)
    if square != expected:
        raise PreconditionError("J restricted to ker alpha does not square to -Id")


@lru_cache(maxsize=64)
def adapted_frame(S) -> AdaptedFrame:
    """
    Build the adapted coframe of a structure ``S`` (``J``, ``xi``, ``alpha``, ``g``).

    (1,0)-covectors satisfy ``theta o J = i theta``; candidates
    ``(h - i J^T h) / 2`` over leaf covectors ``h`` are orthogonalized
    for the Hermitian product ``a^H g^-1 b``.

    Raises:
        PreconditionError: ``alpha(xi) != 1`` or ``J|ker alpha`` is not a complex structure
    """
    _require_leaf_complex(S)
    n = S.J.rows
    leaf_covectors = rref_kernel(Matrix.from_rows([S.xi]))
    jt = S.J.transpose()
    candidates = [
        tuple(HALF * (a - I * b) for a, b in zip(h, jt.apply(h)))
        for h in leaf_covectors
    ]
    span = span_basis(candidates)
    m = (n - 1) // 2
    if 2 * m + 1 != n or len(span) != m:
        raise PreconditionError("leaf does not split into (1,0) and (0,1) parts of equal dimension")

    g_inv = inverse(S.g)
    holomorphic: List[Vector] = []
    for w in span:
        u = w
        for prev in holomorphic:
            coeff = hermitian(prev, g_inv, w) / hermitian(prev, g_inv, prev)
            u = vec_sub(u, vec_scale(coeff, prev))
        holomorphic.append(u)

    conjugates = [tuple(conj(x) for x in u) for u in holomorphic]
    coframe = Matrix.from_columns(holomorphic + conjugates + [tuple(S.alpha)])
    coframe_inv = inverse(coframe)
    base_gram = coframe.conjugate_transpose() @ g_inv @ coframe
    base_gram_inv = inverse(base_gram)
    frame = AdaptedFrame(
        dim=n,
        m=m,
        coframe=coframe,
        forward=tuple(compound(coframe, k) for k in range(n + 1)),
        backward=tuple(compound(coframe_inv, k) for k in range(n + 1)),
        grams=tuple(compound(base_gram, k) for k in range(n + 1)),
        grams_inv=tuple(compound(base_gram_inv, k) for k in range(n + 1)),
    )
    logger.debug("adapted frame of rank %d built", m)
    return frame


# ---------------------------------------------------------------------- bigrading

@dataclass(frozen=True)
class BigradedForm:
    """Type components ``(u, r, s)`` of a form, each in standard coordinates."""
    dim: int
    degree: int
    components: Dict[Bidegree, KForm]

    def uv(self) -> Dict[Tuple[int, int], KForm]:
        out: Dict[Tuple[int, int], KForm] = {}
        for (u, r, s), phi in self.components.items():
            key = (u, r + s)
            out[key] = out[key] + phi if key in out else phi
        return out

    def reconstruct(self) -> KForm:
        total = KForm.zero(self.dim, self.degree)
        for phi in self.components.values():
            total = total + phi
        return total

    def types(self) -> List[Bidegree]:
        return sorted(self.components)

    def to_dict(self) -> Dict[str, Any]:
        return {f"({u},{r},{s})": phi.to_dict() for (u, r, s), phi in sorted(self.components.items())}


def bigrade(S, phi: KForm) -> BigradedForm:
    """
    Split ``phi`` into its ``(u, r, s)`` components; they sum back to ``phi``.

    Raises:
        PreconditionError: ``alpha(xi) != 1`` or ``J|ker alpha`` squares to something other than ``-Id``
    """
    frame = adapted_frame(S)
    k = phi.degree
    coords = frame.backward[k].apply(phi.to_vector())
    parts: Dict[Bidegree, List] = {}
    for pos, idx in enumerate(monomials(frame.dim, k)):
        if coords[pos]:
            part = parts.setdefault(frame.type_of(idx), [ZERO] * len(coords))
            part[pos] = coords[pos]
    components = {
        bidegree: KForm.from_vector(frame.dim, k, frame.forward[k].apply(part))
        for bidegree, part in parts.items()
    }
    return BigradedForm(frame.dim, k, components)


# ---------------------------------------------------------------------- component operators

@dataclass(frozen=True)
class FoliatedOperators:
    """
    Component operators in the adapted frame.

    ``delta_perp`` is the Gram adjoint of ``d_10``; the leafwise adjoints
    ``delta_F``, ``theta`` (lowers ``s``) and ``theta_bar`` (lowers ``r``)
    follow ``convention``.
    """
    frame: AdaptedFrame
    convention: AdjointConvention
    d_10: GradedOperator
    d_01: GradedOperator
    partial: GradedOperator
    partial_bar: GradedOperator
    type_residual: GradedOperator
    delta_perp: GradedOperator
    delta_F: GradedOperator
    theta: GradedOperator
    theta_bar: GradedOperator
    laplacian_F: GradedOperator
    box: GradedOperator
    box_bar: GradedOperator
    laplacian_perp: GradedOperator

    def ladder(self) -> Dict[str, bool]:
        """The relations packed in ``d^2 = 0`` and, for integrable J, ``d_F^2 = 0``."""
        return {
            "d_01^2 = 0": (self.d_01 @ self.d_01).is_zero(),
            "d_01 d_10 + d_10 d_01 = 0": self.d_01.anticommutator(self.d_10).is_zero(),
            "d_10^2 = 0": (self.d_10 @ self.d_10).is_zero(),
            "∂̄^2 = 0": (self.partial_bar @ self.partial_bar).is_zero(),
            "∂∂̄ + ∂̄∂ = 0": self.partial.anticommutator(self.partial_bar).is_zero(),
        }

    def leaf_columns(self, k: int) -> List[int]:
        """Positions of the ``u = 0`` frame monomials of degree ``k``."""
        return [pos for pos, idx in enumerate(monomials(self.frame.dim, k)) if self.frame.type_of(idx)[0] == 0]


def riemannian_leaf_codifferential(L: LieAlgebra, S) -> GradedOperator:
    """
    ``delta_F = -sum h^{ab} iota_{f_a} nabla_{f_b}`` over a basis ``f_a`` of
    ``ker alpha`` with ``h`` the restricted metric, in standard coordinates.
    """
    from ..geometry.curvature import levi_civita

    connection = levi_civita(L, S.g)
    leaf = rref_kernel(Matrix.from_rows([S.alpha]))
    h = Matrix.from_rows([[dot(fa, S.g.apply(fb)) for fb in leaf] for fa in leaf])
    h_inv = inverse(h)
    # nabla on covectors is minus the transpose of nabla on vectors
    covector_derivatives = [connection.operator(fb).transpose().scale(-1) for fb in leaf]

    def build(k: int) -> Matrix:
        total = Matrix.zeros(len(monomials(L.dim, k - 1)), len(monomials(L.dim, k)))
        for a, fa in enumerate(leaf):
            iota = contraction_operator(fa, k)
            for b in range(len(leaf)):
                if h_inv[a, b]:
                    total = total - (iota @ derivation_extension(covector_derivatives[b], k)).scale(h_inv[a, b])
        return total

    return GradedOperator.per_degree(L.dim, -1, build)


def _lowering(frame: AdaptedFrame, op: GradedOperator, which: int) -> GradedOperator:
    """Part of a degree -1 operator that keeps ``u`` and lowers type slot ``which`` (1 = r, 2 = s)."""
    other = 3 - which
    return frame.select(
        op,
        lambda t, s: t[0] == s[0] and t[which] == s[which] - 1 and t[other] == s[other],
    )


def d_alpha_witness(L: LieAlgebra, alpha: Sequence):
    alpha_form = KForm.covector(alpha)
    image = ce_operator(L).apply(1, alpha_form.to_vector())
    image_form = KForm.from_vector(L.dim, 2, image)
    if image_form.is_zero():
        return None
    (i, j), value = sorted(image_form.coefficients.items())[0]
    return {"pair": [L.basis_names[i], L.basis_names[j]], "dα": value}


@lru_cache(maxsize=64)
def component_operators(L: LieAlgebra, S, convention: AdjointConvention = AdjointConvention.GRAM) -> FoliatedOperators:
    """
    Raises:
        PreconditionError: ``d alpha != 0`` (witness pair in the message) or the frame cannot be built
        InvariantBreach: ``d`` lowers the alpha-degree although ``alpha`` is closed
    """
    witness = d_alpha_witness(L, S.alpha)
    if witness is not None:
        report = Report(subject="foliated operators")
        report.add(failed("dα = 0", witness))
        raise PreconditionError(f"component operators need a closed alpha: dα({witness['pair'][0]}, {witness['pair'][1]}) = {witness['dα']}", report=report)

    frame = adapted_frame(S)
    d = frame.to_frame(ce_operator(L))
    lowering = frame.select(d, lambda t, s: t[0] < s[0])
    if not lowering.is_zero():
        raise InvariantBreach("d has a component lowering the alpha-degree although alpha is closed")

    d_10 = frame.select(d, lambda t, s: t[0] == s[0] + 1)
    d_01 = frame.select(d, lambda t, s: t[0] == s[0])
    partial = frame.select(d, lambda t, s: t[0] == s[0] and t[1] == s[1] + 1 and t[2] == s[2])
    partial_bar = frame.select(d, lambda t, s: t[0] == s[0] and t[2] == s[2] + 1 and t[1] == s[1])
    type_residual = d_01 - partial - partial_bar

    grams, grams_inv = frame.grams, frame.grams_inv
    delta_perp = d_10.adjoint(grams, grams_inv)
    if convention == AdjointConvention.GRAM:
        delta_F = d_01.adjoint(grams, grams_inv)
        theta = partial_bar.adjoint(grams, grams_inv)
        theta_bar = partial.adjoint(grams, grams_inv)
    else:
        delta_F = frame.to_frame(riemannian_leaf_codifferential(L, S))
        theta = _lowering(frame, delta_F, 2)
        theta_bar = _lowering(frame, delta_F, 1)

    ops = FoliatedOperators(
        frame=frame,
        convention=convention,
        d_10=d_10,
        d_01=d_01,
        partial=partial,
        partial_bar=partial_bar,
        type_residual=type_residual,
        delta_perp=delta_perp,
        delta_F=delta_F,
        theta=theta,
        theta_bar=theta_bar,
        laplacian_F=d_01.anticommutator(delta_F),
        box=partial.anticommutator(theta_bar),
        box_bar=partial_bar.anticommutator(theta),
        laplacian_perp=d_10.anticommutator(delta_perp),
    )
    logger.debug("foliated operators of %s assembled (%s)", L.name or L.dim, convention.value)
    return ops


# ---------------------------------------------------------------------- Kähler identities

def _leaf_bidegrees(frame: AdaptedFrame, k: int) -> List[Tuple[int, int]]:
    return sorted({frame.type_of(idx)[1:] for idx in monomials(frame.dim, k) if frame.type_of(idx)[0] == 0})


def _identity_witness(ops: FoliatedOperators, k: int, columns: Sequence[int]):
    lhs = ops.laplacian_F.block(k)
    for name, other in (("2□", ops.box.block(k).scale(2)), ("2□̄", ops.box_bar.block(k).scale(2))):
        for j in columns:
            for i in range(lhs.rows):
                if lhs[i, j] != other[i, j]:
                    return {"operator": name, "entry": [i, j], "Δ_F": lhs[i, j], name: other[i, j]}
    return None


def _require_cosymplectic(L: LieAlgebra, S, what: str) -> Report:
    from ..geometry.structures import verify_cosymplectic

    check = verify_cosymplectic(L, S)
    if not check.passed:
        stage = check.failed_stage
        raise PreconditionError(f"{what} needs a cosymplectic structure; stage '{stage.name}' fails", report=check)
    return check


def _identities_hold(ops: FoliatedOperators) -> bool:
    for k in range(ops.frame.dim + 1):
        if _identity_witness(ops, k, ops.leaf_columns(k)) is not None:
            return False
    return True


def check_kahler_identities(L: LieAlgebra, S) -> Report:
    """
    ``Delta_F = 2 box_F = 2 box-bar_F`` on every bidegree ``(0, r, s)``,
    with Riemannian leaf codifferentials. Non-cosymplectic input is rejected.
    """
    subject = f"Kähler identities on {L.name or L.dim}"
    try:
        _require_cosymplectic(L, S, "the Kähler identities")
    except PreconditionError as exc:
        return Report.rejected(subject, str(exc), {"stage": exc.report.failed_stage.name, "witness": exc.report.failed_stage.witness})

    ops = component_operators(L, S, AdjointConvention.RIEMANNIAN)
    frame = ops.frame
    report = Report(subject=subject)
    table: Dict[str, int] = {}
    for k in range(L.dim + 1):
        for r, s in _leaf_bidegrees(frame, k):
            columns = frame.monomials_of_type(k, (0, r, s))
            table[f"(0,{r},{s})"] = len(columns)
            witness = _identity_witness(ops, k, columns)
            name = f"bidegree (0,{r},{s})"
            report.add(failed(name, witness) if witness else passed(name))
    report.data["bidegree_dimensions"] = table
    report.data["convention"] = AdjointConvention.RIEMANNIAN.value
    report.data["gram_identities_hold"] = _identities_hold(component_operators(L, S, AdjointConvention.GRAM))
    return report


def hbar_groups(L: LieAlgebra, S, v: int) -> Dict[Tuple[int, int], int]:
    """
    ``dim ker box-bar_F`` on each ``Omega^{0,r,s}`` with ``r + s = v``.

    Raises:
        PreconditionError: ``S`` is not cosymplectic
        InvariantBreach: the dimensions do not add up to ``dim ker Delta_F`` on ``Omega^{0,v}``
    """
    _require_cosymplectic(L, S, "the leafwise Dolbeault groups")
    ops = component_operators(L, S, AdjointConvention.RIEMANNIAN)
    frame = ops.frame
    dims = {}
    for r in range(v + 1):
        s = v - r
        basis = frame.type_basis(v, lambda t, r=r, s=s: t == (0, r, s))
        if basis:
            dims[(r, s)] = len(restricted_kernel(ops.box_bar.block(v), basis))
    leaf = frame.type_basis(v, lambda t: t[0] == 0)
    total = len(restricted_kernel(ops.laplacian_F.block(v), leaf))
    if sum(dims.values()) != total:
        raise InvariantBreach(f"Dolbeault dimensions {dims} do not add up to dim ker Δ_F = {total}")
    return dims


def _same_span(a: List[Vector], b: List[Vector]) -> bool:
    return len(a) == len(b) and all(in_span(v, b) for v in a)


def check_harmonic_identification(L: LieAlgebra, S, v: int) -> Report:
    """
    ``ker Delta`` on ``Omega^{0,v}`` equals ``ker Delta_F`` and ``ker d_10``
    on ``Omega^{0,v}``, with Gram adjoints.
    """
    subject = f"harmonic identification in leaf degree {v} on {L.name or L.dim}"
    try:
        ops = component_operators(L, S, AdjointConvention.GRAM)
    except PreconditionError as exc:
        return Report.rejected(subject, str(exc))
    frame = ops.frame
    full = frame.to_frame(build_ce_operators(L, S.g).laplacian)
    leaf = frame.type_basis(v, lambda t: t[0] == 0)
    left = restricted_kernel(full.block(v), leaf)
    right = restricted_kernel(ops.laplacian_F.block(v).vstack(ops.d_10.block(v)), leaf)
    report = Report(subject=subject, data={"ker Δ": len(left), "ker Δ_F ∩ ker d_10": len(right)})
    name = "ker Δ ∩ Ω^{0,v} = ker Δ_F ∩ ker d_10 ∩ Ω^{0,v}"
    report.add(passed(name) if _same_span(left, right) else failed(name, {"ker Δ": len(left), "ker Δ_F ∩ ker d_10": len(right)}))
    return report


__all__ = [
    "AdjointConvention",
    "AdaptedFrame",
    "BigradedForm",
    "FoliatedOperators",
    "adapted_frame",
    "bigrade",
    "component_operators",
    "check_kahler_identities",
    "hbar_groups",
    "check_harmonic_identification",
]
