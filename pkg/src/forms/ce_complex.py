"""
Chevalley-Eilenberg complex of a Lie algebra: differential, cohomology,
Gram inner products on forms, codifferential, Laplacian and the finite
Hodge decomposition.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DimensionMismatchError, InvariantBreach, PreconditionError
from ..exact.matrix import (
    Matrix,
    Vector,
    column_space,
    compound,
    gram_projection,
    hermitian,
    inverse,
    is_positive_definite,
    rank,
    rref_kernel,
)
from ..exact.scalars import ZERO, Number
from ..lie.algebra import LieAlgebra
from ..lie.classify import SolvabilityProof, classify
from ..report import Report, failed, passed
from .exterior import KForm, monomial_index, monomials, sort_with_sign
from .operators import GradedOperator, degree_size

logger = logging.getLogger(__name__)

NECESSARY_ONLY = "necessary conditions only; a pass does not imply that a cosymplectic structure exists"
SOLVMANIFOLD_NOTE = (
    "Chevalley-Eilenberg Betti numbers equal those of a compact solvmanifold "
    "only when the algebra is completely solvable"
)


# ---------------------------------------------------------------------- differential

def _differential_block(L: LieAlgebra, k: int) -> Matrix:
    """
    Matrix of d from degree k to k + 1.

    On covectors ``d e^m = -sum_{i<j} c_ij^m e^i ^ e^j``; higher degrees
    follow from the graded Leibniz rule.
    """
    n = L.dim
    pairs = monomial_index(n, 2)
    d1: List[Dict[Tuple[int, ...], Number]] = [dict() for _ in range(n)]
    for (i, j) in pairs:
        for m, value in enumerate(L.c[i][j]):
            if value:
                d1[m][(i, j)] = d1[m].get((i, j), ZERO) - value

    source, target = monomials(n, k), monomial_index(n, k + 1)
    rows = degree_size(n, k + 1)
    out = [[ZERO] * len(source) for _ in range(rows)]
    for col, idx in enumerate(source):
        for p, m in enumerate(idx):
            rest = idx[:p] + idx[p + 1:]
            position_sign = -1 if p % 2 else 1
            for pair, value in d1[m].items():
                sign, new = sort_with_sign(pair + rest)
                if sign:
                    out[target[new]][col] = out[target[new]][col] + value * sign * position_sign
    return Matrix(rows, len(source), tuple(x for row in out for x in row))


@lru_cache(maxsize=64)
def ce_operator(L: LieAlgebra) -> GradedOperator:
    """The differential as a graded operator; checks ``d o d = 0``."""
    d = GradedOperator.per_degree(L.dim, 1, lambda k: _differential_block(L, k))
    square = d @ d
    if not square.is_zero():
        k, i, j, value, _ = square.first_difference(GradedOperator.zero(L.dim, 2))
        raise InvariantBreach(f"d o d != 0 on degree {k} (entry {i},{j} = {value}); the bracket fails Jacobi")
    logger.debug("assembled CE differential of %s", L.name or L.dim)
    return d


def ce_differential(L: LieAlgebra, phi: KForm) -> KForm:
    if phi.dim != L.dim:
        raise DimensionMismatchError(f"form on dimension {phi.dim} for algebra of dimension {L.dim}")
    if phi.degree >= L.dim:
        return KForm.zero(L.dim, phi.degree + 1)
    image = ce_operator(L).apply(phi.degree, phi.to_vector())
    return KForm.from_vector(L.dim, phi.degree + 1, image)


def betti(L: LieAlgebra) -> List[int]:
    """``b_k = dim ker d_k - rank d_{k-1}``."""
    d = ce_operator(L)
    ranks = [rank(d.block(k)) for k in range(L.dim + 1)]
    return [comb(L.dim, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(L.dim + 1)]


# ---------------------------------------------------------------------- metric side

def form_grams(g: Matrix) -> Tuple[Tuple[Matrix, ...], Tuple[Matrix, ...]]:
    """
    Gram matrices of the induced inner product on forms and their inverses.

    On covectors the product is ``g^-1``; on k-forms it is the k-th compound.
    """
    n = g.rows
    g_inv = inverse(g)
    grams = tuple(compound(g_inv, k) for k in range(n + 1))
    grams_inv = tuple(compound(g, k) for k in range(n + 1))
    return grams, grams_inv


@dataclass(frozen=True)
class CEOperators:
    """Differential, codifferential and Laplacian of one (algebra, metric) pair."""
    algebra: LieAlgebra
    metric: Matrix
    d: GradedOperator
    grams: Tuple[Matrix, ...]
    grams_inv: Tuple[Matrix, ...]
    delta: GradedOperator
    laplacian: GradedOperator

    def inner(self, k: int, a: Sequence, b: Sequence) -> Number:
        return hermitian(a, self.grams[k], b)


def require_metric(g: Matrix, dim: int) -> None:
    if g.shape != (dim, dim):
        raise DimensionMismatchError(f"metric must be {dim}x{dim}")
    if not is_positive_definite(g):
        raise PreconditionError("metric is not symmetric positive definite")


@lru_cache(maxsize=64)
def build_ce_operators(L: LieAlgebra, g: Matrix) -> CEOperators:
    """
    Raises:
        PreconditionError: ``g`` is not symmetric positive definite
    """
    require_metric(g, L.dim)
    d = ce_operator(L)
    grams, grams_inv = form_grams(g)
    delta = d.adjoint(grams, grams_inv)
    laplacian = d @ delta + delta @ d
    logger.debug("assembled CE operators of %s", L.name or L.dim)
    return CEOperators(L, g, d, grams, grams_inv, delta, laplacian)


@dataclass(frozen=True)
class HodgeDecomposition:
    """``Lambda^k = ker Laplacian + im d + im delta``, pairwise orthogonal."""
    degree: int
    harmonic: List[Vector]
    exact: List[Vector]
    coexact: List[Vector]
    gram: Matrix = field(repr=False)

    @property
    def dimensions(self) -> Dict[str, int]:
        return {"harmonic": len(self.harmonic), "exact": len(self.exact), "coexact": len(self.coexact)}

    def is_orthogonal(self) -> bool:
        parts = (self.harmonic, self.exact, self.coexact)
        for a in range(3):
            for b in range(a + 1, 3):
                for u in parts[a]:
                    for v in parts[b]:
                        if hermitian(u, self.gram, v):
                            return False
        return True

    def split(self, vector: Sequence) -> Tuple[Vector, Vector, Vector]:
        """Orthogonal components of a form in the three summands."""
        return tuple(gram_projection(part, self.gram, vector) for part in (self.harmonic, self.exact, self.coexact))

    def to_dict(self) -> Dict:
        return {"degree": self.degree, "dimensions": self.dimensions}


def hodge(L: LieAlgebra, g: Matrix, k: int) -> HodgeDecomposition:
    """
    Raises:
        PreconditionError: ``g`` is not positive definite
    """
    if not 0 <= k <= L.dim:
        raise DimensionMismatchError(f"degree {k} out of range for dimension {L.dim}")
    ops = build_ce_operators(L, g)
    harmonic = rref_kernel(ops.laplacian.block(k))
    exact = column_space(ops.d.block(k - 1)) if k >= 1 else []
    coexact = column_space(ops.delta.block(k + 1)) if k < L.dim else []
    decomposition = HodgeDecomposition(k, harmonic, exact, coexact, ops.grams[k])
    if sum(decomposition.dimensions.values()) != comb(L.dim, k):
        raise InvariantBreach(f"Hodge summands in degree {k} do not fill the space")
    return decomposition


# ---------------------------------------------------------------------- Betti screens

def check_betti_conditions(b: Sequence[int], n: int) -> Report:
    """
    ``b_i > 0``, ``b_0 <= ... <= b_n = b_{n+1} >= ... >= b_{2n+1}``.

    Raises:
        DimensionMismatchError: ``b`` does not have length ``2n + 2``
    """
    b = list(b)
    if len(b) != 2 * n + 2:
        raise DimensionMismatchError(f"Betti list of length {len(b)} for n = {n} (expected {2 * n + 2})")
    report = Report(subject=f"Betti conditions (n = {n})", data={"betti": b})
    report.notes.append(NECESSARY_ONLY)

    zero = next((i for i, v in enumerate(b) if v <= 0), None)
    report.add(
        failed("positivity", {"inequality": f"b_{zero} > 0", "values": [b[zero]]})
        if zero is not None else passed("positivity")
    )

    up = next((i for i in range(n) if b[i] > b[i + 1]), None)
    report.add(
        failed("ascending", {"inequality": f"b_{up} <= b_{up + 1}", "values": [b[up], b[up + 1]]})
        if up is not None else passed("ascending", f"b_0 <= ... <= b_{n}")
    )

    report.add(
        failed("middle", {"inequality": f"b_{n} = b_{n + 1}", "values": [b[n], b[n + 1]]})
        if b[n] != b[n + 1] else passed("middle", f"b_{n} = b_{n + 1}")
    )

    down = next((i for i in range(n + 1, 2 * n + 1) if b[i] < b[i + 1]), None)
    report.add(
        failed("descending", {"inequality": f"b_{down} >= b_{down + 1}", "values": [b[down], b[down + 1]]})
        if down is not None else passed("descending", f"b_{n + 1} >= ... >= b_{2 * n + 1}")
    )
    return report


def cohomology_report(L: LieAlgebra, g: Optional[Matrix] = None) -> Report:
    """Betti numbers, the Euler-characteristic check, optional Hodge dimensions and the Betti screen."""
    report = Report(subject=f"cohomology of {L.name or L.dim}")
    b = betti(L)
    report.data["betti"] = b
    euler = sum((-1) ** k * v for k, v in enumerate(b))
    report.add(passed("euler characteristic") if euler == 0 else failed("euler characteristic", {"sum": euler}))
    if g is not None:
        dims = []
        for k in range(L.dim + 1):
            decomposition = hodge(L, g, k)
            dims.append(decomposition.dimensions)
            if len(decomposition.harmonic) != b[k]:
                report.add(failed(f"harmonic degree {k}", {"harmonic": len(decomposition.harmonic), "betti": b[k]}))
        report.data["hodge"] = dims
    if L.dim % 2 == 1:
        conditions = check_betti_conditions(b, (L.dim - 1) // 2)
        report.data["betti_conditions"] = conditions.to_dict()
    report.notes.append(SOLVMANIFOLD_NOTE)
    return report


def screen_torus_profile(L: LieAlgebra, seed: Optional[int] = None) -> Report:
    """
    For a completely solvable unimodular algebra, whether the Betti numbers
    are those of a torus, ``b_k = C(dim, k)``.
    """
    flags = classify(L, seed=seed)
    if flags.completely_solvable == SolvabilityProof.FAIL or not flags.unimodular:
        return Report.rejected(
            f"torus profile of {L.name or L.dim}",
            "needs a completely solvable unimodular algebra",
            {"completely_solvable": flags.completely_solvable.value, "unimodular": flags.unimodular},
        )
    b = betti(L)
    expected = [comb(L.dim, k) for k in range(L.dim + 1)]
    report = Report(subject=f"torus profile of {L.name or L.dim}", data={"betti": b, "torus": expected})
    mismatch = next((k for k in range(L.dim + 1) if b[k] != expected[k]), None)
    report.add(
        failed("torus profile", {"degree": mismatch, "betti": b[mismatch], "torus": expected[mismatch]})
        if mismatch is not None else passed("torus profile")
    )
    report.notes.append(
        "a compact cosymplectic solvmanifold of completely solvable type has the Betti numbers of a torus"
    )
    if flags.completely_solvable == SolvabilityProof.HEURISTIC_PASS:
        report.notes.append("complete solvability was only established on a sampled panel")
    return report
