"""
Kähler Lie algebras with a skew-adjoint J-commuting derivation versus
cosymplectic Lie algebras, in both directions; modification maps and
admissible forms of normal J-algebras.

Extensions append ``xi`` as the last basis vector and reductions take the
leaf basis of ``ker alpha`` in the order ``rref_kernel`` returns it, so a
round trip reproduces structure constants literally.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import DimensionMismatchError, InvariantBreach, PreconditionError
from ..exact.matrix import (
    Matrix,
    Vector,
    basis_vector,
    bilinear,
    in_span,
    is_positive_definite,
    is_zero_vector,
    solve,
    vec_add,
    vec_sub,
)
from ..exact.scalars import ONE, ZERO
from ..lie.algebra import LieAlgebra, default_names, is_derivation, require_lie_algebra, semidirect_extend, validate
from ..lie.classify import classify
from ..report import Report, failed, passed
from .structures import StructureData, first_failure, nijenhuis_complex, verify_cosymplectic, verify_kahler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KahlerAlgebra:
    """An even-dimensional Lie algebra with complex structure ``J`` and metric ``g``."""
    algebra: LieAlgebra
    J: Matrix
    g: Matrix

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def verify(self) -> Report:
        return verify_kahler(self.algebra, self.J, self.g)

    def to_dict(self) -> Dict[str, Any]:
        return {"J": self.J.to_rows(), "g": self.g.to_rows()}


@dataclass(frozen=True)
class DerivationData:
    D: Matrix


def _matrix_witness(h: KahlerAlgebra, diff) -> Dict[str, Any]:
    i, j, got, want = diff
    names = h.algebra.basis_names
    return {"image_of": names[j], "component": names[i], "lhs": got, "rhs": want}


def check_derivation_data(h: KahlerAlgebra, data: DerivationData) -> Report:
    """Stages ``derivation``, ``skew-adjoint`` and ``commutes with J``, each evaluated."""
    D = data.D
    if D.shape != (h.dim, h.dim):
        raise DimensionMismatchError(f"derivation must be {h.dim}x{h.dim}")
    report = Report(subject=f"derivation data on {h.algebra.name or h.dim}")
    derivation = is_derivation(h.algebra, D)
    report.add(derivation.stages[0])

    skew = (D.transpose() @ h.g).first_difference((h.g @ D).scale(-1))
    report.add(failed("skew-adjoint", _matrix_witness(h, skew)) if skew else passed("skew-adjoint"))

    commutes = (D @ h.J).first_difference(h.J @ D)
    report.add(failed("commutes with J", _matrix_witness(h, commutes)) if commutes else passed("commutes with J"))
    return report


def _require_kahler(h: KahlerAlgebra) -> None:
    require_lie_algebra(h.algebra)
    check = h.verify()
    if not check.passed:
        failure = first_failure(check)
        raise PreconditionError(f"not a Kähler Lie algebra: stage '{failure['stage']}' fails", report=check)


def extend(h: KahlerAlgebra, data: DerivationData, xi_name: str = "xi", name: str = "") -> Tuple[LieAlgebra, StructureData]:
    """
    Cosymplectic algebra ``h + R xi`` with ``[xi, X] = D X``, ``J xi = 0``,
    ``xi`` unit and orthogonal to ``h``, ``alpha`` dual to ``xi``.

    Raises:
        PreconditionError: ``h`` is not Kähler or ``D`` fails one of the derivation-data conditions
        InvariantBreach: the output fails the cosymplectic verification
    """
    _require_kahler(h)
    check = check_derivation_data(h, data)
    if not check.passed:
        failure = first_failure(check)
        raise PreconditionError(f"derivation data rejected: stage '{failure['stage']}' fails", report=check)

    n = h.dim
    L = semidirect_extend(h.algebra, data.D, new_name=xi_name, name=name or f"{h.algebra.name or 'h'}+D")
    J = Matrix.from_rows([list(h.J.row(i)) + [ZERO] for i in range(n)] + [[ZERO] * (n + 1)])
    g = Matrix.from_rows([list(h.g.row(i)) + [ZERO] for i in range(n)] + [[ZERO] * n + [ONE]])
    xi = basis_vector(n + 1, n)
    S = StructureData(J=J, xi=xi, alpha=xi, g=g)

    result = verify_cosymplectic(L, S)
    if not result.passed:
        raise InvariantBreach(f"extension fails the cosymplectic check at '{result.failed_stage.name}'")
    logger.debug("extended %s to a cosymplectic algebra of dimension %d", h.algebra.name or n, n + 1)
    return L, S


def _leaf_names(L: LieAlgebra, leaf: Sequence[Vector]) -> Tuple[str, ...]:
    names = []
    for v in leaf:
        hits = [i for i, x in enumerate(v) if x]
        if len(hits) != 1 or v[hits[0]] != 1:
            return default_names(len(leaf))
        names.append(L.basis_names[hits[0]])
    return tuple(names)


def _in_leaf_coordinates(basis: Matrix, columns: Sequence[Vector]) -> Matrix:
    return Matrix.from_columns([solve(basis, c) for c in columns])


def reduce(L: LieAlgebra, S: StructureData) -> Tuple[KahlerAlgebra, DerivationData]:
    """
    ``h = ker alpha`` with the restricted bracket, ``(J|h, g|h)`` and ``D = ad_xi|h``.

    Raises:
        PreconditionError: ``S`` is not cosymplectic on ``L``, or ``xi`` lies in ``[g, g]``
        InvariantBreach: the reduced data fails the Kähler or derivation-data checks
    """
    check = verify_cosymplectic(L, S)
    if not check.passed:
        failure = first_failure(check)
        raise PreconditionError(f"reduce needs a cosymplectic structure: stage '{failure['stage']}' fails", report=check)
    if in_span(S.xi, L.derived_algebra()):
        raise PreconditionError("xi belongs to the commutator [g, g]")

    leaf = S.leaf_basis()
    names = _leaf_names(L, leaf)
    basis = Matrix.from_columns(leaf)
    h_algebra = L.restrict(leaf, names, name=f"ker α of {L.name or L.dim}")
    J = _in_leaf_coordinates(basis, [S.J.apply(v) for v in leaf])
    g = Matrix.from_rows([[bilinear(a, S.g, b) for b in leaf] for a in leaf])
    D = _in_leaf_coordinates(basis, [L.bracket(S.xi, v) for v in leaf])

    h = KahlerAlgebra(h_algebra, J, g)
    data = DerivationData(D)
    if not h.verify().passed:
        raise InvariantBreach("ker alpha with the restricted structure is not Kähler")
    if not check_derivation_data(h, data).passed:
        raise InvariantBreach("ad_xi restricted to ker alpha fails the derivation-data conditions")
    return h, data


# ---------------------------------------------------------------------- modification maps

def _map_value(maps: Sequence[Matrix], x: Sequence) -> Matrix:
    n = len(maps)
    out = Matrix.zeros(n, n)
    for xi, m in zip(x, maps):
        if xi:
            out = out + m.scale(xi)
    return out


def _check_maps(h: KahlerAlgebra, maps: Sequence[Matrix]) -> None:
    if len(maps) != h.dim or any(m.shape != (h.dim, h.dim) for m in maps):
        raise DimensionMismatchError(f"a modification map needs {h.dim} matrices of size {h.dim}x{h.dim}")


def check_modification_map(h: KahlerAlgebra, maps: Sequence[Matrix]) -> Report:
    """
    Conditions on ``X -> maps(X)`` (one matrix per basis vector, extended linearly):

    1. every value is skew-adjoint,
    2. every value commutes with ``J``,
    3. values commute pairwise and vanish on brackets,
    4. ``maps(maps(X)Y - maps(Y)X) = 0``.
    """
    _check_maps(h, maps)
    L, names = h.algebra, h.algebra.basis_names
    report = Report(subject=f"modification map on {L.name or h.dim}")

    witness = None
    for i, m in enumerate(maps):
        diff = (m.transpose() @ h.g).first_difference((h.g @ m).scale(-1))
        if diff:
            witness = {"basis": names[i], **_matrix_witness(h, diff)}
            break
    report.add(failed("(1) skew-adjoint", witness) if witness else passed("(1) skew-adjoint"))

    witness = None
    for i, m in enumerate(maps):
        diff = (m @ h.J).first_difference(h.J @ m)
        if diff:
            witness = {"basis": names[i], **_matrix_witness(h, diff)}
            break
    report.add(failed("(2) commutes with J", witness) if witness else passed("(2) commutes with J"))

    witness = None
    for i, j in combinations(range(h.dim), 2):
        hit = maps[i].commutator(maps[j]).first_nonzero()
        if hit:
            witness = {"pair": [names[i], names[j]], "[D(X),D(Y)]": hit[2], "entry": [hit[0], hit[1]]}
            break
        hit = _map_value(maps, L.basis_bracket(i, j)).first_nonzero()
        if hit:
            witness = {"pair": [names[i], names[j]], "D([X,Y])": hit[2], "entry": [hit[0], hit[1]]}
            break
    report.add(failed("(3) commuting and flat on brackets", witness) if witness else passed("(3) commuting and flat on brackets"))

    witness = None
    for i, j in combinations(range(h.dim), 2):
        v = vec_sub(maps[i].column(j), maps[j].column(i))
        hit = _map_value(maps, v).first_nonzero()
        if hit:
            witness = {"pair": [names[i], names[j]], "value": hit[2], "entry": [hit[0], hit[1]]}
            break
    report.add(failed("(4) D(D(X)Y - D(Y)X) = 0", witness) if witness else passed("(4) D(D(X)Y - D(Y)X) = 0"))
    return report


@dataclass(frozen=True)
class Modification:
    """The modified algebra with the carried ``(J, g)`` and its Kähler report."""
    kahler: KahlerAlgebra
    report: Report

    @property
    def algebra(self) -> LieAlgebra:
        return self.kahler.algebra


def modify(h: KahlerAlgebra, maps: Sequence[Matrix], name: str = "") -> Modification:
    """
    Bracket ``(X, Y) = [X, Y] + D(X)Y - D(Y)X``.

    Raises:
        PreconditionError: ``h`` is not a Lie algebra
        PreconditionError: the map fails one of the four conditions
        InvariantBreach: the modified bracket fails Jacobi
    """
    require_lie_algebra(h.algebra)
    check = check_modification_map(h, maps)
    if not check.passed:
        failure = first_failure(check)
        raise PreconditionError(f"modification map rejected: stage '{failure['stage']}' fails", report=check)
    L = h.algebra
    brackets = {}
    for i, j in combinations(range(h.dim), 2):
        value = vec_add(L.basis_bracket(i, j), vec_sub(maps[i].column(j), maps[j].column(i)))
        if not is_zero_vector(value):
            brackets[(i, j)] = {k: x for k, x in enumerate(value) if x}
    modified = LieAlgebra.from_brackets(L.basis_names, brackets, name=name or f"modified {L.name or h.dim}")
    jacobi = validate(modified)
    if not jacobi.passed:
        raise InvariantBreach(f"modified bracket fails '{jacobi.failed_stage.name}'")
    kahler = KahlerAlgebra(modified, h.J, h.g)
    report = Report(subject=f"modification of {L.name or h.dim}")
    report.extend(check)
    report.data["kahler"] = kahler.verify().to_dict()
    report.data["brackets"] = {f"[{modified.basis_names[i]},{modified.basis_names[j]}]": v for (i, j), v in modified.brackets_dict().items()}
    return Modification(kahler, report)


# ---------------------------------------------------------------------- normal J-algebras

def induced_metric(a: LieAlgebra, J: Matrix, mu: Sequence) -> Matrix:
    """``<X, Y> = mu([JX, Y])`` on the basis."""
    return Matrix.from_rows([
        [sum((m * c for m, c in zip(mu, a.bracket(J.column(i), a.vector(j))) if m and c), ZERO) for j in range(a.dim)]
        for i in range(a.dim)
    ])


def check_normal_j_algebra(a: LieAlgebra, J: Matrix, mu: Sequence) -> Report:
    """
    Admissibility of ``mu``: ``mu([JX,JY]) = mu([X,Y])`` and ``mu([JX,Y])``
    symmetric positive definite. On a pass ``data["metric"]`` holds the
    induced Kähler metric.
    """
    subject = f"admissible form on {a.name or a.dim}"
    if a.dim % 2:
        return Report.rejected(subject, "normal J-algebras have even dimension", {"dim": a.dim})
    if len(mu) != a.dim or J.shape != (a.dim, a.dim):
        raise DimensionMismatchError(f"J must be {a.dim}x{a.dim} and mu of length {a.dim}")
    if J @ J != Matrix.identity(a.dim).scale(-1):
        return Report.rejected(subject, "J does not square to -Id")
    for i, j in combinations(range(a.dim), 2):
        value = nijenhuis_complex(a, J, a.vector(i), a.vector(j))
        if not is_zero_vector(value):
            return Report.rejected(subject, "J is not integrable", {"pair": [a.basis_names[i], a.basis_names[j]], "N_J": value})

    report = Report(subject=subject)
    names = a.basis_names
    witness: Optional[Dict[str, Any]] = None
    for i, j in combinations(range(a.dim), 2):
        lhs = sum((m * c for m, c in zip(mu, a.bracket(J.column(i), J.column(j))) if m and c), ZERO)
        rhs = sum((m * c for m, c in zip(mu, a.basis_bracket(i, j)) if m and c), ZERO)
        if lhs != rhs:
            witness = {"pair": [names[i], names[j]], "μ([JX,JY])": lhs, "μ([X,Y])": rhs}
            break
    report.add(failed("μ([JX,JY]) = μ([X,Y])", witness) if witness else passed("μ([JX,JY]) = μ([X,Y])"))

    metric = induced_metric(a, J, mu)
    if is_positive_definite(metric):
        report.add(passed("μ([JX,Y]) positive definite"))
    else:
        report.add(failed("μ([JX,Y]) positive definite", {"form": metric.to_rows()}))

    flags = classify(a)
    report.add(passed("complete solvability (informational)", flags.completely_solvable.value))
    report.data["completely_solvable"] = flags.completely_solvable.value
    if report.passed:
        report.data["metric"] = metric.to_rows()
    return report


def random_unitary_derivation(rng, m: int, bound: int = 3) -> Matrix:
    """
    A random skew-adjoint ``J``-commuting endomorphism of ``R^{2m}`` with the
    standard metric and ``J e_{2k} = e_{2k+1}``; every such map is a
    derivation of the abelian algebra.
    """
    n = 2 * m
    rows: List[List] = [[ZERO] * n for _ in range(n)]

    def put(bi: int, bj: int, a, b) -> None:
        rows[2 * bi][2 * bj], rows[2 * bi][2 * bj + 1] = a, -b
        rows[2 * bi + 1][2 * bj], rows[2 * bi + 1][2 * bj + 1] = b, a

    for bi in range(m):
        put(bi, bi, ZERO, ONE * rng.randint(-bound, bound))
        for bj in range(bi + 1, m):
            a, b = ONE * rng.randint(-bound, bound), ONE * rng.randint(-bound, bound)
            put(bi, bj, a, b)
            put(bj, bi, -a, b)
    return Matrix.from_rows(rows)


def standard_kahler(m: int, names: Optional[Sequence[str]] = None) -> KahlerAlgebra:
    """Abelian ``R^{2m}`` with ``J e_{2k} = e_{2k+1}`` and the identity metric."""
    n = 2 * m
    J = Matrix.zeros(n, n).to_rows()
    for k in range(m):
        J[2 * k + 1][2 * k] = ONE
        J[2 * k][2 * k + 1] = -ONE
    return KahlerAlgebra(LieAlgebra.abelian(n, names, name=f"R^{n}"), Matrix.from_rows(J), Matrix.identity(n))


__all__ = [
    "KahlerAlgebra",
    "DerivationData",
    "Modification",
    "check_derivation_data",
    "extend",
    "reduce",
    "check_modification_map",
    "modify",
    "induced_metric",
    "check_normal_j_algebra",
    "random_unitary_derivation",
    "standard_kahler",
]
