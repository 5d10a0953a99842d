"""Lie algebras given by structure constants over the rationals."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import DimensionMismatchError, InconsistentSystemError, PreconditionError
from ..exact.matrix import Matrix, Vector, basis_vector, is_zero_vector, solve, span_basis, vec_add, zero_vector
from ..exact.scalars import ZERO, as_fraction
from ..report import Report, failed, passed

logger = logging.getLogger(__name__)

Constants = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class LieAlgebra:
    """
    Structure constants ``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Construction does not enforce antisymmetry or Jacobi; ``validate``
    reports on both.
    """
    dim: int
    basis_names: Tuple[str, ...]
    c: Constants
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatchError("a Lie algebra needs positive dimension")
        if len(self.basis_names) != self.dim:
            raise DimensionMismatchError(f"{len(self.basis_names)} basis names for dimension {self.dim}")
        if len(self.c) != self.dim or any(len(row) != self.dim or any(len(v) != self.dim for v in row) for row in self.c):
            raise DimensionMismatchError("structure constants must be a dim x dim x dim table")

    # ------------------------------------------------------------------ builders

    @classmethod
    def from_brackets(
        cls,
        basis_names: Sequence[str],
        brackets: Mapping[Tuple[int, int], Mapping[int, object]],
        name: str = "",
        complete: bool = True,
    ) -> "LieAlgebra":
        """
        Build from 0-based bracket entries ``{(i, j): {k: coeff}}``.

        With ``complete`` the table is filled antisymmetrically; entries
        that contradict their mirror raise ``ValueError``.
        """
        n = len(basis_names)
        table = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        seen: Dict[Tuple[int, int], List[Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            vec = [ZERO] * n
            for k, value in coeffs.items():
                vec[k] = as_fraction(value) if not isinstance(value, Fraction) else value
            if complete:
                if i == j and any(vec):
                    raise ValueError(f"[{basis_names[i]}, {basis_names[i]}] must vanish")
                mirror = seen.get((j, i))
                if mirror is not None and any(a != -b for a, b in zip(vec, mirror)):
                    raise ValueError(f"conflicting entries for [{basis_names[i]}, {basis_names[j]}]")
                table[j][i] = [-x for x in vec]
            table[i][j] = vec
            seen[(i, j)] = vec
        return cls(n, tuple(basis_names), _freeze(table), name=name)

    @classmethod
    def abelian(cls, n: int, basis_names: Optional[Sequence[str]] = None, name: str = "") -> "LieAlgebra":
        names = tuple(basis_names) if basis_names else default_names(n)
        return cls(n, names, _freeze([[[ZERO] * n for _ in range(n)] for _ in range(n)]), name=name or f"abelian{n}")

    def renamed(self, name: str) -> "LieAlgebra":
        return LieAlgebra(self.dim, self.basis_names, self.c, name=name)

    # ------------------------------------------------------------------ brackets

    def basis_bracket(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatchError(f"bracket needs vectors of length {self.dim}")
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                coeff = xi * yj
                for k, ck in enumerate(self.c[i][j]):
                    if ck:
                        out[k] = out[k] + coeff * ck
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        if len(x) != self.dim:
            raise DimensionMismatchError(f"ad needs a vector of length {self.dim}")
        return Matrix.from_columns([self.bracket(x, basis_vector(self.dim, j)) for j in range(self.dim)])

    def ad_basis(self, i: int) -> Matrix:
        return self.ad(basis_vector(self.dim, i))

    def vector(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def bracket_span(self, left: Sequence[Sequence], right: Sequence[Sequence]) -> List[Vector]:
        """Basis of ``span{[u, v] : u in left, v in right}``."""
        products = [self.bracket(u, v) for u in left for v in right]
        return span_basis([p for p in products if not is_zero_vector(p)])

    def derived_algebra(self) -> List[Vector]:
        """Basis of ``[g, g]``."""
        full = [self.vector(i) for i in range(self.dim)]
        return self.bracket_span(full, full)

    # ------------------------------------------------------------------ basis changes

    def change_basis(self, columns: Sequence[Sequence], basis_names: Optional[Sequence[str]] = None) -> "LieAlgebra":
        """
        The same algebra written in the basis whose vectors are ``columns``.
        """
        p = Matrix.from_columns(columns)
        if p.shape != (self.dim, self.dim):
            raise DimensionMismatchError("a basis change needs dim vectors of length dim")
        table = [[[ZERO] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for a in range(self.dim):
            for b in range(self.dim):
                if a == b:
                    continue
                image = self.bracket(columns[a], columns[b])
                if not is_zero_vector(image):
                    table[a][b] = list(solve(p, image))
        names = tuple(basis_names) if basis_names else self.basis_names
        return LieAlgebra(self.dim, names, _freeze(table), name=self.name)

    def restrict(self, vectors: Sequence[Sequence], basis_names: Sequence[str], name: str = "") -> "LieAlgebra":
        """
        Subalgebra spanned by ``vectors``, written in that basis.

        Raises:
            PreconditionError: the span is not closed under the bracket
        """
        m = len(vectors)
        b = Matrix.from_columns(vectors)
        table = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
        for a in range(m):
            for c in range(m):
                if a == c:
                    continue
                image = self.bracket(vectors[a], vectors[c])
                if is_zero_vector(image):
                    continue
                try:
                    table[a][c] = list(solve(b, image))
                except InconsistentSystemError as exc:
                    raise PreconditionError(
                        f"span is not a subalgebra: [{basis_names[a]}, {basis_names[c]}] leaves it"
                    ) from exc
        return LieAlgebra(m, tuple(basis_names), _freeze(table), name=name)

    def brackets_dict(self) -> Dict[Tuple[int, int], Vector]:
        """Nonzero brackets ``[e_i, e_j]`` with ``i < j``."""
        return {
            (i, j): self.c[i][j]
            for i, j in combinations(range(self.dim), 2)
            if not is_zero_vector(self.c[i][j])
        }


def default_names(n: int) -> Tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


def _freeze(table) -> Constants:
    return tuple(tuple(tuple(v) for v in row) for row in table)


# ---------------------------------------------------------------------- operations

def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    return L.bracket(x, y)


def ad(L: LieAlgebra, x: Sequence) -> Matrix:
    return L.ad(x)


def jacobi_residual(L: LieAlgebra, i: int, j: int, k: int) -> Vector:
    """``[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]``."""
    e = L.vector
    total = L.bracket(e(i), L.bracket(e(j), e(k)))
    total = vec_add(total, L.bracket(e(j), L.bracket(e(k), e(i))))
    return vec_add(total, L.bracket(e(k), L.bracket(e(i), e(j))))


def validate(L: LieAlgebra) -> Report:
    """Antisymmetry and Jacobi on basis triples; witnesses use 1-based indices."""
    report = Report(subject=f"Lie algebra {L.name or L.dim}")
    names = L.basis_names

    antisym_witness = None
    for i in range(L.dim):
        for j in range(i, L.dim):
            for k in range(L.dim):
                if L.c[i][j][k] != -L.c[j][i][k]:
                    antisym_witness = {
                        "triple": [i + 1, j + 1, k + 1],
                        "basis": [names[i], names[j], names[k]],
                        "c_ijk": L.c[i][j][k],
                        "c_jik": L.c[j][i][k],
                    }
                    break
            if antisym_witness:
                break
        if antisym_witness:
            break
    report.add(failed("antisymmetry", antisym_witness) if antisym_witness else passed("antisymmetry"))

    jacobi_witness = None
    for i, j, k in combinations(range(L.dim), 3):
        residual = jacobi_residual(L, i, j, k)
        if not is_zero_vector(residual):
            jacobi_witness = {
                "triple": [i + 1, j + 1, k + 1],
                "basis": [names[i], names[j], names[k]],
                "residual": residual,
            }
            break
    report.add(failed("jacobi", jacobi_witness) if jacobi_witness else passed("jacobi"))
    return report


def require_lie_algebra(L: LieAlgebra) -> Report:
    """
    The ``validate`` report, when it passes.

    Raises:
        PreconditionError: antisymmetry or Jacobi fails; the report is attached
    """
    check = validate(L)
    if not check.passed:
        raise PreconditionError(f"not a Lie algebra: stage '{check.failed_stage.name}' fails", report=check)
    return check


def is_derivation(L: LieAlgebra, D: Matrix) -> Report:
    """``D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]`` on all basis pairs."""
    if D.shape != (L.dim, L.dim):
        raise DimensionMismatchError(f"derivation must be {L.dim}x{L.dim}")
    report = Report(subject="derivation")
    columns = D.columns()
    for i, j in combinations(range(L.dim), 2):
        lhs = D.apply(L.basis_bracket(i, j))
        rhs = vec_add(L.bracket(columns[i], L.vector(j)), L.bracket(L.vector(i), columns[j]))
        if lhs != rhs:
            report.add(failed("derivation", {
                "pair": [i + 1, j + 1],
                "basis": [L.basis_names[i], L.basis_names[j]],
                "D[x,y]": lhs,
                "[Dx,y]+[x,Dy]": rhs,
            }))
            return report
    report.add(passed("derivation"))
    return report


def semidirect_extend(L: LieAlgebra, D: Matrix, new_name: str = "xi", name: str = "") -> LieAlgebra:
    """
    ``L + R xi`` with ``[xi, X] = D X``; ``xi`` is appended as the last basis vector.

    Raises:
        PreconditionError: ``D`` is not a derivation of ``L``
    """
    check = is_derivation(L, D)
    if not check.passed:
        raise PreconditionError("semidirect extension needs a derivation", report=check)
    n = L.dim
    table = [[list(L.c[i][j]) + [ZERO] if (i < n and j < n) else [ZERO] * (n + 1) for j in range(n + 1)] for i in range(n + 1)]
    for j in range(n):
        image = list(D.column(j)) + [ZERO]
        table[n][j] = image
        table[j][n] = [-x for x in image]
    extended = LieAlgebra(n + 1, L.basis_names + (new_name,), _freeze(table), name=name)
    logger.debug("extended %s by %s", L.name or L.dim, new_name)
    return extended


def trace_form(L: LieAlgebra) -> Vector:
    """The covector ``X -> tr ad_X`` in the dual basis."""
    return tuple(L.ad_basis(i).trace() for i in range(L.dim))
