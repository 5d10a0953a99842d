"""
Dense exact matrices over the rationals and the Gaussian rationals.

Elimination is fraction-free (Bareiss) on rows whose denominators have
been cleared; pivots are taken at the first nonzero column, smallest row
index first, so kernels and echelon forms are deterministic.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from ..errors import DimensionMismatchError, InconsistentSystemError, SingularMatrixError
from .scalars import ZERO, ONE, ComplexScalar, Number, as_fraction, conj

logger = logging.getLogger(__name__)

Vector = Tuple[Number, ...]


def _coerce(value) -> Number:
    if isinstance(value, (Fraction, ComplexScalar)):
        return value
    return as_fraction(value)


@dataclass(frozen=True)
class Matrix:
    """Immutable ``rows x cols`` matrix stored row-major; columns are images of basis vectors."""
    rows: int
    cols: int
    entries: Tuple[Number, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # ------------------------------------------------------------------ builders

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        for r in rows:
            if len(r) != width:
                raise DimensionMismatchError("ragged rows")
        return cls(len(rows), width, tuple(_coerce(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        columns = [list(c) for c in columns]
        height = len(columns[0]) if columns else (rows or 0)
        return cls.from_rows([[c[i] for c in columns] for i in range(height)], cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diagonal([ONE] * n)

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        out = [ZERO] * (n * n)
        for i, v in enumerate(values):
            out[i * n + i] = _coerce(v)
        return cls(n, n, tuple(out))

    @classmethod
    def outer(cls, u: Sequence, v: Sequence) -> "Matrix":
        """The matrix ``u v^T``."""
        return cls.from_rows([[_coerce(a) * _coerce(b) for b in v] for a in u])

    # ------------------------------------------------------------------ access

    def __getitem__(self, key: Tuple[int, int]) -> Number:
        i, j = key
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Number]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # ------------------------------------------------------------------ algebra

    def map(self, fn: Callable[[Number], Number]) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(fn(x) for x in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conjugate(self) -> "Matrix":
        return self.map(conj)

    def conjugate_transpose(self) -> "Matrix":
        return self.transpose().conjugate()

    @property
    def H(self) -> "Matrix":
        return self.conjugate_transpose()

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        c = _coerce(c)
        if not c:
            return Matrix.zeros(self.rows, self.cols)
        return self.map(lambda x: x * c if x else ZERO)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
            right = other.to_rows()
            out: List[Number] = []
            for i in range(self.rows):
                acc: List[Number] = [ZERO] * other.cols
                for k, a in enumerate(self.row(i)):
                    if not a:
                        continue
                    for j, b in enumerate(right[k]):
                        if b:
                            acc[j] = acc[j] + a * b
                out.extend(acc)
            return Matrix(self.rows, other.cols, tuple(out))
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for i in range(self.rows):
            acc: Number = ZERO
            for a, b in zip(self.row(i), v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def trace(self) -> Number:
        if not self.is_square:
            raise DimensionMismatchError("trace of a non-square matrix")
        return reduce(lambda a, b: a + b, (self[i, i] for i in range(self.rows)), ZERO)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(len(row_idx), len(col_idx), tuple(self[i, j] for i in row_idx for j in col_idx))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        return Matrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)], cols=self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("vstack needs equal column counts")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    # ------------------------------------------------------------------ predicates

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_real(self) -> bool:
        return all(not isinstance(x, ComplexScalar) or x.im == 0 for x in self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def is_hermitian(self) -> bool:
        return self.is_square and self == self.conjugate_transpose()

    def first_nonzero(self) -> Optional[Tuple[int, int, Number]]:
        for idx, x in enumerate(self.entries):
            if x:
                return (idx // self.cols, idx % self.cols, x)
        return None

    def first_difference(self, other: "Matrix") -> Optional[Tuple[int, int, Number, Number]]:
        """First ``(i, j, self[i,j], other[i,j])`` where the matrices differ."""
        self._check_same_shape(other)
        for idx, (a, b) in enumerate(zip(self.entries, other.entries)):
            if a != b:
                return (idx // self.cols, idx % self.cols, a, b)
        return None

    def real_part(self) -> "Matrix":
        return self.map(lambda x: x.re if isinstance(x, ComplexScalar) else x)


# ---------------------------------------------------------------------- vectors

def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError("vector lengths differ")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError("vector lengths differ")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Number:
    """Bilinear pairing (no conjugation)."""
    acc: Number = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def bilinear(u: Sequence, m: Matrix, v: Sequence) -> Number:
    """``u^T m v``."""
    return dot(u, m.apply(v))


def hermitian(u: Sequence, m: Matrix, v: Sequence) -> Number:
    """``u^H m v``, sesquilinear in the first argument."""
    return dot([conj(a) for a in u], m.apply(v))


# ---------------------------------------------------------------------- elimination

def _integral_rows(rows: List[List[Number]]) -> Tuple[List[list], List[Number], bool]:
    """
    Clear denominators row by row.

    Returns the scaled rows, the per-row scale factors and whether the
    rows are plain Python integers (real input) or Gaussian integers.
    """
    complex_input = any(isinstance(x, ComplexScalar) for r in rows for x in r)
    scaled, scales = [], []
    for r in rows:
        dens = [1]
        for x in r:
            if isinstance(x, ComplexScalar):
                dens.extend((x.re.denominator, x.im.denominator))
            else:
                dens.append(Fraction(x).denominator)
        factor = lcm(*dens)
        scales.append(factor)
        if complex_input:
            scaled.append([ComplexScalar.lift(x) * factor for x in r])
        else:
            scaled.append([int(Fraction(x) * factor) for x in r])
    return scaled, scales, not complex_input


def _bareiss(rows: List[list], pivot_cols: int, integral: bool) -> Tuple[List[int], int]:
    """
    In-place fraction-free row echelon reduction of ``rows``.

    Only the first ``pivot_cols`` columns may hold pivots. Returns the
    pivot columns and the sign of the row permutation.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(pivot_cols):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            sign = -sign
        p = rows[r][c]
        top = rows[r]
        for i in range(r + 1, n_rows):
            a = rows[i][c]
            row_i = rows[i]
            if integral:
                rows[i] = row_i[:c] + [(p * row_i[j] - a * top[j]) // prev for j in range(c, n_cols)]
            else:
                rows[i] = row_i[:c] + [(p * row_i[j] - a * top[j]) / prev for j in range(c, n_cols)]
        prev = p
        pivots.append(c)
        r += 1
    return pivots, sign


def _as_field(x, integral: bool) -> Number:
    if integral:
        return Fraction(x)
    if isinstance(x, ComplexScalar) and x.im == 0:
        return x.re
    return x


def _back_substitute(echelon: List[list], pivots: List[int], n_vars: int, rhs_col: Optional[int], free: dict, integral: bool) -> Vector:
    """Solve the echelon system for the pivot variables, free variables fixed by ``free``."""
    x: List[Number] = [ZERO] * n_vars
    for j, value in free.items():
        x[j] = value
    for row_index in range(len(pivots) - 1, -1, -1):
        c = pivots[row_index]
        row = echelon[row_index]
        acc: Number = _as_field(row[rhs_col], integral) if rhs_col is not None else ZERO
        for j in range(c + 1, n_vars):
            if row[j] and x[j]:
                acc = acc - _as_field(row[j], integral) * x[j]
        x[c] = acc / _as_field(row[c], integral)
    return tuple(x)


def echelon(m: Matrix) -> Tuple[List[list], List[int]]:
    """Fraction-free row echelon form (integral rows) and pivot columns."""
    rows, _, integral = _integral_rows(m.to_rows())
    pivots, _ = _bareiss(rows, m.cols, integral)
    return rows, pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(echelon(m)[1])


def rref_kernel(m: Matrix) -> List[Vector]:
    """
    Basis of the null space of ``m``.

    One vector per free column, that column set to 1 and the other free
    columns to 0; the basis is deterministic.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [basis_vector(m.cols, j) for j in range(m.cols)]
    rows, scales, integral = _integral_rows(m.to_rows())
    pivots, _ = _bareiss(rows, m.cols, integral)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        free = {j: (ONE if j == f else ZERO) for j in range(m.cols) if j not in pivot_set}
        basis.append(_back_substitute(rows, pivots, m.cols, None, free, integral))
    return basis


def solve(m: Matrix, b: Sequence) -> Vector:
    """
    Solve ``m x = b`` exactly, free variables set to zero.

    Raises:
        InconsistentSystemError: ``b`` is not in the column space of ``m``
    """
    if len(b) != m.rows:
        raise DimensionMismatchError(f"right-hand side of length {len(b)} for {m.shape} matrix")
    augmented = [list(m.row(i)) + [_coerce(b[i])] for i in range(m.rows)]
    if not augmented:
        return zero_vector(m.cols)
    rows, _, integral = _integral_rows(augmented)
    pivots, _ = _bareiss(rows, m.cols + 1, integral)
    if pivots and pivots[-1] == m.cols:
        raise InconsistentSystemError("right-hand side is not in the column space")
    free = {j: ZERO for j in range(m.cols) if j not in set(pivots)}
    return _back_substitute(rows, pivots, m.cols, m.cols, free, integral)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse; a single elimination of ``[m | I]``."""
    if not m.is_square:
        raise DimensionMismatchError("inverse of a non-square matrix")
    n = m.rows
    if n == 0:
        return m
    augmented = [list(m.row(i)) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    rows, _, integral = _integral_rows(augmented)
    pivots, _ = _bareiss(rows, n, integral)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    columns = [_back_substitute(rows, pivots, n, n + k, {}, integral) for k in range(n)]
    return Matrix.from_columns(columns)


def determinant(m: Matrix) -> Number:
    if not m.is_square:
        raise DimensionMismatchError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    rows, scales, integral = _integral_rows(m.to_rows())
    pivots, sign = _bareiss(rows, n, integral)
    if len(pivots) < n:
        return ZERO
    value = _as_field(rows[n - 1][n - 1], integral) * sign
    for s in scales:
        value = value / s
    return value


def small_determinant(rows: List[List[Number]]) -> Number:
    """Determinant of a small dense block by elimination over the field."""
    n = len(rows)
    if n == 0:
        return ONE
    work = [list(r) for r in rows]
    value: Number = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if work[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            work[c], work[p] = work[p], work[c]
            value = -value
        pivot = work[c][c]
        value = value * pivot
        for i in range(c + 1, n):
            a = work[i][c]
            if a:
                factor = a / pivot
                work[i] = [work[i][j] - factor * work[c][j] if j >= c else work[i][j] for j in range(n)]
    return value


def char_poly(m: Matrix) -> Tuple[Fraction, ...]:
    """
    Characteristic polynomial by the Faddeev-LeVerrier recurrence.

    Returns the coefficients from the leading (monic) term down to the
    constant term.
    """
    if not m.is_square:
        raise DimensionMismatchError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs: List[Number] = [ONE]
    ident = Matrix.identity(n)
    mk = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        coeffs.append(-(m @ mk).trace() / k)
    return tuple(coeffs)


def is_positive_definite(m: Matrix) -> bool:
    """Symmetric (or Hermitian) with all leading principal minors positive."""
    if not m.is_square or not (m.is_symmetric() or m.is_hermitian()):
        return False
    for k in range(1, m.rows + 1):
        minor = small_determinant([list(m.row(i))[:k] for i in range(k)])
        if isinstance(minor, ComplexScalar):
            if minor.im != 0:
                return False
            minor = minor.re
        if minor <= 0:
            return False
    return True


def span_basis(vectors: Iterable[Sequence], length: Optional[int] = None) -> List[Vector]:
    """A basis of the span of ``vectors``: the nonzero echelon rows."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    rows, pivots = echelon(Matrix.from_rows(vectors))
    integral = all(not isinstance(x, ComplexScalar) for r in rows for x in r)
    return [tuple(_as_field(x, integral) for x in rows[i]) for i in range(len(pivots))]


def column_space(m: Matrix) -> List[Vector]:
    if m.cols == 0:
        return []
    return span_basis(m.columns())


def restricted_kernel(m: Matrix, subspace: Sequence[Sequence]) -> List[Vector]:
    """Basis of ``{x in span(subspace) : m x = 0}``."""
    if not subspace:
        return []
    b = Matrix.from_columns(subspace)
    return [b.apply(c) for c in rref_kernel(m @ b)]


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    """Exact membership of ``v`` in the span of ``vectors``."""
    if is_zero_vector(v):
        return True
    if not vectors:
        return False
    try:
        solve(Matrix.from_columns(vectors), v)
    except InconsistentSystemError:
        return False
    return True


def gram_projection(subspace_basis: Sequence[Sequence], gram: Matrix, v: Sequence) -> Vector:
    """
    Orthogonal projection of ``v`` onto ``span(subspace_basis)`` with
    respect to the (Hermitian) inner product ``<a, b> = a^H gram b``.

    Raises:
        SingularMatrixError: the basis is not linearly independent
    """
    n = len(v)
    if gram.shape != (n, n):
        raise DimensionMismatchError("gram matrix does not match the vector length")
    if not subspace_basis:
        return zero_vector(n)
    b = Matrix.from_columns(subspace_basis)
    bh_g = b.conjugate_transpose() @ gram
    normal = bh_g @ b
    if rank(normal) < len(subspace_basis):
        raise SingularMatrixError("subspace basis is not linearly independent")
    coeffs = solve(normal, bh_g.apply(v))
    return b.apply(coeffs)


def compound(m: Matrix, k: int) -> Matrix:
    """
    k-th compound matrix: entry ``(I, J)`` is the minor on rows ``I`` and
    columns ``J``, both running over k-subsets in lexicographic order.
    """
    row_sets = list(combinations(range(m.rows), k))
    col_sets = list(combinations(range(m.cols), k))
    dense = m.to_rows()
    nonzero_rows = [i for i in range(m.rows) if any(dense[i])]
    nonzero_cols = {j for j in range(m.cols) if any(dense[i][j] for i in range(m.rows))}
    live_rows = set(nonzero_rows)
    out: List[Number] = []
    for rs in row_sets:
        rows_live = all(i in live_rows for i in rs)
        for cs in col_sets:
            if not rows_live or not all(j in nonzero_cols for j in cs):
                out.append(ZERO)
                continue
            out.append(small_determinant([[dense[i][j] for j in cs] for i in rs]))
    return Matrix(len(row_sets), len(col_sets), tuple(out))
