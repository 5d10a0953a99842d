"""
Exterior algebra on the dual of a finite-dimensional space.

A k-form is stored by its coefficients on the monomials
``e^{i_1} ^ ... ^ e^{i_k}`` with ``i_1 < ... < i_k``; monomials of one
degree are ordered lexicographically, which fixes the coordinate vector
of a form and the matrices of every graded operator.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DimensionMismatchError
from ..exact.matrix import Matrix, Vector, small_determinant
from ..exact.scalars import ZERO, ComplexScalar, Number, as_fraction, conj, to_plain

Index = Tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(n: int, k: int) -> Tuple[Index, ...]:
    """Sorted k-subsets of ``range(n)`` in lexicographic order."""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def monomial_index(n: int, k: int) -> Dict[Index, int]:
    return {idx: pos for pos, idx in enumerate(monomials(n, k))}


def sort_with_sign(indices: Sequence[int]) -> Tuple[int, Optional[Index]]:
    """
    Sort a wedge of basis covectors.

    Returns ``(sign, sorted_indices)``, or ``(0, None)`` when an index repeats.
    """
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


@dataclass(frozen=True)
class KForm:
    """
    A k-form on an n-dimensional space; absent monomials have coefficient zero.
    """
    dim: int
    degree: int
    coefficients: Dict[Index, Number] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.degree:
            raise DimensionMismatchError("form degree must be nonnegative")
        clean: Dict[Index, Number] = {}
        for idx, value in self.coefficients.items():
            idx = tuple(idx)
            if len(idx) != self.degree or any(b <= a for a, b in zip(idx, idx[1:])):
                raise DimensionMismatchError(f"index {idx} is not a strictly increasing {self.degree}-tuple")
            if idx and (idx[0] < 0 or idx[-1] >= self.dim):
                raise DimensionMismatchError(f"index {idx} out of range for dimension {self.dim}")
            if not isinstance(value, ComplexScalar):
                value = as_fraction(value)
            if value:
                clean[idx] = value
        object.__setattr__(self, "coefficients", clean)

    # ------------------------------------------------------------------ builders

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls(dim, degree, {})

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], coeff: Number = 1) -> "KForm":
        """``coeff * e^{i_1} ^ ... ^ e^{i_k}`` for any index order."""
        sign, idx = sort_with_sign(indices)
        if not sign:
            return cls.zero(dim, len(indices))
        value = coeff if isinstance(coeff, ComplexScalar) else as_fraction(coeff)
        return cls(dim, len(idx), {idx: value * sign})

    @classmethod
    def covector(cls, coeffs: Sequence) -> "KForm":
        return cls(len(coeffs), 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, dim: int, degree: int, vector: Sequence) -> "KForm":
        basis = monomials(dim, degree)
        if len(vector) != len(basis):
            raise DimensionMismatchError(f"{len(vector)} coordinates for {len(basis)} monomials")
        return cls(dim, degree, {idx: v for idx, v in zip(basis, vector) if v})

    def to_vector(self) -> Vector:
        return tuple(self.coefficients.get(idx, ZERO) for idx in monomials(self.dim, self.degree))

    # ------------------------------------------------------------------ algebra

    def _check(self, other: "KForm") -> None:
        if self.dim != other.dim or self.degree != other.degree:
            raise DimensionMismatchError("forms of different dimension or degree")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        out = dict(self.coefficients)
        for idx, value in other.coefficients.items():
            out[idx] = out.get(idx, ZERO) + value
        return KForm(self.dim, self.degree, out)

    def __neg__(self) -> "KForm":
        return KForm(self.dim, self.degree, {idx: -v for idx, v in self.coefficients.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c: Number) -> "KForm":
        return KForm(self.dim, self.degree, {idx: c * v for idx, v in self.coefficients.items()})

    def wedge(self, other: "KForm") -> "KForm":
        if self.dim != other.dim:
            raise DimensionMismatchError("wedge of forms on different spaces")
        out: Dict[Index, Number] = {}
        for a, x in self.coefficients.items():
            for b, y in other.coefficients.items():
                sign, idx = sort_with_sign(a + b)
                if sign:
                    out[idx] = out.get(idx, ZERO) + x * y * sign
        return KForm(self.dim, self.degree + other.degree, out)

    __xor__ = wedge

    def conjugate(self) -> "KForm":
        return KForm(self.dim, self.degree, {idx: conj(v) for idx, v in self.coefficients.items()})

    def real_part(self) -> "KForm":
        return KForm(
            self.dim,
            self.degree,
            {idx: (v.re if isinstance(v, ComplexScalar) else v) for idx, v in self.coefficients.items()},
        )

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_real(self) -> bool:
        return all(not isinstance(v, ComplexScalar) or v.im == 0 for v in self.coefficients.values())

    def evaluate(self, vectors: Sequence[Sequence]) -> Number:
        """``phi(v_1, ..., v_k)``; each monomial contributes the minor of the vector components."""
        if len(vectors) != self.degree:
            raise DimensionMismatchError(f"a {self.degree}-form takes {self.degree} vectors")
        total: Number = ZERO
        for idx, value in self.coefficients.items():
            minor = small_determinant([[vectors[col][row] for col in range(self.degree)] for row in idx])
            if minor:
                total = total + value * minor
        return total

    def to_dict(self) -> Dict:
        """Serialized form: 1-based sorted indices, terms in monomial order."""
        order = monomial_index(self.dim, self.degree)
        terms = sorted(self.coefficients.items(), key=lambda item: order[item[0]])
        return {
            "degree": self.degree,
            "terms": [{"idx": [i + 1 for i in idx], "coeff": to_plain(v)} for idx, v in terms],
        }

    def pretty(self, names: Sequence[str]) -> str:
        """Readable rendering with lower-case dual names, e.g. ``(-1)*x^y``."""
        if not self.coefficients:
            return "0"
        order = monomial_index(self.dim, self.degree)
        parts = []
        for idx, value in sorted(self.coefficients.items(), key=lambda item: order[item[0]]):
            label = "^".join(names[i].lower() for i in idx) or "1"
            parts.append(f"({value})*{label}")
        return " + ".join(parts)


def dual_names(names: Sequence[str]) -> List[str]:
    return [name.lower() for name in names]


# ---------------------------------------------------------------------- operator matrices

def wedge_operator(theta: Sequence, k: int) -> Matrix:
    """Matrix of ``phi -> theta ^ phi`` from degree k to k + 1 for a 1-form ``theta``."""
    n = len(theta)
    source, target = monomials(n, k), monomial_index(n, k + 1)
    out = [[ZERO] * len(source) for _ in range(comb(n, k + 1) if k + 1 <= n else 0)]
    for col, idx in enumerate(source):
        for i, t in enumerate(theta):
            if not t:
                continue
            sign, new = sort_with_sign((i,) + idx)
            if sign:
                out[target[new]][col] = out[target[new]][col] + t * sign
    return Matrix(len(out), len(source), tuple(x for row in out for x in row))


def contraction_operator(v: Sequence, k: int) -> Matrix:
    """Matrix of the interior product ``phi -> iota_v phi`` from degree k to k - 1."""
    n = len(v)
    source = monomials(n, k)
    target = monomial_index(n, k - 1) if k >= 1 else {}
    rows = comb(n, k - 1) if k >= 1 else 0
    out = [[ZERO] * len(source) for _ in range(rows)]
    for col, idx in enumerate(source):
        for p, i in enumerate(idx):
            if not v[i]:
                continue
            rest = idx[:p] + idx[p + 1:]
            sign = -1 if p % 2 else 1
            out[target[rest]][col] = out[target[rest]][col] + v[i] * sign
    return Matrix(rows, len(source), tuple(x for row in out for x in row))


def derivation_extension(a: Matrix, k: int) -> Matrix:
    """
    Extension of an endomorphism ``a`` of covectors to degree k as a
    derivation: ``a(t_1^...^t_k) = sum_p t_1^...^a(t_p)^...^t_k``.
    """
    n = a.rows
    if a.shape != (n, n):
        raise DimensionMismatchError("derivation extension needs a square matrix")
    source, target = monomials(n, k), monomial_index(n, k)
    out = [[ZERO] * len(source) for _ in range(len(source))]
    columns = a.columns()
    for col, idx in enumerate(source):
        for p, i in enumerate(idx):
            for j, coeff in enumerate(columns[i]):
                if not coeff:
                    continue
                sign, new = sort_with_sign(idx[:p] + (j,) + idx[p + 1:])
                if sign:
                    out[target[new]][col] = out[target[new]][col] + coeff * sign
    return Matrix(len(source), len(source), tuple(x for row in out for x in row))
