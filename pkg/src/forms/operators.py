"""Degree-shifting linear operators on the exterior algebra, one matrix per source degree."""

from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, Optional, Sequence, Tuple

from ..errors import DimensionMismatchError
from ..exact.matrix import Matrix
from ..exact.scalars import ZERO, Number
from .exterior import Index, monomials


def degree_size(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


@dataclass(frozen=True)
class GradedOperator:
    """
    ``blocks[k]`` is the matrix from degree ``k`` to degree ``k + shift``.

    Blocks whose target degree is out of range have zero rows.
    """
    dim: int
    shift: int
    blocks: Tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.blocks) != self.dim + 1:
            raise DimensionMismatchError(f"graded operator needs {self.dim + 1} blocks")
        for k, block in enumerate(self.blocks):
            expected = (degree_size(self.dim, k + self.shift), degree_size(self.dim, k))
            if block.shape != expected:
                raise DimensionMismatchError(f"block {k} has shape {block.shape}, expected {expected}")

    # ------------------------------------------------------------------ builders

    @classmethod
    def from_blocks(cls, dim: int, shift: int, blocks: Dict[int, Matrix]) -> "GradedOperator":
        """Missing degrees are filled with zero blocks."""
        out = []
        for k in range(dim + 1):
            block = blocks.get(k)
            if block is None:
                block = Matrix.zeros(degree_size(dim, k + shift), degree_size(dim, k))
            out.append(block)
        return cls(dim, shift, tuple(out))

    @classmethod
    def zero(cls, dim: int, shift: int) -> "GradedOperator":
        return cls.from_blocks(dim, shift, {})

    @classmethod
    def identity(cls, dim: int) -> "GradedOperator":
        return cls(dim, 0, tuple(Matrix.identity(degree_size(dim, k)) for k in range(dim + 1)))

    @classmethod
    def per_degree(cls, dim: int, shift: int, build: Callable[[int], Matrix]) -> "GradedOperator":
        return cls.from_blocks(
            dim, shift, {k: build(k) for k in range(dim + 1) if 0 <= k + shift <= dim}
        )

    # ------------------------------------------------------------------ access

    def block(self, k: int) -> Matrix:
        """Block at source degree ``k``; an empty matrix outside ``0..dim``."""
        if 0 <= k <= self.dim:
            return self.blocks[k]
        return Matrix.zeros(degree_size(self.dim, k + self.shift), 0)

    def apply(self, k: int, vector: Sequence) -> Tuple[Number, ...]:
        return self.block(k).apply(vector)

    # ------------------------------------------------------------------ algebra

    def _check(self, other: "GradedOperator") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError("operators on different exterior algebras")

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        """Composition ``self o other``."""
        self._check(other)
        shift = self.shift + other.shift
        return GradedOperator.from_blocks(
            self.dim,
            shift,
            {
                k: self.block(k + other.shift) @ other.block(k)
                for k in range(self.dim + 1)
                if 0 <= k + other.shift <= self.dim and 0 <= k + shift <= self.dim
            },
        )

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._check(other)
        if self.shift != other.shift:
            raise DimensionMismatchError("cannot add operators of different degree")
        return GradedOperator(self.dim, self.shift, tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(self.dim, self.shift, tuple(-b for b in self.blocks))

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        return self + (-other)

    def scale(self, c: Number) -> "GradedOperator":
        return GradedOperator(self.dim, self.shift, tuple(b.scale(c) for b in self.blocks))

    def anticommutator(self, other: "GradedOperator") -> "GradedOperator":
        return self @ other + other @ self

    def adjoint(self, grams: Sequence[Matrix], grams_inv: Sequence[Matrix]) -> "GradedOperator":
        """
        Adjoint for the inner products ``<a, b>_k = a^H G_k b``:
        ``A* = G_src^-1 A^H G_tgt`` on every degree.
        """
        return GradedOperator.per_degree(
            self.dim,
            -self.shift,
            lambda j: grams_inv[j - self.shift] @ self.block(j - self.shift).conjugate_transpose() @ grams[j],
        )

    def conjugate_by(self, forward: Sequence[Matrix], backward: Sequence[Matrix]) -> "GradedOperator":
        """Change of basis ``backward[k+s] A_k forward[k]``."""
        return GradedOperator.per_degree(
            self.dim, self.shift, lambda k: backward[k + self.shift] @ self.block(k) @ forward[k]
        )

    def select(self, keep: Callable[[Index, Index], bool], basis: Optional[Callable[[int], Sequence[Index]]] = None) -> "GradedOperator":
        """
        Keep the entries whose (target, source) monomials satisfy ``keep``;
        the rest are set to zero.
        """
        basis = basis or (lambda k: monomials(self.dim, k))

        def build(k: int) -> Matrix:
            block = self.block(k)
            targets, sources = basis(k + self.shift), basis(k)
            entries = tuple(
                block[i, j] if keep(targets[i], sources[j]) else ZERO
                for i in range(block.rows)
                for j in range(block.cols)
            )
            return Matrix(block.rows, block.cols, entries)

        return GradedOperator.per_degree(self.dim, self.shift, build)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def first_difference(self, other: "GradedOperator") -> Optional[Tuple[int, int, int, Number, Number]]:
        """First ``(degree, row, col, self, other)`` where the operators differ."""
        self._check(other)
        if self.shift != other.shift:
            raise DimensionMismatchError("cannot compare operators of different degree")
        for k, (a, b) in enumerate(zip(self.blocks, other.blocks)):
            if a.shape[0] and a.shape[1]:
                diff = a.first_difference(b)
                if diff is not None:
                    return (k,) + diff
        return None
