"""Exact scalars, matrices and polynomial root counting."""

from .scalars import ComplexScalar, Scalar, I, ZERO, ONE, as_fraction, conj, format_rational, to_plain
from .matrix import (
    Matrix,
    Vector,
    char_poly,
    column_space,
    compound,
    determinant,
    gram_projection,
    inverse,
    is_positive_definite,
    rank,
    rref_kernel,
    solve,
    span_basis,
)
from .polynomials import all_roots_real, count_real_roots, rational_roots

__all__ = [
    "ComplexScalar",
    "Scalar",
    "I",
    "ZERO",
    "ONE",
    "as_fraction",
    "conj",
    "format_rational",
    "to_plain",
    "Matrix",
    "Vector",
    "char_poly",
    "column_space",
    "compound",
    "determinant",
    "gram_projection",
    "inverse",
    "is_positive_definite",
    "rank",
    "rref_kernel",
    "solve",
    "span_basis",
    "all_roots_real",
    "count_real_roots",
    "rational_roots",
]
