"""Real-root counting for rational polynomials (Sturm sequences via sympy)."""

from fractions import Fraction
from typing import Dict, List, Sequence

import sympy as sp
from sympy import Poly, Rational

from .matrix import Matrix
from .scalars import ZERO

_x = sp.Symbol("x")


def to_poly(coeffs: Sequence) -> Poly:
    """Build a sympy ``Poly`` over QQ from coefficients, leading term first."""
    return Poly([Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coeffs], _x, domain="QQ")


def _from_sympy(c) -> Fraction:
    c = Rational(c)
    return Fraction(int(c.p), int(c.q))


def _sign_changes(values: List) -> int:
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def _sign_at_infinity(p: Poly, positive: bool) -> int:
    lc = p.LC()
    s = 1 if lc > 0 else -1
    if not positive and p.degree() % 2 == 1:
        s = -s
    return s


def count_real_roots(coeffs: Sequence) -> int:
    """
    Number of distinct real roots, from the sign changes of the Sturm
    sequence at minus and plus infinity.

    Raises:
        ValueError: the zero polynomial
    """
    p = to_poly(coeffs)
    if p.is_zero:
        raise ValueError("the zero polynomial has no finite root count")
    if p.degree() == 0:
        return 0
    sequence = [q for q in p.sturm() if not q.is_zero]
    at_minus = [_sign_at_infinity(q, positive=False) for q in sequence]
    at_plus = [_sign_at_infinity(q, positive=True) for q in sequence]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def all_roots_real(coeffs: Sequence) -> bool:
    """Whether every root, counted with multiplicity, is real (square-free factorization)."""
    p = to_poly(coeffs)
    if p.is_zero:
        raise ValueError("the zero polynomial has no finite root count")
    _, factors = p.sqf_list()
    real = 0
    for factor, multiplicity in factors:
        real += multiplicity * count_real_roots([_from_sympy(c) for c in factor.all_coeffs()])
    return real == p.degree()


def rational_roots(coeffs: Sequence) -> List[Fraction]:
    """
    Distinct rational roots, by the rational root theorem.

    Candidates ``p/q`` have ``p`` dividing the trailing and ``q`` the
    leading coefficient of the integer-scaled polynomial.
    """
    poly = to_poly(coeffs)
    if poly.is_zero:
        raise ValueError("the zero polynomial has every root")
    _, integral = poly.clear_denoms()
    ints = [int(c) for c in integral.all_coeffs()]
    roots: List[Fraction] = []
    while ints and ints[-1] == 0:
        ints.pop()
        if ZERO not in roots:
            roots.append(ZERO)
    if len(ints) <= 1:
        return sorted(roots)
    lead, trail = abs(ints[0]), abs(ints[-1])
    for num in sp.divisors(trail):
        for den in sp.divisors(lead):
            for candidate in (Fraction(num, den), Fraction(-num, den)):
                if candidate not in roots and evaluate(ints, candidate) == 0:
                    roots.append(candidate)
    return sorted(roots)


def evaluate(coeffs: Sequence, value) -> Fraction:
    """Horner evaluation, leading coefficient first."""
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * value + c
    return acc


def evaluate_at_matrix(coeffs: Sequence, m: Matrix) -> Matrix:
    """``p(m)`` by Horner's rule."""
    acc = Matrix.zeros(m.rows, m.cols)
    ident = Matrix.identity(m.rows)
    for c in coeffs:
        acc = acc @ m + ident.scale(c)
    return acc


def root_multiplicities(coeffs: Sequence) -> Dict[int, int]:
    """Map multiplicity -> degree of the square-free part carrying it."""
    _, factors = to_poly(coeffs).sqf_list()
    return {multiplicity: factor.degree() for factor, multiplicity in factors}
