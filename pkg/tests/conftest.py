"""Shared fixtures: catalogue entries, seeded generators and JSON files on disk."""

import json
import random
from fractions import Fraction

import pytest

from src import catalogue
from src.config import settings
from src.exact.matrix import Matrix, determinant
from src.lie.algebra import LieAlgebra, semidirect_extend


@pytest.fixture
def rng():
    return random.Random(settings.random_seed)


@pytest.fixture
def torus3():
    return catalogue.get("torus(3)")


@pytest.fixture
def marrero1():
    return catalogue.get("marrero(1,1)")


@pytest.fixture
def heisenberg():
    return catalogue.get("heisenberg3")


@pytest.fixture
def kahler_aff():
    return catalogue.get("kahler_aff")


@pytest.fixture
def hyperbolic():
    return catalogue.get("hyperbolic_cosymplectic")


@pytest.fixture
def write_json(tmp_path):
    """Write a payload under ``tmp_path`` and return the path."""

    def _write(name, payload):
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
        return path

    return _write


HEISENBERG_JSON = {
    "dim": 3,
    "basis": ["X", "Y", "Z"],
    "brackets": [{"i": 1, "j": 2, "coeffs": {"3": 1}}],
    "name": "heisenberg3",
}

MARRERO_JSON = {
    "dim": 3,
    "basis": ["X", "Y", "Z"],
    "brackets": [
        {"i": 1, "j": 3, "coeffs": {"2": 1}},
        {"i": 2, "j": 3, "coeffs": {"1": -1}},
    ],
    "name": "marrero",
}

REEB_STRUCTURE_JSON = {
    "J": [[0, -1, 0], [1, 0, 0], [0, 0, 0]],
    "xi": [0, 0, 1],
    "alpha": [0, 0, 1],
    "g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
}

NOT_JACOBI_JSON = {
    "dim": 3,
    "brackets": [
        {"i": 1, "j": 2, "coeffs": {"3": 1}},
        {"i": 1, "j": 3, "coeffs": {"1": 1}},
    ],
}


# ---------------------------------------------------------------------- seeded generators

def random_fraction(rng, bound=2):
    return Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2)))


def random_vector(rng, n, bound=2):
    return tuple(random_fraction(rng, bound) for _ in range(n))


def random_matrix(rng, rows, cols=None, bound=2):
    cols = rows if cols is None else cols
    return Matrix.from_rows([[random_fraction(rng, bound) for _ in range(cols)] for _ in range(rows)])


def random_invertible(rng, n, bound=2):
    while True:
        m = random_matrix(rng, n, bound=bound)
        if determinant(m) != 0:
            return m


def random_metric(rng, n, bound=1):
    """``A^T A + I``: symmetric positive definite with small rational entries."""
    a = random_matrix(rng, n, bound=bound)
    return a.transpose() @ a + Matrix.identity(n)


def random_heisenberg_derivation(rng, traceless=False):
    a, b, c, d, e, f = (random_fraction(rng) for _ in range(6))
    if traceless:
        d = -a
    return Matrix.from_columns([(a, c, e), (b, d, f), (0, 0, a + d)])


def random_lie_algebra(rng, max_dim, unimodular=False):
    """
    ``R^m`` or the Heisenberg algebra extended by a random derivation,
    of dimension at most ``max_dim``; ``unimodular`` makes the derivation
    traceless.
    """
    if max_dim >= 4 and rng.random() < 0.5:
        base = LieAlgebra.from_brackets(("X", "Y", "Z"), {(0, 1): {2: 1}}, name="heisenberg3")
        D = random_heisenberg_derivation(rng, traceless=unimodular)
    else:
        base = LieAlgebra.abelian(rng.randint(1, max_dim - 1))
        D = random_matrix(rng, base.dim)
        if unimodular:
            D = D - Matrix.identity(base.dim).scale(D.trace() / base.dim)
    return semidirect_extend(base, D, name=f"{base.name} + xi")
