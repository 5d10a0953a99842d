"""Structural classification flags: abelian, nilpotent, solvable, unimodular, completely solvable."""

import logging
import random
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from ..config import settings
from ..exact.matrix import Matrix, Vector, basis_vector, char_poly, inverse, restricted_kernel
from ..exact.polynomials import all_roots_real, rational_roots
from .algebra import LieAlgebra

logger = logging.getLogger(__name__)


class SolvabilityProof(str, Enum):
    """How complete solvability was established."""
    PROVED = "proved"
    HEURISTIC_PASS = "heuristic-pass"
    FAIL = "fail"


@dataclass(frozen=True)
class ClassificationFlags:
    abelian: bool
    nilpotent: bool
    solvable: bool
    unimodular: bool
    completely_solvable: SolvabilityProof

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["completely_solvable"] = self.completely_solvable.value
        return out


def derived_series(L: LieAlgebra) -> List[int]:
    """Dimensions of ``g, [g,g], [[g,g],[g,g]], ...`` until they stabilize."""
    current = [L.vector(i) for i in range(L.dim)]
    dims = [len(current)]
    while current:
        nxt = L.bracket_span(current, current)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def lower_central_series(L: LieAlgebra) -> List[int]:
    """Dimensions of ``g, [g,g], [g,[g,g]], ...`` until they stabilize."""
    full = [L.vector(i) for i in range(L.dim)]
    current = full
    dims = [len(current)]
    while current:
        nxt = L.bracket_span(full, current)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def is_unimodular(L: LieAlgebra) -> bool:
    return all(L.ad_basis(i).trace() == 0 for i in range(L.dim))


def _panel(L: LieAlgebra, seed: int, factor: int, bound: int) -> List[tuple]:
    rng = random.Random(seed)
    panel = []
    while len(panel) < factor * L.dim:
        coeffs = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(L.dim))
        if any(coeffs):
            panel.append(coeffs)
    return panel


def _quotient_blocks(mats: Sequence[Matrix], v: Sequence) -> List[Matrix]:
    """Induced maps on ``V / <v>`` for a common eigenvector ``v``."""
    n = len(v)
    pivot = next(i for i, x in enumerate(v) if x)
    columns = [tuple(v)] + [basis_vector(n, j) for j in range(n) if j != pivot]
    p = Matrix.from_columns(columns)
    p_inv = inverse(p)
    idx = list(range(1, n))
    return [(p_inv @ m @ p).submatrix(idx, idx) for m in mats]


def _common_eigenvector(mats: Sequence[Matrix]) -> Optional[Vector]:
    """Depth-first search for a common eigenvector with rational eigenvalues."""
    n = mats[0].rows
    spectra = []
    for m in mats:
        roots = rational_roots(char_poly(m))
        if not roots:
            return None
        spectra.append(roots)
    ident = Matrix.identity(n)

    def search(depth: int, subspace: List[Vector]) -> Optional[Vector]:
        if depth == len(mats):
            return subspace[0]
        for lam in spectra[depth]:
            eigen = restricted_kernel(mats[depth] - ident.scale(lam), subspace)
            if eigen:
                found = search(depth + 1, eigen)
                if found is not None:
                    return found
        return None

    return search(0, [basis_vector(n, j) for j in range(n)])


def triangularizable(L: LieAlgebra) -> bool:
    """
    Whether all ``ad`` operators are simultaneously upper triangular over Q.

    Finds a common eigenvector, passes to the quotient and recurses.
    """
    mats = [L.ad_basis(i) for i in range(L.dim)]
    while mats and mats[0].rows > 0:
        if mats[0].rows == 1:
            return True
        v = _common_eigenvector(mats)
        if v is None:
            return False
        mats = _quotient_blocks(mats, v)
    return True


def completely_solvable(
    L: LieAlgebra,
    seed: Optional[int] = None,
    panel_factor: Optional[int] = None,
    coefficient_bound: Optional[int] = None,
) -> SolvabilityProof:
    """
    Stratified complete-solvability test.

    ``fail`` when some tested ``ad_X`` has a non-real eigenvalue,
    ``proved`` when additionally a rational triangularization exists,
    ``heuristic-pass`` otherwise.
    """
    seed = settings.random_seed if seed is None else seed
    panel_factor = settings.panel_factor if panel_factor is None else panel_factor
    coefficient_bound = settings.panel_coefficient_bound if coefficient_bound is None else coefficient_bound

    if derived_series(L)[-1] != 0:
        return SolvabilityProof.FAIL
    tested = [L.vector(i) for i in range(L.dim)] + _panel(L, seed, panel_factor, coefficient_bound)
    for x in tested:
        if not all_roots_real(char_poly(L.ad(x))):
            logger.debug("ad has a non-real eigenvalue at %s", x)
            return SolvabilityProof.FAIL
    if triangularizable(L):
        return SolvabilityProof.PROVED
    logger.warning("complete solvability of %s only established on the sampled panel", L.name or L.dim)
    return SolvabilityProof.HEURISTIC_PASS


def classify(L: LieAlgebra, seed: Optional[int] = None) -> ClassificationFlags:
    derived = derived_series(L)
    central = lower_central_series(L)
    abelian = not L.derived_algebra()
    nilpotent = central[-1] == 0
    solvable = derived[-1] == 0
    return ClassificationFlags(
        abelian=abelian,
        nilpotent=nilpotent,
        solvable=solvable,
        unimodular=is_unimodular(L),
        completely_solvable=completely_solvable(L, seed=seed),
    )
