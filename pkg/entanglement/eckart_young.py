# Best Low-Rank Overlap
# =====================
# The largest overlap of a bipartite state with any normalized state of
# Schmidt rank <= D is sqrt(Lambda_1 + ... + Lambda_D), attained by the
# truncated Schmidt expansion. The two numerical searches below are
# independent checks of that closed form for D = 1.

from typing import Optional

import numpy as np

from qudit_state import DomainError
from .spectrum import SchmidtSpectrum


def eckart_young_overlap(spectrum: SchmidtSpectrum, D: int) -> float:
    """sqrt(sum_{i <= D} Lambda_i)."""
    if D < 1:
        raise DomainError(f"Schmidt rank D must be >= 1, got {D}")
    return float(np.sqrt(min(np.sum(spectrum.values[:D]), 1.0)))


def best_rank_one_overlap(
    matrix: np.ndarray,
    rng: np.random.Generator,
    max_iterations: int = 5000,
    tol: float = 1e-12,
) -> float:
    """
    max |<a (x) b|psi>| over unit vectors a, b by alternating maximization.

    With psi as the matrix M (rows A, columns B), <a (x) b|psi> = a^dagger M conj(b).
    Fixing one side, the best other side is M applied to it, normalized;
    alternating the two updates is a power iteration that converges to the
    top singular pair.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
    v /= np.linalg.norm(v)

    previous = -1.0
    overlap = 0.0
    for _ in range(max_iterations):
        u = m @ v
        u /= np.linalg.norm(u)
        v = m.conj().T @ u
        overlap = float(np.linalg.norm(v))
        v /= overlap
        if abs(overlap - previous) < tol:
            break
        previous = overlap
    return overlap


def random_product_overlap(
    matrix: np.ndarray,
    n_trials: int,
    rng: np.random.Generator,
    batch: Optional[int] = 10_000,
) -> float:
    """Best |<a (x) b|psi>| over n_trials random product states; never exceeds sqrt(Lambda_1)."""
    m = np.asarray(matrix, dtype=np.complex128)
    rows, cols = m.shape
    best = 0.0
    remaining = n_trials
    while remaining > 0:
        n = min(remaining, batch or remaining)
        a = rng.standard_normal((n, rows)) + 1j * rng.standard_normal((n, rows))
        b = rng.standard_normal((n, cols)) + 1j * rng.standard_normal((n, cols))
        a /= np.linalg.norm(a, axis=1, keepdims=True)
        b /= np.linalg.norm(b, axis=1, keepdims=True)
        overlaps = np.abs(np.einsum("ni,ij,nj->n", a.conj(), m, b))
        best = max(best, float(overlaps.max()))
        remaining -= n
    return best
