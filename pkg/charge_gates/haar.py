# Haar-Random Unitaries
# =====================
# Draw an n x n unitary from the Haar measure.

import numpy as np

from qudit_state import DomainError


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """
    Sample a Haar-random n x n unitary.

    THE ALGORITHM:
    1. Fill an n x n matrix with independent standard complex Gaussians
       (the Ginibre ensemble).
    2. QR-factorize it.
    3. Q alone is not Haar distributed, because the QR routine fixes the
       phases of R's diagonal. Multiply column j of Q by r_jj / |r_jj|.

    Args:
        n: Matrix size (>= 1)
        rng: Random generator

    Returns:
        Complex unitary matrix of shape (n, n)
    """
    if n < 1:
        raise DomainError(f"unitary size must be >= 1, got {n}")

    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diagonal = np.diag(r)
    phases = diagonal / np.abs(diagonal)
    return q * phases[np.newaxis, :]
