# Single-Site Operators
# =====================
# Dense d x d matrices for the charge, spin-z and generalized Pauli X
# operators. The simulator never builds them on the full chain; they are
# used by tests and by the dense oracles.

import numpy as np

from .errors import DomainError


def _check_dimension(d: int) -> None:
    if d < 2:
        raise DomainError(f"local dimension d must be >= 2, got {d}")


def spin_z_eigenvalue(k: int, d: int) -> float:
    """S^z |k> = ((d - 1)/2 - k) |k>."""
    _check_dimension(d)
    if not 0 <= k < d:
        raise DomainError(f"basis label k must be in [0, {d - 1}], got {k}")
    return (d - 1) / 2 - k


def charge_operator(d: int) -> np.ndarray:
    """Q = (d - 1)/2 - S^z, diagonal with entries 0..d-1."""
    _check_dimension(d)
    return np.diag(np.arange(d)).astype(np.complex128)


def spin_z_operator(d: int) -> np.ndarray:
    _check_dimension(d)
    return np.diag([(d - 1) / 2 - k for k in range(d)]).astype(np.complex128)


def shift_operator(d: int) -> np.ndarray:
    """X|k> = |k + 1 mod d>."""
    _check_dimension(d)
    return np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
