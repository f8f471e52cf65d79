# Schmidt Spectra
# ===============
# The eigenvalues of the reduced density matrix rho_A across a cut, obtained
# from the singular values of the reshaped amplitude matrix.

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from config import config
from qudit_state import DomainError, StateVector


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """
    Lambda_1 >= Lambda_2 >= ... > 0, summing to 1.

    Values below the clip threshold are dropped and the rest renormalized;
    clipped_mass records how much weight that removed.
    """
    values: np.ndarray
    cut: int
    clipped_mass: float = 0.0

    @classmethod
    def from_values(
        cls,
        values: Sequence[float],
        cut: int = 0,
        clip: Optional[float] = None,
    ) -> "SchmidtSpectrum":
        clip = config.tolerances.clip_threshold if clip is None else clip
        raw = np.sort(np.asarray(values, dtype=np.float64))[::-1]
        kept = raw[raw > clip]
        if kept.size == 0:
            raise DomainError("spectrum has no value above the clip threshold")
        total = float(raw.sum())
        clipped = float(raw[raw <= clip].sum())
        kept = kept / kept.sum()
        kept.setflags(write=False)
        return cls(values=kept, cut=cut, clipped_mass=clipped / total if total > 0 else 0.0)

    @property
    def rank(self) -> int:
        return int(self.values.size)

    @property
    def largest(self) -> float:
        return float(self.values[0])

    def schmidt_coefficients(self) -> np.ndarray:
        """lambda_i = sqrt(Lambda_i)."""
        return np.sqrt(self.values)


def spectrum_from_matrix(matrix: np.ndarray, cut: int = 0) -> SchmidtSpectrum:
    """Schmidt spectrum of a bipartite pure state given as an (A, B) amplitude matrix."""
    singular_values = np.linalg.svd(np.asarray(matrix), compute_uv=False)
    return SchmidtSpectrum.from_values(singular_values ** 2, cut=cut)


def schmidt_spectrum(psi: StateVector, cut: int) -> SchmidtSpectrum:
    """
    Spectrum of rho_A for A = sites 1..cut.

    Args:
        psi: Normalized state
        cut: Number of sites in A, 1..N-1

    Returns:
        SchmidtSpectrum in descending order
    """
    cfg = psi.config
    if not 1 <= cut <= cfg.N - 1:
        raise DomainError(f"cut must be in [1, {cfg.N - 1}], got {cut}")
    psi.require_normalized("schmidt_spectrum")
    # big-endian layout: the first `cut` sites are the row index
    matrix = psi.amplitudes.reshape(cfg.d ** cut, cfg.d ** (cfg.N - cut))
    return spectrum_from_matrix(matrix, cut=cut)


def schmidt_values(psi: StateVector, cut: int) -> np.ndarray:
    """
    Unclipped squared singular values across the cut, descending.

    Used where tiny trailing values are the quantity of interest, e.g. to
    show that a state has Schmidt rank one.
    """
    cfg = psi.config
    if not 1 <= cut <= cfg.N - 1:
        raise DomainError(f"cut must be in [1, {cfg.N - 1}], got {cut}")
    matrix = psi.amplitudes.reshape(cfg.d ** cut, cfg.d ** (cfg.N - cut))
    return np.linalg.svd(matrix, compute_uv=False) ** 2
