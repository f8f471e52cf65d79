# Entanglement Entropies
# ======================
# Renyi, min- and von Neumann entropies of a Schmidt spectrum, and the
# sandwich R_inf <= R_alpha <= alpha/(alpha-1) R_inf for alpha > 1.
#
# The logarithm base only rescales every entropy; it defaults to e and is
# recorded in every output record.

import math
from typing import NamedTuple, Optional

import numpy as np

from config import config
from qudit_state import DomainError
from .spectrum import SchmidtSpectrum


def _log(x, base: Optional[float]):
    base = config.experiment.log_base if base is None else base
    if base <= 0 or base == 1:
        raise DomainError(f"log base must be positive and != 1, got {base}")
    return np.log(x) / math.log(base)


def _check_nonempty(spectrum: SchmidtSpectrum) -> None:
    if spectrum.values.size == 0:
        raise DomainError("entropy of an empty spectrum")


def von_neumann(spectrum: SchmidtSpectrum, base: Optional[float] = None) -> float:
    """-sum Lambda_i log Lambda_i; clipped values count as 0 log 0 = 0."""
    _check_nonempty(spectrum)
    values = spectrum.values
    return float(max(-np.sum(values * _log(values, base)), 0.0))


def min_entropy(spectrum: SchmidtSpectrum, base: Optional[float] = None) -> float:
    """R_inf = -log Lambda_1."""
    _check_nonempty(spectrum)
    return float(max(-_log(spectrum.largest, base), 0.0))


def renyi_entropy(spectrum: SchmidtSpectrum, alpha: float, base: Optional[float] = None) -> float:
    """
    R_alpha = log(sum Lambda_i^alpha) / (1 - alpha).

    Args:
        spectrum: Schmidt spectrum
        alpha: Renyi index, alpha > 0 and alpha != 1
        base: Logarithm base (default from config)

    Raises:
        DomainError: alpha <= 0 or alpha == 1 (use von_neumann)
    """
    _check_nonempty(spectrum)
    if alpha <= 0:
        raise DomainError(f"Renyi index must be > 0, got {alpha}")
    if alpha == 1:
        raise DomainError("Renyi index 1 is the von Neumann entropy; call von_neumann()")
    if math.isinf(alpha):
        return min_entropy(spectrum, base)
    # 1/(1 - alpha) cancels catastrophically next to 1
    if abs(alpha - 1) < config.tolerances.alpha_one_window:
        return von_neumann(spectrum, base)

    # factor out Lambda_1^alpha so large alpha does not underflow the sum
    values = spectrum.values
    ratio_sum = float(np.sum((values / values[0]) ** alpha))
    log_trace = alpha * _log(values[0], base) + _log(ratio_sum, base)
    return float(max(log_trace / (1 - alpha), 0.0))


def entropy(spectrum: SchmidtSpectrum, alpha: float, base: Optional[float] = None) -> float:
    """Any member of the family: alpha == 1 is von Neumann, alpha == inf is the min-entropy."""
    if alpha == 1:
        return von_neumann(spectrum, base)
    if math.isinf(alpha):
        return min_entropy(spectrum, base)
    return renyi_entropy(spectrum, alpha, base)


class EntropySandwich(NamedTuple):
    lhs: float    # R_inf
    mid: float    # R_alpha
    rhs: float    # alpha/(alpha-1) R_inf
    holds: bool


def check_entropy_sandwich(
    spectrum: SchmidtSpectrum,
    alpha: float,
    base: Optional[float] = None,
    slack: Optional[float] = None,
) -> EntropySandwich:
    """Evaluate R_inf <= R_alpha <= alpha/(alpha-1) R_inf for alpha > 1."""
    if not alpha > 1:
        raise DomainError(f"the entropy sandwich needs alpha > 1, got {alpha}")
    slack = config.tolerances.assertion if slack is None else slack
    lhs = min_entropy(spectrum, base)
    mid = renyi_entropy(spectrum, alpha, base)
    rhs = alpha / (alpha - 1) * lhs
    holds = lhs <= mid + slack and mid <= rhs + slack
    return EntropySandwich(lhs, mid, rhs, holds)


if __name__ == "__main__":
    # python -m entanglement.entropy
    spectrum = SchmidtSpectrum.from_values([0.7, 0.3])
    print(f"R_2     = {renyi_entropy(spectrum, 2.0):.6f}  (-log 0.58 = {-math.log(0.58):.6f})")
    print(f"S_vN    = {von_neumann(spectrum):.6f}")
    print(f"R_inf   = {min_entropy(spectrum):.6f}")
    print(check_entropy_sandwich(spectrum, 2.0))
