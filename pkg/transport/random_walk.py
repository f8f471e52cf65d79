# Ensemble-Averaged Charge Dynamics
# =================================
# Averaged over Haar-random charge-conserving gates, the mean charge profile
# evolves as an unbiased random walk.
#
# WHY IS THE MAP EXACT?
# Averaging U rho U^dagger over a Haar block leaves the block's total weight
# and spreads it uniformly over the sector basis; cross-sector coherences
# average to zero because different blocks are independent. Every sector
# basis is swap-symmetric, so each site of the pair ends up with half the
# bond charge:  (q_i, q_i+1) -> ((q_i + q_i+1)/2, (q_i + q_i+1)/2).

import numpy as np

from qudit_state import DomainError
from .profile import ChargeProfile


def average_bonds(values: np.ndarray, start: int) -> np.ndarray:
    """Replace each pair (start, start+1), (start+2, start+3), ... (0-based) by its mean."""
    out = values.copy()
    n_pairs = (len(values) - start) // 2
    stop = start + 2 * n_pairs
    pairs = out[start:stop].reshape(n_pairs, 2)
    out[start:stop] = np.repeat(pairs.mean(axis=1), 2)
    return out


def random_walk_oracle(profile: ChargeProfile, t: int) -> ChargeProfile:
    """
    Apply t brickwork steps of the ensemble-average map.

    Args:
        profile: Initial mean charge per site (even length)
        t: Number of layers

    Returns:
        ChargeProfile at time profile.time + t
    """
    if t < 0:
        raise DomainError(f"number of steps must be >= 0, got {t}")
    values = np.array(profile.values, dtype=np.float64)
    if len(values) % 2:
        raise DomainError(f"profile length must be even, got {len(values)}")

    for _ in range(t):
        values = average_bonds(values, 0)   # odd bonds (1,2), (3,4), ...
        values = average_bonds(values, 1)   # even bonds (2,3), ..., (N-2,N-1)
    return ChargeProfile(values, time=profile.time + t)


if __name__ == "__main__":
    # python -m transport.random_walk
    start = ChargeProfile(np.eye(12)[5], time=0)
    for steps in (1, 2, 4, 8):
        late = random_walk_oracle(start, steps)
        print(f"t={steps:>2}  " + " ".join(f"{q:.3f}" for q in late.values) + f"  total={late.total:.3f}")
