# Charge Sectors
# ==============
# A two-site gate that conserves Q_1 + Q_2 is block diagonal: one block per
# total bond charge s = k1 + k2. This file enumerates those blocks.

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from qudit_state import DomainError


@dataclass(frozen=True)
class ChargeSector:
    """
    All digit pairs (k1, k2) with k1 + k2 = s, ordered by k1.

    For d=3 the sectors are
        s=0: (0,0)
        s=1: (0,1) (1,0)
        s=2: (0,2) (1,1) (2,0)
        s=3: (1,2) (2,1)
        s=4: (2,2)
    """
    s: int
    d: int
    basis: Tuple[Tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def indices(self) -> np.ndarray:
        """Positions of the basis pairs in the d*d two-site space (index k1*d + k2)."""
        return np.array([k1 * self.d + k2 for k1, k2 in self.basis], dtype=np.intp)


@lru_cache(maxsize=None)
def sector_decomposition(d: int) -> Tuple[ChargeSector, ...]:
    """
    The 2d - 1 charge sectors of two qudits.

    Args:
        d: Local dimension

    Returns:
        Sectors for s = 0..2(d-1), with dimensions 1, 2, ..., d, ..., 2, 1
    """
    if d < 2:
        raise DomainError(f"local dimension d must be >= 2, got {d}")

    sectors = []
    for s in range(2 * d - 1):
        basis = tuple((k1, s - k1) for k1 in range(d) if 0 <= s - k1 < d)
        sectors.append(ChargeSector(s=s, d=d, basis=basis))
    return tuple(sectors)


def sector_sorted_order(d: int) -> np.ndarray:
    """Two-site indices listed sector by sector; the basis in which a gate is block diagonal."""
    return np.concatenate([sector.indices for sector in sector_decomposition(d)])
