# Experiment Settings
# ===================
# What one run of the proof chain needs: the chain, how long to evolve, the
# width m of the uncharged central region C, the Renyi index and how m is
# chosen (fixed, or growing like c sqrt(t log t)).

import math
from dataclasses import dataclass
from typing import Optional

from qudit_state import ChainConfig, DomainError

MODES = ("fixed", "scaling")


def scaling_width(t: int, c: float, n_sites: int) -> int:
    """
    Smallest even integer >= c sqrt(t ln t), at least 2, at most N - 2.

    t = 0 and t = 1 give 2. The upper clamp keeps C inside the chain once
    the prescribed width outgrows it.
    """
    if t <= 1:
        return 2
    raw = c * math.sqrt(t * math.log(t))
    width = max(2, 2 * math.ceil(raw / 2))
    return min(width, n_sites - 2)


@dataclass(frozen=True)
class ExperimentSpec:
    config: ChainConfig
    t_max: int
    m: int
    alpha: float
    n_realizations: int = 1
    p_degree: int = 2
    mode: str = "fixed"
    scaling_c: float = 2.0
    log_base: Optional[float] = None

    def __post_init__(self):
        n_sites = self.config.N
        if n_sites % 4 != 2:
            raise DomainError(f"N must be 2 mod 4 so that N/2 is odd, got N={n_sites}")
        if self.t_max < 0:
            raise DomainError(f"depth must be >= 0, got {self.t_max}")
        if not self.alpha > 1:
            raise DomainError(f"Renyi index alpha must be > 1, got {self.alpha}")
        if self.n_realizations < 1:
            raise DomainError(f"realizations must be >= 1, got {self.n_realizations}")
        if self.p_degree < 1:
            raise DomainError(f"p_degree must be >= 1, got {self.p_degree}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "fixed" and (self.m <= 0 or self.m % 2 or self.m >= n_sites):
            raise DomainError(f"m must be even and in [2, {n_sites - 2}], got {self.m}")
        if self.mode == "scaling" and not self.scaling_c > 0:
            raise DomainError(f"scaling coefficient c must be > 0, got {self.scaling_c}")

    def width_at(self, t: int) -> int:
        if self.mode == "fixed":
            return self.m
        return scaling_width(t, self.scaling_c, self.config.N)

    def p_value(self, t: int) -> float:
        """p(t) = t^p_degree."""
        return float(t) ** self.p_degree
