# Charge Profiles
# ===============
# Per-site charge <Q_i> of a state, and the single-site inequality
# ||(1 - |0><0|_i) psi||^2 <= <Q_i> that turns charge decay into a bound on
# how far the state is from |0> at site i.

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from config import config
from qudit_state import StateVector, project_local_zero, site_distribution


@dataclass(frozen=True, eq=False)
class ChargeProfile:
    """<Q_1>, ..., <Q_N> at one time step."""
    values: np.ndarray
    time: int = 0

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def total(self) -> float:
        return float(self.values.sum())

    def at(self, site: int) -> float:
        return float(self.values[site - 1])


def charge_profile(psi: StateVector, time: int = 0) -> ChargeProfile:
    """Per-site charge expectations of a normalized state."""
    psi.require_normalized("charge_profile")
    cfg = psi.config
    charges = np.arange(cfg.d)
    values = [float(np.dot(charges, site_distribution(psi, site))) for site in range(1, cfg.N + 1)]
    return ChargeProfile(np.array(values), time=time)


class ConditionCheck(NamedTuple):
    lhs: float    # ||(1 - |0><0|_site) psi||^2
    rhs: float    # <psi|Q_site|psi>
    holds: bool


def condition_inequality_check(psi: StateVector, site: int, slack: float = None) -> ConditionCheck:
    """
    Compare the weight off |0> at a site with the charge there.

    1 - |0><0| <= Q as operators for every d >= 2, so this always holds;
    a failure means a bug.
    """
    slack = config.tolerances.assertion if slack is None else slack
    weights = site_distribution(psi, site)
    _, kept = project_local_zero(psi, [site])
    lhs = float(psi.norm ** 2 - kept)
    rhs = float(np.dot(np.arange(psi.config.d), weights))
    return ConditionCheck(lhs, rhs, lhs <= rhs + slack)
