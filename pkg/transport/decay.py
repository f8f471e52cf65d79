# Bulk Charge Decay
# =================
# Start with no charge in a central region C of width m and measure the
# charge that reaches the middle site after t layers. Diffusive transport
# predicts log q ~ a - c m^2 / t; we fit c and report it, never assert a value.

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from circuit import sample_circuit, trajectory
from config import config
from qudit_state import (
    ChainConfig,
    DomainError,
    central_sites,
    charge_expectation,
    product_state,
    random_x_labels,
    with_zero_region,
)
from .ensemble import markov_exceedance, run_realizations
from .profile import ChargeProfile
from .random_walk import random_walk_oracle

logger = logging.getLogger(__name__)

Sample = Tuple[int, int, float]   # (m, t, q)


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of log q = intercept - slope * m^2 / t."""
    samples: Tuple[Sample, ...]
    slope: float
    intercept: float
    slope_ci: Tuple[float, float]   # 95% confidence interval
    residual: float                 # RMS of the log-space residuals
    n_points: int

    def to_report(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "slope_ci_low": self.slope_ci[0],
            "slope_ci_high": self.slope_ci[1],
            "residual": self.residual,
            "n_points": self.n_points,
        }


def fit_decay(samples: Iterable[Sample], noise_floor: Optional[float] = None) -> DecayFit:
    """
    Fit log q against m^2 / t using only points with t >= 1 and q above the noise floor.

    Raises:
        DomainError: fewer than 3 usable points
    """
    noise_floor = config.tolerances.noise_floor if noise_floor is None else noise_floor
    samples = tuple((int(m), int(t), float(q)) for m, t, q in samples)
    usable = [(m, t, q) for m, t, q in samples if t >= 1 and q > noise_floor]
    if len(usable) < 3:
        raise DomainError(
            f"need at least 3 points above the noise floor {noise_floor:g}, got {len(usable)}"
        )

    x = np.array([m * m / t for m, t, _ in usable])
    y = np.log([q for _, _, q in usable])
    result = stats.linregress(x, y)
    residuals = y - (result.intercept + result.slope * x)

    # slope of log q against x is -c
    half_width = stats.t.ppf(0.975, len(usable) - 2) * result.stderr
    slope = -float(result.slope)
    return DecayFit(
        samples=samples,
        slope=slope,
        intercept=float(result.intercept),
        slope_ci=(slope - half_width, slope + half_width),
        residual=float(np.sqrt(np.mean(residuals ** 2))),
        n_points=len(usable),
    )


def _widths(m: int, n_sites: int, widths: Optional[Sequence[int]]) -> List[int]:
    if m <= 0 or m % 2:
        raise DomainError(f"central width m must be a positive even integer, got {m}")
    if m >= n_sites:
        raise DomainError(f"central width m must be < N = {n_sites}, got {m}")
    chosen = list(widths) if widths is not None else list(range(2, m + 1, 2))
    for w in chosen:
        if w <= 0 or w % 2 or w >= n_sites:
            raise DomainError(f"every width must be even and in [2, {n_sites - 2}], got {w}")
    return chosen


def bulk_charge_series(
    chain: ChainConfig,
    m: int,
    t_max: int,
    n_samples: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    <Q_{N/2}>(t) for t = 0..t_max, one row per realization.

    Each realization draws a fresh circuit and fresh random X labels on D;
    C (the m central sites) starts in |0...0>.
    """
    region = central_sites(chain.N, m)
    site = chain.N // 2

    def one_run(index: int, gen: np.random.Generator) -> List[float]:
        labels = with_zero_region(random_x_labels(chain.N, chain.d, gen), region)
        circuit = sample_circuit(chain, t_max, gen)
        psi = product_state(labels, chain)
        return [charge_expectation(state, site) for state in trajectory(psi, circuit, t_max)]

    return np.array(run_realizations(one_run, n_samples, rng, desc=f"decay m={m}"))


def bulk_charge_decay(
    chain: ChainConfig,
    m: int,
    t_max: int,
    n_samples: int,
    rng: Optional[np.random.Generator] = None,
    widths: Optional[Sequence[int]] = None,
) -> DecayFit:
    """
    Sweep the central width and fit the decay of the middle-site charge.

    Args:
        chain: The chain
        m: Largest central width (even, < N); the sweep is 2, 4, ..., m unless widths is given
        t_max: Last time step
        n_samples: Circuit realizations per width
        rng: Seeds the realizations; defaults to chain.seed
        widths: Explicit list of widths to sweep

    Returns:
        DecayFit over all (m, t) points, with q the ensemble mean
    """
    rng = np.random.default_rng(chain.seed) if rng is None else rng
    samples: List[Sample] = []
    for width in _widths(m, chain.N, widths):
        runs = bulk_charge_series(chain, width, t_max, n_samples, rng)
        means = runs.mean(axis=0)
        samples.extend((width, t, float(means[t])) for t in range(t_max + 1))

        tail = runs[:, -1]
        if tail.mean() > 0:
            markov = markov_exceedance(tail, 2 * tail.mean())
            logger.info(
                "m=%d t=%d: mean q=%.3e, share above twice the mean %.3f (Markov bound %.3f)",
                width, t_max, tail.mean(), markov.fraction, markov.bound,
            )

    fit = fit_decay(samples)
    logger.info("✓ decay fit: c=%.4f +/- %.4f over %d points", fit.slope,
                (fit.slope_ci[1] - fit.slope_ci[0]) / 2, fit.n_points)
    return fit


def oracle_charge_decay(
    n_sites: int,
    d: int,
    widths: Sequence[int],
    times: Sequence[int],
) -> DecayFit:
    """
    The same sweep for the ensemble-averaged dynamics, with D fully charged.

    Uses the classical random-walk map, so chains far beyond statevector
    reach are fine.
    """
    if n_sites <= 0 or n_sites % 2:
        raise DomainError(f"N must be a positive even integer, got {n_sites}")
    site = n_sites // 2
    t_last = max(times)
    samples: List[Sample] = []
    for width in _widths(max(widths), n_sites, widths):
        initial = np.full(n_sites, float(d - 1))
        initial[np.array(central_sites(n_sites, width)) - 1] = 0.0
        profile = ChargeProfile(initial, time=0)
        history = {0: profile.at(site)}
        for t in range(1, t_last + 1):
            profile = random_walk_oracle(profile, 1)
            history[t] = profile.at(site)
        samples.extend((width, t, history[t]) for t in times)
    return fit_decay(samples)
