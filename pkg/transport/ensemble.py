# Monte Carlo Ensembles
# =====================
# Independent circuit realizations with derived seeds, and ensemble-averaged
# charge profiles.

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, TypeVar

import numpy as np
from tqdm import tqdm

from circuit import sample_circuit, trajectory
from config import config
from qudit_state import ChainConfig, DomainError, LocalBasisLabel, product_state
from .profile import ChargeProfile, charge_profile

logger = logging.getLogger(__name__)

T = TypeVar("T")


def realization_generators(n: int, rng: np.random.Generator) -> List[np.random.Generator]:
    """n independent child generators spawned from one draw of rng."""
    # ============================================
    # PYTHON CONCEPT: SeedSequence.spawn
    # ============================================
    # spawn(n) derives n child seeds whose streams do not overlap. Child i
    # depends only on the root seed and i, so realization i sees the same
    # random numbers whichever thread runs it.
    root = np.random.SeedSequence(int(rng.integers(0, 2 ** 63)))
    return [np.random.default_rng(child) for child in root.spawn(n)]


def run_realizations(
    task: Callable[[int, np.random.Generator], T],
    n: int,
    rng: np.random.Generator,
    desc: str = "realizations",
) -> List[T]:
    """
    Run task(index, generator) for index = 0..n-1.

    With config.resources.workers > 1 the tasks run on a thread pool.
    Results always come back in index order, so reductions over them are
    the same for every worker count.
    """
    if n < 1:
        raise DomainError(f"number of realizations must be >= 1, got {n}")
    generators = realization_generators(n, rng)
    workers = max(1, config.resources.workers)
    progress = tqdm(total=n, desc=desc, disable=not config.output.progress, leave=False)

    def _run(index: int) -> T:
        result = task(index, generators[index])
        progress.update(1)
        return result

    try:
        if workers == 1:
            return [_run(i) for i in range(n)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run, range(n)))
    finally:
        progress.close()


def mean_and_stderr(samples: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Mean over axis 0 and its standard error (zero for a single sample)."""
    samples = np.asarray(samples, dtype=np.float64)
    mean = samples.mean(axis=0)
    if samples.shape[0] < 2:
        return mean, np.zeros_like(mean)
    return mean, samples.std(axis=0, ddof=1) / np.sqrt(samples.shape[0])


class EnsembleProfile(NamedTuple):
    profile: ChargeProfile
    stderr: np.ndarray


def ensemble_profile_series(
    chain: ChainConfig,
    initial: Sequence[LocalBasisLabel],
    t_max: int,
    n_samples: int,
    rng: Optional[np.random.Generator] = None,
) -> List[EnsembleProfile]:
    """
    Mean charge profile at every t = 0..t_max over independent circuits.

    Args:
        chain: The chain
        initial: Product-state labels, one per site
        t_max: Last time step
        n_samples: Number of circuit realizations
        rng: Seeds the realizations; defaults to chain.seed

    Returns:
        One EnsembleProfile per time step
    """
    rng = np.random.default_rng(chain.seed) if rng is None else rng
    psi = product_state(initial, chain)

    def one_run(index: int, gen: np.random.Generator) -> np.ndarray:
        circuit = sample_circuit(chain, t_max, gen)
        return np.array([charge_profile(state).values for state in trajectory(psi, circuit, t_max)])

    runs = np.array(run_realizations(one_run, n_samples, rng, desc="transport"))
    mean, stderr = mean_and_stderr(runs)
    logger.info("✓ averaged %d realizations up to t=%d", n_samples, t_max)
    return [EnsembleProfile(ChargeProfile(mean[t], time=t), stderr[t]) for t in range(t_max + 1)]


def ensemble_average_profile(
    chain: ChainConfig,
    initial: Sequence[LocalBasisLabel],
    t: int,
    n_samples: int,
    rng: Optional[np.random.Generator] = None,
) -> EnsembleProfile:
    """Mean profile at time t and its per-site standard error."""
    return ensemble_profile_series(chain, initial, t, n_samples, rng)[-1]


class MarkovCheck(NamedTuple):
    fraction: float   # share of samples above the threshold
    bound: float      # mean / threshold
    holds: bool


def markov_exceedance(values: Sequence[float], threshold: float) -> MarkovCheck:
    """
    Markov's inequality on non-negative samples: Pr(q > a) <= E[q] / a.

    This is the step that turns a small ensemble-averaged charge into
    "small charge with high probability" for a single circuit.
    """
    if threshold <= 0:
        raise DomainError(f"Markov threshold must be > 0, got {threshold}")
    values = np.asarray(values, dtype=np.float64)
    fraction = float(np.mean(values > threshold))
    bound = float(values.mean() / threshold)
    return MarkovCheck(fraction, bound, fraction <= bound + config.tolerances.assertion)
