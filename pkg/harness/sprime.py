# The Good Initial States S'
# ==========================
# Fix the circuit and the labels on D. The d^m ways to fill C with X-basis
# states form an orthonormal family S. Most of them have a small overlap
# with U^dagger Delta_t, and Markov's inequality says how many:
#   |S'| / |S| >= 1 - 1/p(t),
#   S' = { psi in S : |<Delta_t|U psi>| <= d^(-m/2) ||Delta_t|| sqrt(p(t)) }.

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from circuit import deviation_state, evolve_adjoint, modify_circuit, sample_circuit
from config import config
from qudit_state import (
    LocalBasisLabel,
    ResourceLimitError,
    StateVector,
    central_sites,
    local_vector,
    product_state,
    random_x_labels,
    with_zero_region,
    x_eigenstate,
)
from .experiment import ExperimentSpec

logger = logging.getLogger(__name__)

S_PRIME_COLUMNS = (
    "m", "t", "p_value", "threshold", "fraction", "markov_floor", "n_members",
    "delta_norm", "mean_square", "markov_holds", "bessel_holds",
)


@dataclass(frozen=True)
class SPrimeReport:
    m: int
    t: int
    p_value: float
    threshold: float      # d^(-m/2) ||Delta_t|| sqrt(p)
    fraction: float       # |S'| / |S|
    markov_floor: float   # 1 - 1/p
    n_members: int        # |S| = d^m
    delta_norm: float
    mean_square: float    # sum over S of |<Delta_t|U psi>|^2, at most ||Delta_t||^2
    markov_holds: bool
    bessel_holds: bool

    @property
    def holds(self) -> bool:
        return self.markov_holds and self.bessel_holds

    def to_row(self) -> dict:
        return {c: getattr(self, c) for c in S_PRIME_COLUMNS}


def region_overlaps(
    phi: StateVector,
    labels: List[LocalBasisLabel],
    region: List[int],
) -> np.ndarray:
    """
    <phi|psi_k> for every X-basis filling k of the region, other sites fixed by labels.

    Returns:
        Array of shape (d,) * len(region); entry [k_1, ..., k_m] belongs to the
        filling with X(k_j) on the j-th region site.
    """
    chain = phi.config
    d = chain.d
    tensor = phi.tensor().conj()

    # contract the fixed sites from the right so lower axes keep their numbers
    inside = set(region)
    for site in range(chain.N, 0, -1):
        if site not in inside:
            tensor = np.tensordot(tensor, local_vector(labels[site - 1], d), axes=([site - 1], [0]))

    # column k of fourier is |k)
    fourier = np.stack([x_eigenstate(k, d) for k in range(d)], axis=1)
    for _ in region:
        # contracting axis 0 and appending the new one rotates the axes;
        # after len(region) steps they are back in order
        tensor = np.tensordot(tensor, fourier, axes=([0], [0]))
    return tensor


def enumerate_s_prime(
    spec: ExperimentSpec,
    t: int,
    rng: Optional[np.random.Generator] = None,
) -> SPrimeReport:
    """
    Enumerate S for one circuit and one psi_ini on D.

    Args:
        spec: Experiment settings (m, p_degree)
        t: Time step
        rng: Draws the circuit and the labels on D; defaults to spec.config.seed

    Raises:
        ResourceLimitError: d^m above the enumeration cap
    """
    chain = spec.config
    m = spec.width_at(t)
    n_members = chain.d ** m
    cap = config.resources.enumeration_cap
    if n_members > cap:
        raise ResourceLimitError(f"|S| = {chain.d}^{m} = {n_members} exceeds the cap of {cap}")

    logger.info("⏳ enumerating %d members of S at t=%d", n_members, t)
    rng = np.random.default_rng(chain.seed) if rng is None else rng
    circuit = sample_circuit(chain, t, rng)
    v = modify_circuit(circuit)
    region = central_sites(chain.N, m)
    labels = random_x_labels(chain.N, chain.d, rng)
    psi_0 = product_state(with_zero_region(labels, region), chain)

    delta, delta_norm = deviation_state(circuit, v, psi_0, t)
    # <Delta_t|U psi> = <U^dagger Delta_t|psi>, one adjoint evolution for all of S
    pulled_back = evolve_adjoint(delta, circuit, t)
    overlaps = np.abs(region_overlaps(pulled_back, labels, region)).reshape(-1)

    p_value = spec.p_value(t)
    threshold = chain.d ** (-m / 2) * delta_norm * math.sqrt(p_value)
    fraction = float(np.mean(overlaps <= threshold))
    markov_floor = 1 - 1 / p_value if p_value > 0 else -math.inf
    mean_square = float(np.sum(overlaps ** 2))

    report = SPrimeReport(
        m=m,
        t=t,
        p_value=p_value,
        threshold=threshold,
        fraction=fraction,
        markov_floor=markov_floor,
        n_members=n_members,
        delta_norm=delta_norm,
        mean_square=mean_square,
        markov_holds=fraction >= markov_floor - config.tolerances.identity,
        bessel_holds=mean_square <= delta_norm ** 2 + config.tolerances.assertion,
    )
    logger.info("✓ S' at t=%d: %d/%d members (floor %.4f)", t,
                round(fraction * n_members), n_members, markov_floor)
    return report
