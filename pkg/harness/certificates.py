# Proof-Chain Certificates
# ========================
# Runs the argument behind the entropy bound on one concrete circuit and
# initial state, and records every inequality it uses.
#
# THE CHAIN, for psi_ini a random X-basis product state:
#   psi_0 = |0...0> on C, psi_ini elsewhere      |<psi_0|psi_ini>| = d^(-m/2)
#   unitarity                                    |<U psi_0, U psi_ini>| = d^(-m/2)      (a)
#   Delta_t = U psi_0 - V psi_0                  |<V psi_0, U psi_ini>| >= d^(-m/2) - ||Delta_t||   (b)
#   V psi_0 has Schmidt rank 1                   lambda_1 >= |<V psi_0, U psi_ini>|     (c)
#   entropy sandwich                             R_alpha <= alpha/(alpha-1) R_inf = -2alpha/(alpha-1) log lambda_1   (d)
#   combine                                      R_alpha <= -2alpha/(alpha-1) log lambda_1_lower                      (e)

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterator, List, Optional

import numpy as np

from circuit import (
    BrickworkCircuit,
    ModifiedCircuit,
    apply_layer,
    apply_modified_layer,
    modify_circuit,
    sample_circuit,
)
from config import config
from entanglement import min_entropy, renyi_entropy, schmidt_spectrum, schmidt_values
from qudit_state import (
    LocalBasisLabel,
    StateVector,
    central_sites,
    charge_expectation,
    inner_product,
    product_state,
    random_x_labels,
    with_zero_region,
)
from transport import run_realizations
from .experiment import ExperimentSpec

logger = logging.getLogger(__name__)

CERTIFICATE_COLUMNS = (
    "realization", "t", "m", "alpha", "overlap0", "overlap_t", "delta_norm",
    "v_overlap", "lambda1", "R_alpha", "R_inf", "bound", "holds",
)


@dataclass(frozen=True)
class ProofCertificate:
    realization: int
    t: int
    m: int
    alpha: float
    overlap0: float          # |<psi_0|psi_ini>|
    overlap_t: float         # |<U psi_0, U psi_ini>|
    delta_norm: float        # ||Delta_t||
    v_overlap: float         # |<V psi_0, U psi_ini>|
    lambda1: float           # largest Schmidt coefficient of U psi_ini
    Lambda1: float           # lambda1 ** 2
    R_alpha: float
    R_inf: float
    lambda1_lower: float     # max(v_overlap, d^(-m/2) - delta_norm)
    bound: float             # -2 alpha/(alpha-1) log lambda1_lower
    v_second_schmidt: float  # second Schmidt coefficient of V psi_0 (0 for rank 1)
    overlap_holds: bool      # (a)
    triangle_holds: bool     # (b)
    eckart_young_holds: bool # (c)
    sandwich_holds: bool     # (d)
    bound_holds: bool        # (e)

    @property
    def all_steps_hold(self) -> bool:
        return (self.overlap_holds and self.triangle_holds and self.eckart_young_holds
                and self.sandwich_holds and self.bound_holds)

    def to_row(self) -> Dict[str, object]:
        row = asdict(self)
        row["holds"] = self.all_steps_hold
        return row


@dataclass(frozen=True)
class ChainStep:
    """One time step of the chain: the certificate plus <Q_{N/2}> of U psi_0."""
    certificate: ProofCertificate
    q_mid: float


def _log(x: float, base: Optional[float]) -> float:
    base = config.experiment.log_base if base is None else base
    return math.log(x) / math.log(base)


def trace_chain(
    circuit: BrickworkCircuit,
    v: ModifiedCircuit,
    labels: List[LocalBasisLabel],
    m: int,
    t_max: int,
    alpha: float,
    log_base: Optional[float] = None,
    realization: int = 0,
) -> Iterator[ChainStep]:
    """
    Evolve psi_ini and psi_0 under U, and psi_0 under V, certifying t = 0..t_max.

    Args:
        circuit: U
        v: V built from the same circuit
        labels: X-basis labels of psi_ini, one per site
        m: Width of the central region C
        t_max: Last time step
        alpha: Renyi index > 1
        log_base: Logarithm base for entropies and the bound
        realization: Index written into each certificate
    """
    chain = circuit.config
    circuit.check_time(t_max)
    tol = config.tolerances
    cut = chain.N // 2
    target = chain.d ** (-m / 2)
    factor = alpha / (alpha - 1)

    psi_ini = product_state(labels, chain)
    psi_0 = product_state(with_zero_region(labels, central_sites(chain.N, m)), chain)
    overlap0 = abs(inner_product(psi_0, psi_ini))

    u_ini, u_0, v_0 = psi_ini, psi_0, psi_0
    for t in range(t_max + 1):
        if t > 0:
            layer = circuit.layers[t - 1]
            u_ini = apply_layer(u_ini, layer)
            u_0 = apply_layer(u_0, layer)
            v_0 = apply_modified_layer(v_0, layer, v.phases[t - 1], v.middle_bond)

        overlap_t = abs(inner_product(u_0, u_ini))
        delta = StateVector(u_0.amplitudes - v_0.amplitudes, chain, normalized=False)
        v_overlap = abs(inner_product(v_0, u_ini))

        spectrum = schmidt_spectrum(u_ini, cut)
        Lambda1 = spectrum.largest
        lambda1 = math.sqrt(Lambda1)
        r_alpha = renyi_entropy(spectrum, alpha, log_base)
        r_inf = min_entropy(spectrum, log_base)

        lambda1_lower = max(v_overlap, target - delta.norm)
        bound = -2 * factor * _log(lambda1_lower, log_base) if lambda1_lower > 0 else math.inf
        v_values = schmidt_values(v_0, cut)
        v_second = float(np.sqrt(v_values[1])) if v_values.size > 1 else 0.0

        slack = tol.certificate_slack
        certificate = ProofCertificate(
            realization=realization,
            t=t,
            m=m,
            alpha=alpha,
            overlap0=overlap0,
            overlap_t=overlap_t,
            delta_norm=delta.norm,
            v_overlap=v_overlap,
            lambda1=lambda1,
            Lambda1=Lambda1,
            R_alpha=r_alpha,
            R_inf=r_inf,
            lambda1_lower=lambda1_lower,
            bound=bound,
            v_second_schmidt=v_second,
            overlap_holds=abs(overlap0 - target) <= tol.identity and abs(overlap_t - target) <= tol.identity,
            triangle_holds=v_overlap >= overlap_t - delta.norm - slack,
            eckart_young_holds=lambda1 >= v_overlap - slack,
            sandwich_holds=r_alpha <= factor * r_inf + slack,
            bound_holds=r_alpha <= bound + slack,
        )
        yield ChainStep(certificate, charge_expectation(u_0, cut))


def _draw_instance(spec: ExperimentSpec, rng: np.random.Generator):
    circuit = sample_circuit(spec.config, spec.t_max, rng)
    labels = random_x_labels(spec.config.N, spec.config.d, rng)
    return circuit, modify_circuit(circuit), labels


def run_chain(spec: ExperimentSpec, rng: np.random.Generator, realization: int = 0) -> List[ChainStep]:
    """
    One sampled circuit and one random psi_ini; a ChainStep for every t <= t_max.

    In scaling mode m depends on t, so the chain is traced once per distinct
    width and each time step takes its step from the trace with its own m.
    """
    circuit, v, labels = _draw_instance(spec, rng)
    widths: Dict[int, List[int]] = {}
    for t in range(spec.t_max + 1):
        widths.setdefault(spec.width_at(t), []).append(t)

    steps: Dict[int, ChainStep] = {}
    for m, times in widths.items():
        wanted = set(times)
        for step in trace_chain(circuit, v, labels, m, max(times), spec.alpha,
                                spec.log_base, realization):
            if step.certificate.t in wanted:
                steps[step.certificate.t] = step
    return [steps[t] for t in range(spec.t_max + 1)]


def run_instance(
    spec: ExperimentSpec,
    rng: Optional[np.random.Generator] = None,
    realization: int = 0,
) -> List[ProofCertificate]:
    """
    Certify the proof chain on one realization.

    Args:
        spec: Experiment settings
        rng: Draws the circuit and psi_ini; defaults to spec.config.seed
        realization: Index recorded in the certificates

    Returns:
        One ProofCertificate per t = 0..t_max
    """
    rng = np.random.default_rng(spec.config.seed) if rng is None else rng
    return [step.certificate for step in run_chain(spec, rng, realization)]


def certify(spec: ExperimentSpec, rng: Optional[np.random.Generator] = None) -> List[ProofCertificate]:
    """run_instance over spec.n_realizations independent realizations."""
    rng = np.random.default_rng(spec.config.seed) if rng is None else rng
    runs = run_realizations(
        lambda index, gen: run_instance(spec, gen, realization=index),
        spec.n_realizations,
        rng,
        desc="certify",
    )
    certificates = [c for run in runs for c in run]
    failed = sum(not c.all_steps_hold for c in certificates)
    if failed:
        logger.warning("❌ %d of %d certificates failed", failed, len(certificates))
    else:
        logger.info("✓ all %d certificates hold", len(certificates))
    return certificates
