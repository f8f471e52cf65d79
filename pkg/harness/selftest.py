# Self-Test
# =========
# A quick pass over the invariants the rest of the repository relies on,
# at sizes that finish in seconds. Run it with: python main.py selftest

import logging
from typing import Callable, List, NamedTuple, Tuple

import numpy as np

from charge_gates import sample_gate
from circuit import (
    apply_layer,
    apply_modified_layer,
    evolve,
    evolve_modified,
    middle_projector_sites,
    modify_circuit,
    sample_circuit,
)
from config import config
from entanglement import SchmidtSpectrum, check_entropy_sandwich, schmidt_values
from qudit_state import (
    ChainConfig,
    charge_expectation,
    haar_random_state,
    product_state,
    project_local_zero,
    random_x_labels,
)
from transport import condition_inequality_check
from .certificates import run_instance
from .experiment import ExperimentSpec

logger = logging.getLogger(__name__)


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _gates_valid(rng) -> Tuple[bool, str]:
    worst = 0.0
    for d in (2, 3, 4):
        for _ in range(50):
            gate = sample_gate(d, rng)
            worst = max(worst, gate.unitarity_error())
    return worst <= config.tolerances.identity, f"max ||B^dagger B - I|| = {worst:.2e}"


def _charge_conserved(rng) -> Tuple[bool, str]:
    chain = ChainConfig(N=6, d=3)
    psi = haar_random_state(chain, rng)
    circuit = sample_circuit(chain, 5, rng)
    before = sum(charge_expectation(psi, i) for i in range(1, 7))
    after_state = evolve(psi, circuit, 5)
    after = sum(charge_expectation(after_state, i) for i in range(1, 7))
    drift = abs(after - before)
    return drift <= config.tolerances.assertion, f"total charge drift {drift:.2e}"


def _u_equals_v_on_p(rng) -> Tuple[bool, str]:
    chain = ChainConfig(N=6, d=2)
    circuit = sample_circuit(chain, 3, rng)
    v = modify_circuit(circuit)
    worst = 0.0
    for t in range(3):
        projected, _ = project_local_zero(haar_random_state(chain, rng), middle_projector_sites(6))
        layer = circuit.layers[t]
        u_out = apply_layer(projected, layer)
        v_out = apply_modified_layer(projected, layer, v.phases[t], v.middle_bond)
        worst = max(worst, float(np.max(np.abs(u_out.amplitudes - v_out.amplitudes))))
    return worst <= config.tolerances.identity, f"max |U P psi - V P psi| = {worst:.2e}"


def _v_no_entanglement(rng) -> Tuple[bool, str]:
    chain = ChainConfig(N=6, d=2)
    circuit = sample_circuit(chain, 6, rng)
    v = modify_circuit(circuit)
    psi = product_state(random_x_labels(6, 2, rng), chain)
    values = schmidt_values(evolve_modified(psi, v, 6), 3)
    second = float(np.sqrt(values[1]))
    return second <= config.tolerances.assertion, f"second Schmidt coefficient {second:.2e}"


def _entropy_sandwich(rng) -> Tuple[bool, str]:
    failures = 0
    for _ in range(500):
        spectrum = SchmidtSpectrum.from_values(rng.dirichlet(np.ones(8)))
        failures += sum(not check_entropy_sandwich(spectrum, a).holds for a in (1.5, 2.0, 5.0))
    return failures == 0, f"{failures} violations over 1500 checks"


def _condition_inequality(rng) -> Tuple[bool, str]:
    chain = ChainConfig(N=4, d=3)
    failures = 0
    for _ in range(100):
        psi = haar_random_state(chain, rng)
        failures += sum(not condition_inequality_check(psi, i).holds for i in range(1, 5))
    return failures == 0, f"{failures} violations over 400 checks"


def _certificates(rng) -> Tuple[bool, str]:
    spec = ExperimentSpec(config=ChainConfig(N=6, d=2), t_max=5, m=2, alpha=2.0)
    certificates = run_instance(spec, rng)
    failed = sum(not c.all_steps_hold for c in certificates)
    return failed == 0, f"{failed} of {len(certificates)} certificates failed"


CHECKS: List[Tuple[str, Callable]] = [
    ("gate unitarity", _gates_valid),
    ("charge conservation", _charge_conserved),
    ("U P = V P", _u_equals_v_on_p),
    ("V keeps A:B product states", _v_no_entanglement),
    ("entropy sandwich", _entropy_sandwich),
    ("1 - |0><0| <= Q", _condition_inequality),
    ("proof-chain certificates", _certificates),
]


def run_selftest(seed: int = 0) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for name, check in CHECKS:
        passed, detail = check(rng)
        results.append(CheckResult(name, passed, detail))
        if passed:
            logger.info("✓ %s: %s", name, detail)
        else:
            logger.error("❌ %s: %s", name, detail)
    return results
