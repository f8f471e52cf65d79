# Modified Circuit V
# ==================
# The circuit U with the gate on the middle bond (N/2, N/2+1) of every layer
# replaced by the number u_t = <00|U_mid|00>. No remaining gate straddles the
# middle cut, so V never entangles A = sites 1..N/2 with B = the rest.
#
# With N/2 odd the middle bond belongs to the odd sublayer. On states with
# |00> on the two middle sites U and V agree: U(t,t-1) P = V(t,t-1) P.

from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Tuple

import numpy as np

from charge_gates import apply_gate, gate_phase_00
from qudit_state import DomainError, StateVector, charge_expectation, project_local_zero
from .brickwork import BrickworkCircuit, Layer, evolve, trajectory


@dataclass(frozen=True)
class ModifiedCircuit:
    """
    V built from a base circuit. Gates are shared with the base, not copied.

    phases[t - 1] is the scalar that replaces the middle gate of layer t.
    """
    base: BrickworkCircuit
    phases: Tuple[complex, ...]

    @property
    def middle_bond(self) -> int:
        return self.base.config.N // 2

    @property
    def depth(self) -> int:
        return self.base.depth


def middle_projector_sites(n_sites: int) -> List[int]:
    return [n_sites // 2, n_sites // 2 + 1]


def modify_circuit(circuit: BrickworkCircuit) -> ModifiedCircuit:
    """
    Build V from U.

    Raises:
        DomainError: if N/2 is even (the middle bond would sit in the even sublayer)
    """
    n_sites = circuit.config.N
    if (n_sites // 2) % 2 == 0:
        raise DomainError(f"N/2 must be odd (N = 2 mod 4) to build V, got N={n_sites}")

    middle = n_sites // 2
    phases = tuple(gate_phase_00(layer.gate_at(middle)) for layer in circuit.layers)
    return ModifiedCircuit(base=circuit, phases=phases)


def apply_modified_layer(psi: StateVector, layer: Layer, phase: complex, middle: int) -> StateVector:
    for bond, gate in layer.gates():
        if bond == middle:
            psi = psi.with_amplitudes(psi.amplitudes * phase)
        else:
            psi = apply_gate(psi, gate, bond)
    return psi


def modified_trajectory(psi: StateVector, v: ModifiedCircuit, t: int) -> Iterator[StateVector]:
    """Yield V(0,0)psi, V(1,0)psi, ..., V(t,0)psi."""
    v.base.check_time(t)
    yield psi
    for layer, phase in zip(v.base.layers[:t], v.phases):
        psi = apply_modified_layer(psi, layer, phase, v.middle_bond)
        yield psi


def evolve_modified(psi: StateVector, v: ModifiedCircuit, t: int) -> StateVector:
    """V(t,0)psi. The phases are kept: overlaps with the deviation state depend on them."""
    if not psi.config.same_space(v.base.config):
        raise DomainError("state and circuit are defined on different chains")
    v.base.check_time(t)
    for layer, phase in zip(v.base.layers[:t], v.phases):
        psi = apply_modified_layer(psi, layer, phase, v.middle_bond)
    return psi


def deviation_state(
    circuit: BrickworkCircuit,
    v: ModifiedCircuit,
    psi_0: StateVector,
    t: int,
) -> Tuple[StateVector, float]:
    """
    Delta_t = U(t,0)psi_0 - V(t,0)psi_0.

    Returns:
        (Delta_t flagged unnormalized, ||Delta_t||)
    """
    if v.base is not circuit and not circuit.config.same_space(v.base.config):
        raise DomainError("U and V are defined on different chains")
    u_state = evolve(psi_0, circuit, t)
    v_state = evolve_modified(psi_0, v, t)
    delta = StateVector(u_state.amplitudes - v_state.amplitudes, psi_0.config, normalized=False)
    return delta, delta.norm


class TelescopingBound(NamedTuple):
    """Upper bounds on ||Delta_t||, one term per time step before t."""
    projector_sum: float   # sum_tau 2 ||(1 - P) U(tau,0) psi_0||
    charge_sum: float      # sum_tau 2 (sqrt<Q_mid> + sqrt<Q_mid+1>)


def telescoping_bound(circuit: BrickworkCircuit, psi_0: StateVector, t: int) -> TelescopingBound:
    """
    Per-step error budget for Delta_t.

    Since U(t,t-1) P = V(t,t-1) P, each step adds at most
    ||Delta_t|| <= ||Delta_{t-1}|| + 2 ||(1-P) U(t-1,0) psi_0||,
    so the sum runs over tau = 0..t-1. Splitting 1 - P into two single-site
    projections and using 1 - |0><0| <= Q gives the looser charge_sum.
    """
    sites = middle_projector_sites(circuit.config.N)
    projector_sum = 0.0
    charge_sum = 0.0
    states = list(trajectory(psi_0, circuit, t))
    for state in states[:t]:
        _, kept = project_local_zero(state, sites)
        projector_sum += 2.0 * np.sqrt(max(state.norm ** 2 - kept, 0.0))
        charge_sum += 2.0 * sum(np.sqrt(charge_expectation(state, s)) for s in sites)
    return TelescopingBound(float(projector_sum), float(charge_sum))
