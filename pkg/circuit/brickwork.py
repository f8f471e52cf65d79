# Brickwork Circuits
# ==================
# Layers of charge-conserving gates on an open chain, and time evolution.
#
# One layer U(t, t-1) is two sublayers. As an operator product the even-bond
# sublayer stands on the left, so acting on a state the odd bonds
# (1,2), (3,4), ..., (N-1,N) go FIRST and the even bonds (2,3), ..., (N-2,N-1)
# go second. There is no gate on (N, 1).

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from charge_gates import ChargeConservingGate, apply_gate, gate_rng, sample_gate
from qudit_state import ChainConfig, DomainError, StateVector

logger = logging.getLogger(__name__)

BondGate = Tuple[int, ChargeConservingGate]


def odd_bonds(n_sites: int) -> List[int]:
    """Left sites of the first sublayer: 1, 3, ..., N-1."""
    return list(range(1, n_sites, 2))


def even_bonds(n_sites: int) -> List[int]:
    """Left sites of the second sublayer: 2, 4, ..., N-2."""
    return list(range(2, n_sites - 1, 2))


@dataclass(frozen=True)
class Layer:
    """One time step: (bond, gate) pairs of the odd sublayer, then of the even sublayer."""
    index: int
    odd: Tuple[BondGate, ...]
    even: Tuple[BondGate, ...]

    def gates(self) -> Tuple[BondGate, ...]:
        """All gates in the order they act on a state."""
        return self.odd + self.even

    def gate_at(self, bond: int) -> ChargeConservingGate:
        for b, gate in self.gates():
            if b == bond:
                return gate
        raise DomainError(f"layer {self.index} has no gate on bond {bond}")


@dataclass(frozen=True)
class BrickworkCircuit:
    config: ChainConfig
    depth: int
    layers: Tuple[Layer, ...]
    key: Optional[int] = None   # seed of the per-gate streams, if sampled

    def __post_init__(self):
        if self.depth < 0:
            raise DomainError(f"depth must be >= 0, got {self.depth}")
        if len(self.layers) != self.depth:
            raise DomainError(f"circuit of depth {self.depth} has {len(self.layers)} layers")

    @property
    def gates_per_layer(self) -> int:
        return len(odd_bonds(self.config.N)) + len(even_bonds(self.config.N))

    def check_time(self, t: int) -> int:
        if not 0 <= t <= self.depth:
            raise DomainError(f"time must be in [0, {self.depth}], got {t}")
        return t


def sample_circuit(
    config: ChainConfig,
    depth: int,
    rng: Optional[np.random.Generator] = None,
) -> BrickworkCircuit:
    """
    Draw a Haar-random charge-conserving brickwork circuit.

    Every gate gets its own stream keyed by (circuit key, layer, bond), so
    the circuit is the same no matter in which order gates are drawn.

    Args:
        config: The chain
        depth: Number of layers
        rng: Source of the circuit key; defaults to a generator seeded with config.seed

    Returns:
        A BrickworkCircuit with N - 1 gates per layer
    """
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    rng = np.random.default_rng(config.seed) if rng is None else rng
    key = int(rng.integers(0, 2 ** 63))

    layers = []
    for t in range(1, depth + 1):
        odd = tuple((b, sample_gate(config.d, gate_rng(key, t, b))) for b in odd_bonds(config.N))
        even = tuple((b, sample_gate(config.d, gate_rng(key, t, b))) for b in even_bonds(config.N))
        layers.append(Layer(index=t, odd=odd, even=even))

    logger.debug("✓ sampled circuit N=%d d=%d depth=%d key=%d", config.N, config.d, depth, key)
    return BrickworkCircuit(config=config, depth=depth, layers=tuple(layers), key=key)


def apply_layer(psi: StateVector, layer: Layer) -> StateVector:
    for bond, gate in layer.gates():
        psi = apply_gate(psi, gate, bond)
    return psi


def trajectory(psi: StateVector, circuit: BrickworkCircuit, t: int) -> Iterator[StateVector]:
    """Yield U(0,0)psi, U(1,0)psi, ..., U(t,0)psi."""
    circuit.check_time(t)
    yield psi
    for layer in circuit.layers[:t]:
        psi = apply_layer(psi, layer)
        yield psi


def evolve(psi: StateVector, circuit: BrickworkCircuit, t: int) -> StateVector:
    """U(t,0)psi = U(t,t-1) ... U(1,0) psi."""
    if not psi.config.same_space(circuit.config):
        raise DomainError("state and circuit are defined on different chains")
    circuit.check_time(t)
    for layer in circuit.layers[:t]:
        psi = apply_layer(psi, layer)
    return psi


def evolve_adjoint(psi: StateVector, circuit: BrickworkCircuit, t: int) -> StateVector:
    """U(t,0)^dagger psi: layers in reverse, each sublayer undone last-first."""
    circuit.check_time(t)
    for layer in reversed(circuit.layers[:t]):
        for bond, gate in reversed(layer.gates()):
            psi = apply_gate(psi, gate.adjoint(), bond)
    return psi


if __name__ == "__main__":
    # python -m circuit.brickwork
    from qudit_state import LocalBasisLabel, charge_expectation, product_state

    chain = ChainConfig(N=8, d=2, seed=1)
    demo = sample_circuit(chain, 4, np.random.default_rng(chain.seed))
    psi = product_state([LocalBasisLabel.z(1 if i == 4 else 0) for i in range(1, 9)], chain)
    for t in range(5):
        charges = [charge_expectation(evolve(psi, demo, t), i) for i in range(1, 9)]
        print(f"t={t}  " + " ".join(f"{q:.3f}" for q in charges) + f"  total={sum(charges):.3f}")
