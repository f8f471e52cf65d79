# Dense reference implementations for small chains.
from typing import Sequence

import numpy as np

from charge_gates import assemble_dense
from circuit import BrickworkCircuit
from qudit_state import LocalBasisLabel, charge_operator


def dense_site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """op on one site, identity elsewhere, site 1 leftmost in the Kronecker product."""
    d = op.shape[0]
    return np.kron(np.kron(np.eye(d ** (site - 1)), op), np.eye(d ** (n_sites - site)))


def dense_total_charge(n_sites: int, d: int) -> np.ndarray:
    q = charge_operator(d)
    return sum(dense_site_operator(q, i, n_sites) for i in range(1, n_sites + 1))


def dense_circuit(circuit: BrickworkCircuit, t: int) -> np.ndarray:
    """U(t,0) built gate by gate with Kronecker products."""
    gates = [pair for layer in circuit.layers[:t] for pair in layer.gates()]
    return assemble_dense(gates, circuit.config.N, circuit.config.d)


def z_labels(charges: Sequence[int]):
    return [LocalBasisLabel.z(k) for k in charges]
