# Charge-Conserving Gates
# =======================
# A two-qudit gate stored as one unitary block per charge sector, its Haar
# sampling, and its action on a chain state.

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from config import config
from qudit_state import DomainError, StateVector
from .haar import haar_unitary
from .sectors import sector_decomposition, sector_sorted_order


@dataclass(frozen=True, eq=False)
class ChargeConservingGate:
    """
    A unitary on two neighbouring qudits that commutes with Q_1 + Q_2.

    blocks[s] acts on the sector with total charge s, in the basis order of
    sector_decomposition(d)[s]. Storing blocks instead of a dense d^2 x d^2
    matrix makes charge conservation exact by construction.
    """
    d: int
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self):
        sectors = sector_decomposition(self.d)
        if len(self.blocks) != len(sectors):
            raise DomainError(
                f"a d={self.d} gate needs {len(sectors)} blocks, got {len(self.blocks)}"
            )
        blocks = []
        for sector, block in zip(sectors, self.blocks):
            block = np.array(block, dtype=np.complex128)
            if block.shape != (sector.dim, sector.dim):
                raise DomainError(
                    f"block for sector s={sector.s} must be {sector.dim}x{sector.dim}, "
                    f"got {block.shape}"
                )
            block.setflags(write=False)
            blocks.append(block)
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def identity(cls, d: int) -> "ChargeConservingGate":
        return cls(d, tuple(np.eye(sector.dim) for sector in sector_decomposition(d)))

    def adjoint(self) -> "ChargeConservingGate":
        return ChargeConservingGate(self.d, tuple(block.conj().T for block in self.blocks))

    def to_matrix(self) -> np.ndarray:
        """Dense d^2 x d^2 matrix in the two-site basis |k1 k2>, index k1*d + k2."""
        matrix = np.zeros((self.d ** 2, self.d ** 2), dtype=np.complex128)
        for sector, block in zip(sector_decomposition(self.d), self.blocks):
            idx = sector.indices
            matrix[np.ix_(idx, idx)] = block
        return matrix

    def to_sector_matrix(self) -> np.ndarray:
        """The dense matrix with rows and columns sorted by sector: visibly block diagonal."""
        order = sector_sorted_order(self.d)
        return self.to_matrix()[np.ix_(order, order)]

    def unitarity_error(self) -> float:
        """max over blocks of ||B^dagger B - I||_max."""
        return max(
            float(np.max(np.abs(block.conj().T @ block - np.eye(block.shape[0]))))
            for block in self.blocks
        )

    def is_unitary(self, tol: float = None) -> bool:
        tol = config.tolerances.identity if tol is None else tol
        return self.unitarity_error() <= tol


def gate_rng(key: int, layer: int, bond: int) -> np.random.Generator:
    """
    The random stream owned by the gate at (layer, bond) of the circuit with this key.

    Philox is counter-based, so a gate's draw does not depend on which other
    gates were sampled before it.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([key, layer, bond])))


def sample_gate(d: int, rng: np.random.Generator) -> ChargeConservingGate:
    """One independent Haar-random unitary per charge sector."""
    sectors = sector_decomposition(d)
    return ChargeConservingGate(d, tuple(haar_unitary(sector.dim, rng) for sector in sectors))


def gate_phase_00(gate: ChargeConservingGate) -> complex:
    """<00|U|00>: the whole s=0 block, a single phase factor."""
    return complex(gate.blocks[0][0, 0])


def apply_gate(psi: StateVector, gate: ChargeConservingGate, bond: int) -> StateVector:
    """
    Apply a gate to sites (bond, bond + 1).

    The amplitudes are viewed as a (left, d*d, right) array: left runs over
    the d^(bond-1) digits before the bond and right over the digits after
    it. Each sector block then mixes only its own rows of the middle axis.

    Args:
        psi: Input state (not modified)
        gate: Gate with the chain's local dimension
        bond: Left site of the pair, 1..N-1

    Returns:
        A new StateVector with the same normalized flag
    """
    cfg = psi.config
    cfg.check_bond(bond)
    if gate.d != cfg.d:
        raise DomainError(f"gate has d={gate.d} but the chain has d={cfg.d}")

    left = cfg.d ** (bond - 1)
    right = cfg.d ** (cfg.N - bond - 1)
    fibers = psi.amplitudes.reshape(left, cfg.d ** 2, right)
    out = np.empty_like(fibers)

    for sector, block in zip(sector_decomposition(cfg.d), gate.blocks):
        idx = sector.indices
        # ============================================
        # PYTHON CONCEPT: einsum
        # ============================================
        # "ab,lbr->lar" multiplies the block into the middle axis of every
        # (left, right) fiber at once, with no Python loop over fibers.
        out[:, idx, :] = np.einsum("ab,lbr->lar", block, fibers[:, idx, :])

    return psi.with_amplitudes(out.reshape(-1))


def assemble_dense(gates: Sequence[Tuple[int, ChargeConservingGate]], n_sites: int, d: int) -> np.ndarray:
    """
    Dense d^N x d^N product of (bond, gate) pairs applied in list order.

    Only for small chains; used to cross-check apply_gate.
    """
    dim = d ** n_sites
    total = np.eye(dim, dtype=np.complex128)
    for bond, gate in gates:
        full = np.kron(
            np.kron(np.eye(d ** (bond - 1)), gate.to_matrix()),
            np.eye(d ** (n_sites - bond - 1)),
        )
        total = full @ total
    return total


if __name__ == "__main__":
    # ============================================
    # PYTHON CONCEPT: running a module inside a package
    # ============================================
    # The relative imports above only resolve when Python knows the package,
    # so run this from the repository root as:
    #   python -m charge_gates.gate
    demo_rng = np.random.default_rng(0)
    gate = sample_gate(2, demo_rng)
    matrix = gate.to_matrix()
    print(f"blocks: {[b.shape for b in gate.blocks]}")
    print(f"unitary: {np.allclose(matrix.conj().T @ matrix, np.eye(4))}")
    print(f"<00|U|00> = {gate_phase_00(gate):.4f}  (modulus {abs(gate_phase_00(gate)):.4f})")
