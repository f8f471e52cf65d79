# Basis States, Overlaps and Local Observables
# ============================================
# Single-site vectors in the charge (Z) and shift (X) bases, product states
# on the chain, and the few local quantities the proof needs: charge
# expectations and projections onto |0> at chosen sites.

from functools import reduce
from typing import List, Sequence, Tuple

import numpy as np

from .chain import ChainConfig, LocalBasisLabel, StateVector
from .errors import DomainError


def _check_label(k: int, d: int) -> None:
    if d < 2:
        raise DomainError(f"local dimension d must be >= 2, got {d}")
    if not 0 <= k < d:
        raise DomainError(f"basis label k must be in [0, {d - 1}], got {k}")


def z_basis_state(k: int, d: int) -> np.ndarray:
    """The charge eigenstate |k>: a standard basis vector of length d."""
    _check_label(k, d)
    vector = np.zeros(d, dtype=np.complex128)
    vector[k] = 1.0
    return vector


def x_eigenstate(k: int, d: int) -> np.ndarray:
    """
    The k-th eigenstate of the cyclic shift X|j> = |j+1 mod d>.

    Uses the Fourier phase convention |k) = d^(-1/2) sum_j w^(jk) |j> with
    w = exp(2 pi i / d), so X|k) = w^(-k) |k) and every |<j|k)| = 1/sqrt(d).
    """
    _check_label(k, d)
    j = np.arange(d)
    return np.exp(2j * np.pi * j * k / d) / np.sqrt(d)


def local_vector(label: LocalBasisLabel, d: int) -> np.ndarray:
    match label.kind:
        case "Z":
            return z_basis_state(label.k, d)
        case "X":
            return x_eigenstate(label.k, d)
        case _:
            raise DomainError(f"unknown basis kind {label.kind!r}")


def product_state(labels: Sequence[LocalBasisLabel], config: ChainConfig) -> StateVector:
    """
    Tensor product of single-site basis states, site 1 first.

    Args:
        labels: One label per site (length N)
        config: The chain

    Returns:
        A normalized StateVector
    """
    if len(labels) != config.N:
        raise DomainError(f"need {config.N} labels, got {len(labels)}")
    vectors = [local_vector(label, config.d) for label in labels]
    # np.kron with the first site on the left keeps site 1 most significant
    amplitudes = reduce(np.kron, vectors)
    return StateVector(amplitudes, config)


def central_sites(n_sites: int, m: int) -> List[int]:
    """The m sites N/2 - m/2 + 1, ..., N/2 + m/2 around the middle cut."""
    if m <= 0 or m % 2 or m > n_sites:
        raise DomainError(f"central width m must be even and in [2, {n_sites}], got {m}")
    half = n_sites // 2
    return list(range(half - m // 2 + 1, half + m // 2 + 1))


def with_zero_region(labels: Sequence[LocalBasisLabel], sites: Sequence[int]) -> List[LocalBasisLabel]:
    """Copy of labels with Z(0) on the given sites: the chain with no charge there."""
    zeroed = set(sites)
    return [LocalBasisLabel.z(0) if i in zeroed else label for i, label in enumerate(labels, start=1)]


def random_x_labels(n: int, d: int, rng: np.random.Generator) -> List[LocalBasisLabel]:
    """n independent, uniformly random shift-eigenstate labels."""
    return [LocalBasisLabel.x(int(k)) for k in rng.integers(0, d, size=n)]


def haar_random_state(config: ChainConfig, rng: np.random.Generator) -> StateVector:
    """A uniformly random normalized state (normalized complex Gaussian vector)."""
    z = rng.standard_normal(config.dim) + 1j * rng.standard_normal(config.dim)
    return StateVector(z / np.linalg.norm(z), config)


def _check_same_space(a: StateVector, b: StateVector) -> None:
    if not a.config.same_space(b.config):
        raise DomainError(
            f"states live on different chains: (N={a.config.N}, d={a.config.d}) "
            f"vs (N={b.config.N}, d={b.config.d})"
        )


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in a."""
    _check_same_space(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def overlap_modulus(a: StateVector, b: StateVector) -> float:
    return abs(inner_product(a, b))


def site_distribution(psi: StateVector, site: int) -> np.ndarray:
    """Weights of |0>, ..., |d-1> at one site (sums to the squared norm)."""
    cfg = psi.config
    cfg.check_site(site)
    probs = np.abs(psi.amplitudes) ** 2
    # (left, site, right) view; site i is axis i - 1 in the big-endian layout
    probs = probs.reshape(cfg.d ** (site - 1), cfg.d, cfg.d ** (cfg.N - site))
    return probs.sum(axis=(0, 2))


def charge_expectation(psi: StateVector, site: int) -> float:
    """<psi|Q_site|psi> with Q|k> = k|k>."""
    weights = site_distribution(psi, site)
    return float(np.dot(np.arange(psi.config.d), weights))


def project_local_zero(psi: StateVector, sites: Sequence[int]) -> Tuple[StateVector, float]:
    """
    Apply the projector onto |0> at each listed site.

    Args:
        psi: Input state
        sites: Distinct sites to project

    Returns:
        (projected state flagged unnormalized, its squared norm)
    """
    cfg = psi.config
    if len(set(sites)) != len(sites):
        raise DomainError(f"projected sites must be distinct, got {list(sites)}")
    for site in sites:
        cfg.check_site(site)

    tensor = psi.tensor().copy()
    for site in sites:
        index = [slice(None)] * cfg.N
        index[site - 1] = slice(1, None)
        tensor[tuple(index)] = 0.0

    projected = StateVector(tensor.reshape(-1), cfg, normalized=False)
    return projected, projected.norm ** 2


if __name__ == "__main__":
    chain = ChainConfig(N=4, d=3)
    psi_ini = product_state([LocalBasisLabel.x(k) for k in (0, 1, 2, 0)], chain)
    psi_0 = product_state([LocalBasisLabel.x(0), LocalBasisLabel.z(0),
                           LocalBasisLabel.z(0), LocalBasisLabel.x(0)], chain)
    print(f"|<psi_0|psi_ini>| = {overlap_modulus(psi_0, psi_ini):.6f}  (expect {3 ** -1:.6f})")
    print(f"<Q_1> = {charge_expectation(psi_ini, 1):.6f}")
