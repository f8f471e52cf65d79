import math

import numpy as np
import pytest

from charge_gates import haar_unitary
from entanglement import (
    SchmidtSpectrum,
    best_rank_one_overlap,
    check_entropy_sandwich,
    eckart_young_overlap,
    entropy,
    min_entropy,
    random_product_overlap,
    renyi_entropy,
    schmidt_spectrum,
    spectrum_from_matrix,
    von_neumann,
)
from qudit_state import ChainConfig, DomainError, StateVector, haar_random_state, product_state, random_x_labels

ALPHAS = (1.1, 1.5, 2.0, 5.0, 50.0)


def bell_state() -> StateVector:
    return StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), ChainConfig(N=2, d=2))


def random_matrix_state(rows, cols, rng):
    m = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    return m / np.linalg.norm(m)


class TestSpectrum:
    def test_product_state_has_rank_one(self, rng):
        chain = ChainConfig(N=6, d=3)
        spectrum = schmidt_spectrum(product_state(random_x_labels(6, 3, rng), chain), 3)
        assert spectrum.rank == 1
        assert spectrum.largest == pytest.approx(1.0)

    def test_sorted_and_normalized(self, rng):
        spectrum = schmidt_spectrum(haar_random_state(ChainConfig(N=6, d=2), rng), 3)
        assert spectrum.values.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(spectrum.values) <= 0)
        assert spectrum.rank == 8

    def test_clipping(self):
        spectrum = SchmidtSpectrum.from_values([0.25, 0.75, 1e-20])
        assert spectrum.rank == 2
        assert list(spectrum.values) == [0.75, 0.25]
        assert spectrum.clipped_mass == pytest.approx(1e-20)

    def test_needs_normalized_state(self):
        psi = StateVector(np.array([1.0, 1.0, 0, 0]), ChainConfig(N=2, d=2), normalized=False)
        with pytest.raises(DomainError):
            schmidt_spectrum(psi, 1)

    def test_cut_range(self, rng):
        psi = haar_random_state(ChainConfig(N=4, d=2), rng)
        with pytest.raises(DomainError):
            schmidt_spectrum(psi, 4)

    @pytest.mark.parametrize("cut", [1, 2, 3])
    def test_matches_reduced_density_matrix(self, cut, rng):
        psi = haar_random_state(ChainConfig(N=6, d=2), rng)
        dim_a, dim_b = 2 ** cut, 2 ** (6 - cut)
        rho = np.outer(psi.amplitudes, psi.amplitudes.conj()).reshape(dim_a, dim_b, dim_a, dim_b)
        rho_a = np.trace(rho, axis1=1, axis2=3)
        expected = np.sort(np.linalg.eigvalsh(rho_a))[::-1]
        assert np.allclose(schmidt_spectrum(psi, cut).values, expected, atol=1e-10)

    def test_unchanged_by_unitaries_on_one_side(self, rng):
        psi = haar_random_state(ChainConfig(N=6, d=2), rng)
        before = schmidt_spectrum(psi, 3).values
        matrix = psi.amplitudes.reshape(8, 8)
        on_a = np.kron(haar_unitary(8, rng), np.eye(8)) @ psi.amplitudes
        on_b = (matrix @ haar_unitary(8, rng).T).reshape(-1)
        for amplitudes in (on_a, on_b):
            after = schmidt_spectrum(psi.with_amplitudes(amplitudes), 3).values
            assert np.allclose(after, before, atol=1e-10)


class TestEntropies:
    @pytest.mark.parametrize("alpha", [1.5, 2.0, 5.0, math.inf])
    def test_maximally_entangled_pair(self, alpha):
        spectrum = schmidt_spectrum(bell_state(), 1)
        assert entropy(spectrum, alpha) == pytest.approx(math.log(2))
        assert entropy(spectrum, alpha, base=2) == pytest.approx(1.0)

    def test_von_neumann_of_pair(self):
        assert von_neumann(schmidt_spectrum(bell_state(), 1), base=2) == pytest.approx(1.0)

    def test_alpha_one_is_rejected(self):
        spectrum = SchmidtSpectrum.from_values([0.5, 0.3, 0.2])
        with pytest.raises(DomainError):
            renyi_entropy(spectrum, 1.0)
        with pytest.raises(DomainError):
            renyi_entropy(spectrum, 0.0)

    def test_alpha_next_to_one_is_von_neumann(self):
        spectrum = SchmidtSpectrum.from_values([0.5, 0.3, 0.2])
        assert renyi_entropy(spectrum, 1 + 1e-9) == pytest.approx(von_neumann(spectrum))

    @pytest.mark.parametrize("alpha", [1 - 1e-4, 1 + 1e-4])
    def test_renyi_converges_to_von_neumann(self, alpha, rng):
        spectrum = SchmidtSpectrum.from_values(rng.dirichlet(np.ones(8)))
        assert abs(renyi_entropy(spectrum, alpha) - von_neumann(spectrum)) <= 1e-3

    def test_collision_entropy_of_two_levels(self):
        # 0.7^2 + 0.3^2 = 0.58
        spectrum = SchmidtSpectrum.from_values([0.7, 0.3])
        assert renyi_entropy(spectrum, 2.0) == pytest.approx(-math.log(0.58), abs=1e-12)

    def test_large_alpha_does_not_underflow(self):
        spectrum = SchmidtSpectrum.from_values([0.4, 0.3, 0.3])
        assert renyi_entropy(spectrum, 5000.0) == pytest.approx(min_entropy(spectrum), rel=1e-3)

    def test_bad_log_base(self):
        with pytest.raises(DomainError):
            min_entropy(SchmidtSpectrum.from_values([0.5, 0.5]), base=1.0)

    def test_sandwich_and_monotonicity(self, rng):
        for _ in range(10_000):
            spectrum = SchmidtSpectrum.from_values(rng.dirichlet(np.ones(8)))
            previous = math.inf
            for alpha in ALPHAS:
                check = check_entropy_sandwich(spectrum, alpha)
                assert check.holds
                assert check.mid <= previous + 1e-10
                previous = check.mid

    def test_sandwich_needs_alpha_above_one(self):
        with pytest.raises(DomainError):
            check_entropy_sandwich(SchmidtSpectrum.from_values([0.5, 0.5]), 0.5)


class TestLowRankOverlap:
    @pytest.mark.parametrize("size", [4, 8])
    def test_alternating_maximization_finds_top_value(self, size, rng):
        for _ in range(100):
            matrix = random_matrix_state(size, size, rng)
            closed_form = eckart_young_overlap(spectrum_from_matrix(matrix), 1)
            found = best_rank_one_overlap(matrix, rng)
            assert found == pytest.approx(closed_form, abs=1e-6)
            assert found <= closed_form + 1e-10

    def test_random_products_never_beat_closed_form(self, rng):
        matrix = random_matrix_state(4, 4, rng)
        closed_form = eckart_young_overlap(spectrum_from_matrix(matrix), 1)
        assert random_product_overlap(matrix, 20_000, rng, batch=5000) <= closed_form + 1e-12

    def test_full_rank_overlap_is_one(self, rng):
        spectrum = spectrum_from_matrix(random_matrix_state(4, 4, rng))
        assert eckart_young_overlap(spectrum, spectrum.rank) == pytest.approx(1.0)
        with pytest.raises(DomainError):
            eckart_young_overlap(spectrum, 0)
