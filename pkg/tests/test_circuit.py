import numpy as np
import pytest

from circuit import (
    apply_layer,
    apply_modified_layer,
    circuit_from_record,
    circuit_to_record,
    deviation_state,
    even_bonds,
    evolve,
    evolve_adjoint,
    evolve_modified,
    load_circuit,
    middle_projector_sites,
    modified_trajectory,
    modify_circuit,
    odd_bonds,
    sample_circuit,
    save_circuit,
    telescoping_bound,
    trajectory,
)
from entanglement import schmidt_values
from qudit_state import (
    ChainConfig,
    DomainError,
    central_sites,
    charge_expectation,
    haar_random_state,
    product_state,
    project_local_zero,
    random_x_labels,
    with_zero_region,
)
from oracles import dense_circuit


def total_charge(psi):
    return sum(charge_expectation(psi, i) for i in range(1, psi.config.N + 1))


def test_bond_layout():
    assert odd_bonds(10) == [1, 3, 5, 7, 9]
    assert even_bonds(10) == [2, 4, 6, 8]
    assert sample_circuit(ChainConfig(N=10, d=2), 1).gates_per_layer == 9


class TestEvolution:
    def test_matches_dense_product(self, rng):
        chain = ChainConfig(N=4, d=2)
        circuit = sample_circuit(chain, 3, rng)
        psi = haar_random_state(chain, rng)
        expected = dense_circuit(circuit, 3) @ psi.amplitudes
        assert np.allclose(evolve(psi, circuit, 3).amplitudes, expected, atol=1e-12)

    def test_same_seed_same_circuit(self):
        chain = ChainConfig(N=6, d=3, seed=42)
        psi = product_state(random_x_labels(6, 3, np.random.default_rng(0)), chain)
        first = evolve(psi, sample_circuit(chain, 4), 4)
        second = evolve(psi, sample_circuit(chain, 4), 4)
        assert np.array_equal(first.amplitudes, second.amplitudes)

    def test_trajectory_ends_at_evolve(self, chain_6_2, rng):
        circuit = sample_circuit(chain_6_2, 4, rng)
        psi = haar_random_state(chain_6_2, rng)
        states = list(trajectory(psi, circuit, 4))
        assert len(states) == 5
        assert np.array_equal(states[-1].amplitudes, evolve(psi, circuit, 4).amplitudes)

    def test_adjoint_undoes_evolution(self, chain_6_2, rng):
        circuit = sample_circuit(chain_6_2, 5, rng)
        psi = haar_random_state(chain_6_2, rng)
        back = evolve_adjoint(evolve(psi, circuit, 5), circuit, 5)
        assert np.allclose(back.amplitudes, psi.amplitudes, atol=1e-12)

    def test_time_out_of_range(self, chain_6_2, rng):
        circuit = sample_circuit(chain_6_2, 2, rng)
        with pytest.raises(DomainError):
            evolve(haar_random_state(chain_6_2, rng), circuit, 3)

    @pytest.mark.parametrize("n_sites,d", [(10, 2), (6, 3)])
    def test_total_charge_conserved(self, n_sites, d, rng):
        chain = ChainConfig(N=n_sites, d=d)
        for _ in range(20):
            psi = haar_random_state(chain, rng)
            circuit = sample_circuit(chain, 50, rng)
            after = evolve(psi, circuit, 50)
            assert abs(after.norm - 1.0) <= 1e-10
            assert abs(total_charge(after) - total_charge(psi)) <= 1e-10


class TestModifiedCircuit:
    @pytest.mark.parametrize("n_sites", [4, 8, 12])
    def test_needs_odd_half_chain(self, n_sites, rng):
        circuit = sample_circuit(ChainConfig(N=n_sites, d=2), 1, rng)
        with pytest.raises(DomainError):
            modify_circuit(circuit)

    def test_phases_come_from_middle_gate(self, chain_6_2, rng):
        circuit = sample_circuit(chain_6_2, 3, rng)
        v = modify_circuit(circuit)
        assert v.middle_bond == 3
        for layer, phase in zip(circuit.layers, v.phases):
            assert phase == layer.gate_at(3).blocks[0][0, 0]
            assert abs(phase) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3])
    def test_u_and_v_agree_on_uncharged_middle(self, d, rng):
        chain = ChainConfig(N=6, d=d)
        sites = middle_projector_sites(6)
        worst = 0.0
        for _ in range(100):
            circuit = sample_circuit(chain, 1, rng)
            v = modify_circuit(circuit)
            projected, _ = project_local_zero(haar_random_state(chain, rng), sites)
            u_out = apply_layer(projected, circuit.layers[0])
            v_out = apply_modified_layer(projected, circuit.layers[0], v.phases[0], v.middle_bond)
            worst = max(worst, float(np.max(np.abs(u_out.amplitudes - v_out.amplitudes))))
        assert worst <= 1e-12

    @pytest.mark.parametrize("n_sites", [6, 10])
    def test_v_keeps_product_across_middle(self, n_sites, rng):
        chain = ChainConfig(N=n_sites, d=2)
        circuit = sample_circuit(chain, 20, rng)
        v = modify_circuit(circuit)
        psi = product_state(random_x_labels(n_sites, 2, rng), chain)
        for state in modified_trajectory(psi, v, 20):
            values = schmidt_values(state, n_sites // 2)
            assert np.sqrt(values[1]) <= 1e-10

    def test_v_is_norm_preserving(self, chain_10_2, rng):
        circuit = sample_circuit(chain_10_2, 6, rng)
        psi = haar_random_state(chain_10_2, rng)
        assert evolve_modified(psi, modify_circuit(circuit), 6).norm == pytest.approx(1.0, abs=1e-12)


class TestDeviation:
    def _psi_0(self, chain, m, rng):
        labels = random_x_labels(chain.N, chain.d, rng)
        return product_state(with_zero_region(labels, central_sites(chain.N, m)), chain)

    def test_vanishes_for_first_layer(self, chain_10_2, rng):
        circuit = sample_circuit(chain_10_2, 2, rng)
        v = modify_circuit(circuit)
        psi_0 = self._psi_0(chain_10_2, 2, rng)
        for t in (0, 1):
            delta, norm = deviation_state(circuit, v, psi_0, t)
            assert not delta.normalized
            assert norm <= 1e-12

    def test_telescoping_bound_holds(self, chain_10_2, rng):
        circuit = sample_circuit(chain_10_2, 8, rng)
        v = modify_circuit(circuit)
        psi_0 = self._psi_0(chain_10_2, 4, rng)
        for t in range(9):
            _, norm = deviation_state(circuit, v, psi_0, t)
            bound = telescoping_bound(circuit, psi_0, t)
            assert norm <= bound.projector_sum + 1e-10
            assert bound.projector_sum <= bound.charge_sum + 1e-10

    def test_wider_uncharged_region_deviates_less(self, chain_10_2, rng):
        # same circuits and same labels outside C for every width
        widths, depth = (2, 4, 6), 5
        norms = np.zeros((30, len(widths)))
        for run in range(30):
            circuit = sample_circuit(chain_10_2, depth, rng)
            v = modify_circuit(circuit)
            labels = random_x_labels(10, 2, rng)
            for j, m in enumerate(widths):
                psi_0 = product_state(with_zero_region(labels, central_sites(10, m)), chain_10_2)
                norms[run, j] = deviation_state(circuit, v, psi_0, depth)[1]
        means = norms.mean(axis=0)
        assert means[0] > means[1] > means[2]


class TestReplay:
    def test_saved_circuit_replays_exactly(self, tmp_path, chain_6_2, rng):
        circuit = sample_circuit(chain_6_2, 3, rng)
        path = save_circuit(circuit, tmp_path / "circuit.json")
        restored = load_circuit(path)
        assert restored.key == circuit.key
        psi = haar_random_state(chain_6_2, rng)
        assert np.array_equal(evolve(psi, circuit, 3).amplitudes, evolve(psi, restored, 3).amplitudes)

    def test_missing_gate(self, chain_6_2, rng):
        record = circuit_to_record(sample_circuit(chain_6_2, 2, rng))
        record["gates"] = record["gates"][:-1]
        with pytest.raises(DomainError):
            circuit_from_record(record)
