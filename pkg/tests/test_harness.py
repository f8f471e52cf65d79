import math

import numpy as np
import pytest

from harness import (
    CERTIFICATE_COLUMNS,
    ExperimentSpec,
    certify,
    entropy_growth_sweep,
    enumerate_s_prime,
    region_overlaps,
    run_instance,
    run_selftest,
    scaling_width,
)
from qudit_state import (
    ChainConfig,
    DomainError,
    LocalBasisLabel,
    ResourceLimitError,
    haar_random_state,
    product_state,
)


def spec_for(n_sites=10, d=2, m=6, depth=10, alpha=2.0, **kwargs):
    return ExperimentSpec(config=ChainConfig(N=n_sites, d=d, seed=7), t_max=depth, m=m, alpha=alpha, **kwargs)


class TestExperimentSpec:
    def test_scaling_width(self):
        assert scaling_width(0, 2.0, 100) == 2
        assert scaling_width(1, 2.0, 100) == 2
        # 2 sqrt(10 ln 10) = 9.60 -> 10
        assert scaling_width(10, 2.0, 100) == 10
        assert scaling_width(1000, 2.0, 10) == 8
        assert all(scaling_width(t, 1.3, 50) % 2 == 0 for t in range(100))

    @pytest.mark.parametrize("kwargs", [
        {"n_sites": 12},
        {"n_sites": 8, "m": 2},
        {"alpha": 1.0},
        {"alpha": 0.5},
        {"m": 5},
        {"m": 10},
        {"depth": -1},
        {"mode": "adaptive"},
        {"p_degree": 0},
        {"n_realizations": 0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            spec_for(**kwargs)

    def test_widths_and_p(self):
        fixed = spec_for()
        assert fixed.width_at(100) == 6
        assert fixed.p_value(6) == 36.0
        scaling = spec_for(mode="scaling", scaling_c=2.0)
        assert scaling.width_at(10) == 8  # clamped to N - 2


class TestCertificates:
    def test_single_instance(self):
        certificates = run_instance(spec_for())
        assert [c.t for c in certificates] == list(range(11))
        for c in certificates:
            assert c.all_steps_hold
            assert c.overlap0 == pytest.approx(2 ** -3, abs=1e-12)
            assert c.lambda1_lower <= c.lambda1 + 1e-9
            assert c.v_second_schmidt <= 1e-10
        first = certificates[0]
        assert first.R_alpha == 0.0
        assert first.delta_norm == 0.0
        assert certificates[1].delta_norm <= 1e-12

    @pytest.mark.parametrize("n_sites,d,m", [(10, 2, 6), (6, 3, 2)])
    @pytest.mark.parametrize("alpha", [1.5, 2.0, 5.0])
    def test_every_step_holds_over_realizations(self, n_sites, d, m, alpha):
        spec = spec_for(n_sites=n_sites, d=d, m=m, alpha=alpha, n_realizations=20)
        certificates = certify(spec)
        assert len(certificates) == 20 * 11
        assert all(c.all_steps_hold for c in certificates)
        for c in certificates:
            assert c.overlap0 == pytest.approx(d ** (-m / 2), abs=1e-12)

    def test_bound_decreases_in_lower_bound(self):
        rows = sorted(run_instance(spec_for()), key=lambda c: c.lambda1_lower)
        bounds = [c.bound for c in rows]
        assert bounds == sorted(bounds, reverse=True)

    def test_rows_have_every_column(self):
        row = run_instance(spec_for(depth=1))[0].to_row()
        assert set(CERTIFICATE_COLUMNS) <= set(row)
        assert row["holds"]

    def test_deterministic(self):
        spec = spec_for(n_realizations=3, depth=4)
        first = [c.to_row() for c in certify(spec, np.random.default_rng(1))]
        second = [c.to_row() for c in certify(spec, np.random.default_rng(1))]
        assert first == second

    def test_scaling_mode(self):
        spec = spec_for(depth=8, mode="scaling", scaling_c=1.0)
        certificates = run_instance(spec)
        assert [c.m for c in certificates] == [spec.width_at(t) for t in range(9)]
        assert all(c.all_steps_hold for c in certificates)


class TestSPrime:
    def test_members_are_orthonormal(self, rng):
        # |<psi_j|psi_k>| for all X fillings of a 3-site region
        chain = ChainConfig(N=6, d=2)
        region = [2, 3, 4]
        labels = [LocalBasisLabel.x(int(k)) for k in rng.integers(0, 2, size=6)]
        fillings = [(a, b, c) for a in range(2) for b in range(2) for c in range(2)]
        gram = np.zeros((8, 8))
        for row, filling in enumerate(fillings):
            member = list(labels)
            for site, k in zip(region, filling):
                member[site - 1] = LocalBasisLabel.x(k)
            overlaps = region_overlaps(product_state(member, chain), labels, region)
            gram[row] = np.abs(overlaps).reshape(-1)
        assert np.allclose(gram, np.eye(8), atol=1e-12)

    def test_bessel_for_any_state(self, rng):
        chain = ChainConfig(N=6, d=2)
        labels = [LocalBasisLabel.x(0)] * 6
        overlaps = region_overlaps(haar_random_state(chain, rng), labels, [3, 4])
        assert np.sum(np.abs(overlaps) ** 2) <= 1.0 + 1e-12

    def test_time_zero_keeps_everything(self):
        report = enumerate_s_prime(spec_for(m=4), 0)
        assert report.delta_norm == 0.0
        assert report.fraction == 1.0
        assert report.holds

    @pytest.mark.parametrize("t", [2, 6, 10])
    def test_markov_fraction(self, t):
        report = enumerate_s_prime(spec_for(m=4, p_degree=2), t)
        assert report.n_members == 16
        assert report.fraction >= 1 - 1 / t ** 2
        assert report.mean_square <= report.delta_norm ** 2 + 1e-10
        assert report.holds

    def test_enumeration_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_s_prime(spec_for(d=3, m=8), 2)


class TestSweep:
    def test_sweep(self):
        spec = spec_for(depth=8, n_realizations=3)
        result = entropy_growth_sweep(spec)
        assert result.all_hold
        assert len(result.records) == 3 * 9
        assert len(result.summary) == 9
        assert result.summary[0]["R_alpha_mean"] == 0.0
        ceiling = 5 * math.log(2)
        for row in result.records:
            assert row["R_alpha"] <= row["bound"] + 1e-9
            assert row["R_alpha"] <= ceiling + 1e-9

    def test_scaling_sweep_uses_growing_width(self):
        spec = spec_for(depth=6, n_realizations=2, mode="scaling", scaling_c=2.0)
        result = entropy_growth_sweep(spec)
        assert result.all_hold
        for row in result.records:
            assert row["m"] == scaling_width(row["t"], 2.0, 10)
        assert [row["m"] for row in result.summary] == [scaling_width(t, 2.0, 10) for t in range(7)]
        assert result.summary[-1]["m"] > result.summary[1]["m"]


def test_selftest_passes():
    results = run_selftest(seed=0)
    assert len(results) == 7
    assert all(r.passed for r in results), [r for r in results if not r.passed]
