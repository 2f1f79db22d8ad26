import numpy as np
import pytest

from ergokit.chaosdiag import linear_entropy
from ergokit.coarsegrain import energy_basis, protocol1_work, protocol2_work, uniform_coarse_graining
from ergokit.harness import (
    SweepConfig,
    build_context,
    linear_fit,
    member_seed,
    run_ancilla_scaling,
    run_coarse_scan,
    run_experiment,
    run_known_sweep,
    run_spectral,
    run_tripartite_sweep,
    run_unknown_sweep,
    sample_product_state,
    _member_rng,
    _member_state,
    _unknown_member,
)
from ergokit.models import evolve
from ergokit.qcore import reduced_density


def small_top(experiment="known", **kw):
    defaults = dict(
        model="kicked-top", experiment=experiment, grid=(0.0, 2.0, 5.0),
        ensemble=12, j_system=2.0, j_ancilla=0.5, seed=909,
        workers=1,
    )
    defaults.update(kw)
    return SweepConfig(**defaults)


class TestSampleProductState:
    def test_single_factor_is_haar_state(self):
        from ergokit.qcore import haar_state

        a = sample_product_state([5], np.random.default_rng(3))
        b = haar_state(5, np.random.default_rng(3))
        assert np.array_equal(a, b)

    def test_factors_unentangled(self):
        psi = sample_product_state([3, 4], np.random.default_rng(11))
        for keep in (0, 1):
            assert linear_entropy(reduced_density(psi, (3, 4), keep)) < 1e-12

    def test_deterministic(self):
        a = sample_product_state([2, 3], np.random.default_rng(7))
        b = sample_product_state([2, 3], np.random.default_rng(7))
        assert np.array_equal(a, b)


class TestLinearFit:
    def test_exact_line(self):
        x = np.arange(6.0)
        fit = linear_fit(x, 2 * x + 1)
        assert abs(fit.slope - 2) < 1e-12 and abs(fit.intercept - 1) < 1e-12
        assert abs(fit.r - 1) < 1e-12

    def test_constant_y(self):
        fit = linear_fit(np.arange(5.0), np.full(5, 3.0))
        assert fit.slope == 0.0 and fit.r == 0.0

    def test_noisy_synthetic_oracle(self):
        rng = np.random.default_rng(5)
        x = np.linspace(0, 1, 50)
        y = 3 * x + rng.normal(scale=1e-6, size=50)
        fit = linear_fit(x, y)
        assert abs(fit.slope - 3) < 1e-4

    def test_zero_x_variance_rejected(self):
        with pytest.raises(ValueError, match="variance"):
            linear_fit(np.ones(5), np.arange(5.0))


class TestSeeding:
    def test_member_seed_is_stable(self):
        assert member_seed(1, 0.5, 3) == member_seed(1, 0.5, 3)
        assert member_seed(1, 0.5, 3) != member_seed(1, 0.5, 4)
        assert member_seed(1, 0.5, 3) != member_seed(1, 0.25, 3)
        assert member_seed(1, 0.5, 3) != member_seed(2, 0.5, 3)

    def test_member_rng_reproducible(self):
        a = _member_rng(42, 1.5, 7).standard_normal(4)
        b = _member_rng(42, 1.5, 7).standard_normal(4)
        assert np.array_equal(a, b)


class TestKnownSweep:
    def test_integrable_point_has_no_entanglement(self):
        records = run_known_sweep(small_top(ensemble=20))
        at_zero = records[0]
        assert at_zero.param == 0.0
        assert at_zero.values["S_lin_mean"] < 1e-9
        assert at_zero.values["dW_mean"] < 1e-9

    def test_means_nonnegative_and_finite(self):
        for rec in run_known_sweep(small_top()):
            assert rec.values["dW_mean"] >= -1e-9
            assert rec.values["W_mean"] >= -1e-9
            for v in rec.values.values():
                assert np.isfinite(v)
            assert rec.values["S_lin_se"] >= 0.0

    def test_deterministic_across_worker_counts(self):
        serial = run_known_sweep(small_top(workers=1))
        parallel = run_known_sweep(small_top(workers=2))
        for a, b in zip(serial, parallel):
            assert a == b

    def test_grid_permutation_only_permutes_records(self):
        fwd = run_known_sweep(small_top(grid=(0.5, 3.0)))
        rev = run_known_sweep(small_top(grid=(3.0, 0.5)))
        assert fwd[0] == rev[1] and fwd[1] == rev[0]

    def test_ising_smoke(self):
        cfg = SweepConfig(
            model="kicked-ising", experiment="known", grid=(0.9,), ensemble=4,
            ising_length=4, ising_tilts=(0.7, 0.8, 0.8, 0.7), seed=5, workers=1,
        )
        (rec,) = run_known_sweep(cfg)
        assert 0.0 <= rec.values["S_lin_mean"] < 1.0
        assert rec.values["dW_mean"] >= -1e-9

    def test_ising_near_integrable_revival_at_full_kick(self):
        # entanglement and work gain at M = pi fall back to their M = 0
        # level, well below the chaotic plateau (the residual floor comes
        # from the one cut-crossing Ising bond, so it is not near zero)
        cfg = SweepConfig(
            model="kicked-ising", experiment="known",
            grid=(0.0, 0.5 * np.pi, np.pi), ensemble=150, seed=31, workers=1,
        )
        records = run_known_sweep(cfg)
        s = [rec.values["S_lin_mean"] for rec in records]
        dw = [rec.values["dW_mean"] for rec in records]
        assert s[2] < 0.65 * s[1]
        assert dw[2] < 0.65 * dw[1]
        # the Floquet operators at 0 and pi coincide, so only sampling noise
        # separates the endpoint means
        assert abs(s[2] - s[0]) < 0.05
        assert abs(dw[2] - dw[0]) < 0.05


class TestTripartiteSweep:
    def test_decoupled_measured_ancilla_gains_nothing(self):
        cfg = small_top(experiment="tripartite", c1=0.0, c2=1.0, j_aux=0.5, ensemble=8)
        records = run_tripartite_sweep(cfg)
        for rec in records:
            if rec.values["c1"] == 0.0:
                assert rec.values["dW_mean"] <= 1e-9

    def test_swap_symmetry_pointwise(self):
        cfg = small_top(experiment="tripartite", c1=1.0, c2=0.0, j_aux=0.5, ensemble=8)
        records = run_tripartite_sweep(cfg)
        by_param: dict[float, dict[float, float]] = {}
        for rec in records:
            by_param.setdefault(rec.param, {})[rec.values["c1"]] = rec.values["S_lin_mean"]
        for param, variants in by_param.items():
            assert abs(variants[1.0] - variants[0.0]) < 1e-9

    def test_ising_tripartite_runs(self):
        cfg = SweepConfig(
            model="kicked-ising", experiment="tripartite", grid=(0.8,), ensemble=3,
            ising_length=4, ising_tilts=(0.7, 0.8, 0.8, 0.7), c1=1.0, c2=0.0,
            seed=3, workers=1,
        )
        records = run_tripartite_sweep(cfg)
        assert len(records) == 2
        gains = {rec.values["c1"]: rec.values["dW_mean"] for rec in records}
        assert gains[0.0] <= 1e-9


class TestUnknownSweep:
    def test_member_path_matches_protocol_operations(self):
        cfg = small_top(experiment="unknown", coarse_n=1)
        ctx = build_context(cfg, 2.0)
        cg = uniform_coarse_graining(ctx.h_s.dim, 5, energy_basis(ctx.h_s))
        rng = _member_rng(cfg.seed, 2.0, 0)
        psi = evolve(_member_state(ctx, rng), ctx.floquet, cfg.time_steps)
        member = _unknown_member(ctx, cg, psi, ctx.h_s)
        w1, oe1 = protocol1_work(psi, ctx.h_s, ctx.meas, cg, dims=ctx.dims,
                                 measured=ctx.measured, keep=ctx.keep)
        w2, oe2 = protocol2_work(psi, ctx.h_s, ctx.meas, cg, dims=ctx.dims,
                                 measured=ctx.measured, keep=ctx.keep)
        assert abs(member["Wrc"] - w1) < 1e-10
        assert abs(member["OE1"] - oe1) < 1e-10
        assert abs(member["Wbar"] - w2) < 1e-10
        assert abs(member["OE2"] - oe2) < 1e-10

    def test_protocol_ordering_in_records(self):
        records, regressions = run_unknown_sweep(small_top(experiment="unknown", coarse_n=1))
        for rec in records:
            assert rec.values["Wbar_mean"] <= rec.values["Wrc_mean"] + 1e-9
            assert 0.0 <= rec.values["fid_mean"] <= 1.0 + 1e-12
        assert "Wrc_vs_OE1" in regressions

    def test_protocol_selection_limits_columns(self):
        records, _ = run_unknown_sweep(small_top(experiment="unknown", coarse_n=1, protocol="2"))
        assert "Wbar_mean" in records[0].values
        assert "Wrc_mean" not in records[0].values


class TestCoarseScan:
    def test_monotone_in_cell_size_per_member_pairing(self):
        cfg = small_top(experiment="coarse-scan", grid=(0.5,), coarse_sizes=(1, 5), ensemble=10)
        records, regressions = run_coarse_scan(cfg)
        means = {rec.values["n"]: rec.values["Wbar_mean"] for rec in records}
        assert means[5.0] <= means[1.0] + 1e-9
        assert not regressions  # needs >= 3 sizes

    def test_regression_present_with_three_sizes(self):
        cfg = small_top(
            experiment="coarse-scan", grid=(0.5,), coarse_sizes=(1, 2, 8),
            j_system=3.5, ensemble=6,
        )
        records, regressions = run_coarse_scan(cfg)
        assert len(records) == 3
        assert "Wbar_vs_log_inv_n@param=0.5" in regressions


class TestAncillaScaling:
    def test_log_growth_with_tiny_ensemble(self):
        cfg = SweepConfig(
            model="kicked-top", experiment="ancilla-scaling", grid=(7.0,),
            ensemble=30, chaotic_kappa=7.0, ancilla_spins=(0.5, 1.0, 1.5),
            j_system=2.0, seed=60, workers=1,
        )
        records, regressions = run_ancilla_scaling(cfg)
        assert [rec.param for rec in records] == [2.0, 3.0, 4.0]
        assert "dW_vs_log_dA" in regressions

    def test_rejected_on_ising(self):
        with pytest.raises(ValueError, match="kicked top"):
            run_ancilla_scaling(SweepConfig(model="kicked-ising", experiment="ancilla-scaling"))


class TestSpectral:
    def test_top_spectral_runs_and_splits_parity(self):
        cfg = small_top(experiment="spectral", grid=(6.0,), j_system=19 / 2, j_ancilla=1.0)
        (rec,) = run_spectral(cfg)
        assert rec.values["n_sectors"] == 2.0
        assert rec.values["n_phases"] == 60.0
        assert 0.0 <= rec.values["r_mean"] <= 1.0

    def test_full_spectrum_flag(self):
        cfg = small_top(
            experiment="spectral", grid=(6.0,), j_system=19 / 2, j_ancilla=1.0,
            desymmetrize=False,
        )
        (rec,) = run_spectral(cfg)
        assert rec.values["n_sectors"] == 1.0


class TestRunExperiment:
    def test_dispatch_known(self):
        records, regressions = run_experiment(small_top())
        assert len(records) == 3 and regressions == {}

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError, match="coarse-n"):
            run_experiment(small_top(experiment="unknown", coarse_n=3))

    def test_config_roundtrip(self):
        cfg = small_top(experiment="unknown")
        again = SweepConfig.from_dict(cfg.to_dict())
        assert again == cfg

    def test_unknown_config_key_rejected(self):
        with pytest.raises(ValueError, match="unknown config keys"):
            SweepConfig.from_dict({"no_such_key": 1})
