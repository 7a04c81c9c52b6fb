import numpy as np
import pytest
from scipy import stats

from shadowopt.brickwork import BrickworkLayout
from shadowopt.budget import BudgetExhaustedError, BudgetLedger
from shadowopt.channel import channel_mpo, pattern_weights
from shadowopt.linalg import (
    PauliString,
    basis_state,
    haar_random_state,
    outer,
    pauli_to_dense,
)
from shadowopt.shadows import (
    ShadowSet,
    acquire_shadow_set,
    acquire_snapshots,
    estimate_expectation,
    estimate_locally_scrambled_norm,
    estimate_state_shadow_norm,
    exhaustive_shadow_norm,
    materialize_dense,
    materialize_mps,
    median_of_means,
    plan_samples,
    snapshot_state_mps,
    verify_variance_bound,
)


class TestAcquisition:
    def test_identity_blocks_on_zero_state(self, rng):
        layout = BrickworkLayout(3, 2)
        snaps = acquire_snapshots(
            lambda: basis_state(3), layout, 10, rng, force_identity_blocks=True
        )
        assert all(s.outcome == "000" for s in snaps)

    def test_ledger_counts_copies(self, rng):
        ledger = BudgetLedger()
        acquire_snapshots(lambda: basis_state(2), BrickworkLayout(2, 1), 7, rng, ledger=ledger)
        assert ledger.copies_consumed == 7
        assert ledger.breakdown == {"shadow_acquisition": 7}

    def test_maximally_mixed_outcomes_uniform(self, rng):
        layout = BrickworkLayout(3, 2)
        sset = acquire_shadow_set(None, layout, 1, 40_000, rng)
        counts = np.bincount(sset.outcome_indices, minlength=8)
        _, p = stats.chisquare(counts)
        assert p > 0.001

    def test_budget_limit_enforced(self, rng):
        ledger = BudgetLedger(limit=5)
        with pytest.raises(BudgetExhaustedError):
            acquire_snapshots(lambda: basis_state(2), BrickworkLayout(2, 1), 6, rng, ledger=ledger)
        assert ledger.copies_consumed == 0  # spend is all-or-nothing


class TestMaterialization:
    def test_identity_blocks_snapshot_known_shadow(self, rng):
        layout = BrickworkLayout(2, 1)
        weights = pattern_weights(layout)
        snap = acquire_snapshots(
            lambda: basis_state(2), layout, 1, rng, force_identity_blocks=True
        )[0]
        shadow = materialize_dense(snap, weights)
        expected = 0.25 * (
            np.eye(4)
            + 5 * pauli_to_dense(PauliString.from_label("ZI"))
            + 5 * pauli_to_dense(PauliString.from_label("IZ"))
            + 5 * pauli_to_dense(PauliString.from_label("ZZ"))
        )
        assert np.allclose(shadow, expected, atol=1e-12)

    def test_unit_trace_and_hermitian(self, rng):
        layout = BrickworkLayout(4, 2)
        weights = pattern_weights(layout)
        psi = haar_random_state(4, rng)
        for snap in acquire_snapshots(lambda: psi, layout, 100, rng):
            shadow = materialize_dense(snap, weights)
            assert np.trace(shadow).real == pytest.approx(1.0, abs=1e-10)
            assert np.max(np.abs(shadow - shadow.conj().T)) < 1e-10

    def test_matches_stabilizer_expansion(self, rng):
        from shadowopt.brickwork import stabilizer_decomposition

        layout = BrickworkLayout(4, 2)
        weights = pattern_weights(layout)
        psi = haar_random_state(4, rng)
        for snap in acquire_snapshots(lambda: psi, layout, 3, rng):
            reference = sum(
                sign * pauli_to_dense(p) / weights.weight(p.support)
                for p, sign in stabilizer_decomposition(snap.circuit, snap.outcome)
            ) / 2**4
            assert np.max(np.abs(materialize_dense(snap, weights) - reference)) < 1e-10

    def test_shadows_are_not_states_but_their_mean_is(self, rng):
        from shadowopt.linalg import is_density_operator

        layout = BrickworkLayout(3, 2)
        weights = pattern_weights(layout)
        psi = haar_random_state(3, rng)
        snaps = acquire_snapshots(lambda: psi, layout, 4000, rng)
        shadows = [materialize_dense(s, weights) for s in snaps[:20]]
        assert not any(is_density_operator(s) for s in shadows)
        sset = acquire_shadow_set(lambda: psi, layout, 1, 4000, rng)
        mean = sset.group_means()[0]
        # the running mean approaches a state; allow residual sampling noise
        assert is_density_operator(mean, psd_atol=0.2)

    def test_unbiased_mean_approaches_state(self, rng):
        layout = BrickworkLayout(2, 1)
        weights = pattern_weights(layout)
        plus2 = np.full(4, 0.5, dtype=complex)  # |+>|+>
        sset = acquire_shadow_set(lambda: plus2, layout, 1, 100_000, rng)
        mean = np.mean(sset.group_means(), axis=0)
        # entrywise 3-sigma band: shadow entries are bounded by ~5^n/2^n
        assert np.max(np.abs(mean - outer(plus2))) < 0.06

    def test_weight_table_layout_mismatch_rejected(self, rng):
        layout = BrickworkLayout(4, 2)
        other = pattern_weights(BrickworkLayout(4, 3))
        snap = acquire_snapshots(lambda: basis_state(4), layout, 1, rng)[0]
        with pytest.raises(ValueError, match="layout"):
            materialize_dense(snap, other)


class TestMpsMaterialization:
    @pytest.mark.parametrize("n,d", [(4, 2), (6, 3), (8, 3)])
    def test_matches_dense(self, n, d, rng):
        layout = BrickworkLayout(n, d)
        weights = pattern_weights(layout)
        mpo = channel_mpo(weights)
        psi = haar_random_state(n, rng)
        snap = acquire_snapshots(lambda: psi, layout, 1, rng)[0]
        shadow = materialize_mps(snap, weights, mpo)
        assert np.max(np.abs(shadow.to_dense() - materialize_dense(snap, weights))) < 1e-9

    def test_identity_blocks_have_bond_one_before_inversion(self, rng):
        layout = BrickworkLayout(4, 2)
        snap = acquire_snapshots(
            lambda: basis_state(4), layout, 1, rng, force_identity_blocks=True
        )[0]
        assert snapshot_state_mps(snap).max_bond() == 1

    def test_trace_one(self, rng):
        layout = BrickworkLayout(4, 2)
        weights = pattern_weights(layout)
        snap = acquire_snapshots(lambda: haar_random_state(4, rng), layout, 1, rng)[0]
        assert materialize_mps(snap, weights).trace() == pytest.approx(1.0, abs=1e-9)


class TestMedianOfMeans:
    def test_constant_values(self):
        assert median_of_means(np.full((4, 5), 7.0)) == 7.0

    def test_median_robust_to_outlier_group(self):
        assert median_of_means([[1.0], [2.0], [100.0]]) == 2.0

    def test_even_group_count_averages_central_pair(self):
        assert median_of_means([[1.0], [3.0]]) == 2.0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            median_of_means([])


class TestEstimateExpectation:
    def test_trace_evaluator_gives_one(self, rng):
        layout = BrickworkLayout(3, 2)
        sset = acquire_shadow_set(lambda: haar_random_state(3, rng), layout, 3, 5, rng)
        value = estimate_expectation(sset, lambda g: np.trace(g).real)
        assert value == pytest.approx(1.0, abs=1e-9)

    def test_equals_per_snapshot_median_of_means(self, rng):
        layout = BrickworkLayout(4, 2)
        psi = haar_random_state(4, rng)
        sset = acquire_shadow_set(lambda: psi, layout, 4, 25, rng)
        for _ in range(20):
            a = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
            obs = a + a.conj().T
            via_groups = estimate_expectation(
                sset, lambda g: np.einsum("ij,ji->", g, obs).real
            )
            per_snapshot = median_of_means(
                sset.per_snapshot_values(obs).reshape(sset.t1, sset.t2)
            )
            assert via_groups == pytest.approx(per_snapshot, abs=1e-9)

    def test_concentrates_on_projector(self, rng):
        layout = BrickworkLayout(4, 2)
        rho = basis_state(4)
        sset = acquire_shadow_set(lambda: rho, layout, 10, 1000, rng)
        z0 = pauli_to_dense(PauliString.from_label("ZIII"))
        est = estimate_expectation(sset, lambda g: np.einsum("ij,ji->", g, z0).real)
        assert abs(est - 1.0) < 0.05


class TestSamplePlanner:
    def test_one_design_documented_values(self):
        plan = plan_samples(0.1, 0.1, 20, 1e4, 1.0, "one-design")
        assert plan.t1 == 26
        assert plan.t2 == 272_000

    def test_two_design_arithmetic(self):
        plan = plan_samples(0.1, 0.2, 10, 50, 1.0, "two-design")
        assert plan.t1 == int(np.ceil(2 * np.log(2 * 99 * 50 / (100 * 0.1 - 1))))
        assert plan.t2 == int(np.ceil(136 / 0.04 * 21))

    def test_m_at_boundary_rejected(self):
        with pytest.raises(ValueError, match="1/delta"):
            plan_samples(0.1, 0.1, 10, 100, 1.0, "one-design")
        with pytest.raises(ValueError, match="sqrt"):
            plan_samples(0.01, 0.1, 10, 100, 1.0, "two-design")

    def test_monotone_in_evaluations_and_accuracy(self):
        base = plan_samples(0.1, 0.2, 20, 100, 1.0)
        more_evals = plan_samples(0.1, 0.2, 20, 10_000, 1.0)
        tighter = plan_samples(0.1, 0.1, 20, 100, 1.0)
        assert more_evals.t1 >= base.t1 and more_evals.t2 >= base.t2
        assert tighter.t1 >= base.t1 and tighter.t2 >= base.t2

    def test_invalid_ranges(self):
        with pytest.raises(ValueError):
            plan_samples(1.5, 0.1, 20, 100, 1.0)
        with pytest.raises(ValueError):
            plan_samples(0.1, 0.1, 20, 0, 1.0)


class TestShadowNorms:
    def test_exhaustive_matches_monte_carlo(self, rng):
        layout = BrickworkLayout(2, 1)
        obs = outer(basis_state(2))
        traceless = obs - np.trace(obs) / 4 * np.eye(4)
        exact = exhaustive_shadow_norm(layout, traceless)
        est, se = estimate_locally_scrambled_norm(layout, traceless, 100_000, rng)
        assert abs(est - exact) <= 3 * se

    def test_traceful_observable_rejected(self, rng):
        with pytest.raises(ValueError, match="traceless"):
            estimate_locally_scrambled_norm(BrickworkLayout(2, 1), np.eye(4), 10, rng)

    def test_zero_observable(self, rng):
        est, se = estimate_locally_scrambled_norm(BrickworkLayout(2, 1), np.zeros((4, 4)), 10, rng)
        assert est == 0.0 and se == 0.0

    def test_uniform_mode_reproduces_locally_scrambled(self, rng):
        layout = BrickworkLayout(2, 1)
        obs = outer(basis_state(2)) - np.eye(4) / 4
        exact = exhaustive_shadow_norm(layout, obs)
        est, se = estimate_state_shadow_norm(layout, obs, None, 100_000, rng)
        assert abs(est - exact) <= 3 * se


class TestVarianceBound:
    def test_small_scale_report(self, rng):
        layout = BrickworkLayout(4, 2)
        report = verify_variance_bound(layout, outer(basis_state(4)), 50, 500, rng)
        assert report.passed
        assert report.variance_stderr > 0
        assert report.bound_fourth_power == pytest.approx(64.0)
        assert report.bound_squared == pytest.approx(64.0)

    def test_constant_observable_zero_variance(self, rng):
        layout = BrickworkLayout(4, 2)
        report = verify_variance_bound(layout, np.eye(16) / 16, 10, 50, rng)
        assert report.variance == pytest.approx(0.0, abs=1e-20)


class TestShadowSetPlumbing:
    def test_snapshot_round_trip(self, rng):
        layout = BrickworkLayout(3, 2)
        sset = acquire_shadow_set(lambda: haar_random_state(3, rng), layout, 2, 3, rng)
        snaps = sset.snapshots()
        rebuilt = ShadowSet.from_snapshots(snaps, 2, 3)
        assert np.array_equal(rebuilt.block_indices, sset.block_indices)
        assert np.array_equal(rebuilt.outcome_indices, sset.outcome_indices)

    def test_exact_hook_group_means(self):
        rho = outer(basis_state(3))
        sset = ShadowSet.exact(rho, 4, BrickworkLayout(3, 2))
        assert all(np.allclose(g, rho) for g in sset.group_means())
