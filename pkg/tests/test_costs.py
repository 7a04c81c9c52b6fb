import numpy as np
import pytest

from shadowopt.ansatz import build_ansatz, random_parameters, apply_ansatz, vectorize_unitary
from shadowopt.brickwork import BrickworkLayout
from shadowopt.budget import BudgetExhaustedError, BudgetLedger
from shadowopt.costs import (
    CostFunction,
    evaluation_state,
    evaluation_state_mps,
    exact_cost,
    frobenius_invariance_check,
    shadow_cost,
    shot_cost,
)
from shadowopt.linalg import basis_state, haar_random_state, outer
from shadowopt.shadows import ShadowSet, acquire_shadow_set


@pytest.fixture
def vqsp_problem(rng):
    desc = build_ansatz("ala", 4, 2)
    theta_star = random_parameters(desc, rng)
    target = apply_ansatz(desc, theta_star, basis_state(4), adjoint=True)
    return CostFunction("vqsp", target, desc), theta_star


class TestExactCost:
    def test_self_consistency_zero(self, vqsp_problem):
        cost, theta_star = vqsp_problem
        assert exact_cost(cost, theta_star) == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_target_gives_one(self, rng):
        desc = build_ansatz("ala", 2, 1)
        theta = random_parameters(desc, rng)
        reached = apply_ansatz(desc, theta, basis_state(2), adjoint=True)
        # build a state orthogonal to the reached one
        other = haar_random_state(2, rng)
        other = other - np.vdot(reached, other) * reached
        other /= np.linalg.norm(other)
        cost = CostFunction("vqsp", other, desc)
        assert exact_cost(cost, theta) == pytest.approx(1.0, abs=1e-10)

    def test_synthesis_zero_and_orthogonal(self, rng):
        desc = build_ansatz("ala", 2, 2, doubled_blocks=True)
        theta_v = random_parameters(desc, rng)
        cost = CostFunction("vqcs", vectorize_unitary(desc, theta_v), desc)
        assert exact_cost(cost, theta_v) == pytest.approx(0.0, abs=1e-12)
        # V = P U(theta) for non-identity Pauli P has tr(U^dag V) = tr(P) = 0,
        # so its column stack is exactly orthogonal: cost 1
        from shadowopt.linalg import PauliString, apply_gate, pauli_to_dense

        ortho = apply_gate(
            vectorize_unitary(desc, theta_v),
            pauli_to_dense(PauliString.from_label("XZ")),
            (2, 3),  # second register
        )
        assert exact_cost(CostFunction("vqcs", ortho, desc), theta_v) == pytest.approx(1.0, abs=1e-10)

    def test_synthesis_matches_dense_trace_at_three_gate_qubits(self, rng):
        from shadowopt.ansatz import gate_sequence
        from shadowopt.linalg import apply_gate

        desc = build_ansatz("ala", 3, 2, doubled_blocks=True)
        theta_v = random_parameters(desc, rng)
        cost = CostFunction("vqcs", vectorize_unitary(desc, theta_v), desc)

        def dense_unitary(params):
            U = np.eye(8, dtype=complex)
            for mat, targets in gate_sequence(desc, params):
                for c in range(8):
                    U[:, c] = apply_gate(U[:, c], mat, targets)
            return U

        V = dense_unitary(theta_v)
        for _ in range(5):
            theta = random_parameters(desc, rng)
            via_trace = 1.0 - abs(np.trace(dense_unitary(theta).conj().T @ V)) ** 2 / 4**3
            assert exact_cost(cost, theta) == pytest.approx(via_trace, abs=1e-9)

    def test_range_always_unit_interval(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        for _ in range(20):
            v = exact_cost(cost, random_parameters(cost.ansatz, rng))
            assert 0.0 <= v <= 1.0


class TestShotCost:
    def test_deterministic_extremes(self, vqsp_problem, rng):
        cost, theta_star = vqsp_problem
        assert shot_cost(cost, theta_star, 50, rng) == pytest.approx(0.0, abs=1e-12)
        # orthogonal target: success probability 0, estimate exactly 1
        reached = evaluation_state(cost, theta_star)
        other = haar_random_state(4, rng)
        other = other - np.vdot(reached, other) * reached
        other /= np.linalg.norm(other)
        ortho_cost = CostFunction("vqsp", other, cost.ansatz)
        assert shot_cost(ortho_cost, theta_star, 50, rng) == pytest.approx(1.0, abs=1e-12)

    def test_unbiased_mean(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        theta = random_parameters(cost.ansatz, rng)
        p = exact_cost(cost, theta)
        reps = 10_000
        est = np.mean([shot_cost(cost, theta, 10, rng) for _ in range(reps)])
        sigma = np.sqrt(p * (1 - p) / (10 * reps))
        assert abs(est - p) <= 3 * max(sigma, 1e-6)

    def test_ledger_spend_and_exhaustion(self, vqsp_problem, rng):
        cost, theta = vqsp_problem
        ledger = BudgetLedger(limit=25)
        shot_cost(cost, theta, 10, rng, ledger)
        shot_cost(cost, theta, 10, rng, ledger)
        with pytest.raises(BudgetExhaustedError):
            shot_cost(cost, theta, 10, rng, ledger)
        assert ledger.copies_consumed == 20


class TestShadowCost:
    def test_exact_group_means_reproduce_exact_cost(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        sset = ShadowSet.exact(outer(cost.target), 5, BrickworkLayout(4, 3))
        for _ in range(5):
            theta = random_parameters(cost.ansatz, rng)
            assert shadow_cost(cost, theta, sset) == pytest.approx(
                exact_cost(cost, theta), abs=1e-9
            )

    def test_concentration_at_desk_scale(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        layout = BrickworkLayout(4, 3)
        sset = acquire_shadow_set(lambda: cost.target, layout, 10, 1000, rng)
        hits = 0
        for _ in range(100):
            theta = random_parameters(cost.ansatz, rng)
            if abs(shadow_cost(cost, theta, sset) - exact_cost(cost, theta)) <= 0.05:
                hits += 1
        assert hits >= 95

    def test_deterministic_given_shadow_set(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        layout = BrickworkLayout(4, 2)
        sset = acquire_shadow_set(lambda: cost.target, layout, 3, 20, rng)
        theta = random_parameters(cost.ansatz, rng)
        assert shadow_cost(cost, theta, sset) == shadow_cost(cost, theta, sset)

    def test_consumes_no_copies(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        layout = BrickworkLayout(4, 2)
        ledger = BudgetLedger()
        sset = acquire_shadow_set(lambda: cost.target, layout, 3, 20, rng, ledger=ledger)
        before = ledger.copies_consumed
        shadow_cost(cost, random_parameters(cost.ansatz, rng), sset)
        assert ledger.copies_consumed == before == 60

    def test_qubit_mismatch_rejected(self, vqsp_problem, rng):
        cost, _ = vqsp_problem
        sset = ShadowSet.exact(np.eye(8) / 8, 3, BrickworkLayout(3, 2))
        with pytest.raises(ValueError, match="qubits"):
            shadow_cost(cost, random_parameters(cost.ansatz, rng), sset)

    def test_values_outside_unit_interval_not_clamped(self, vqsp_problem, rng):
        # shadows are not states: a single-snapshot surrogate regularly
        # leaves [0, 1], and the estimator must report it unclamped
        cost, _ = vqsp_problem
        layout = BrickworkLayout(4, 2)
        sset = acquire_shadow_set(lambda: cost.target, layout, 1, 1, rng)
        values = [
            shadow_cost(cost, random_parameters(cost.ansatz, rng), sset) for _ in range(30)
        ]
        assert any(v < 0.0 or v > 1.0 for v in values), values

    def test_dense_and_mps_backends_agree(self, rng):
        desc = build_ansatz("ttn", 4)
        theta_star = random_parameters(desc, rng)
        target = apply_ansatz(desc, theta_star, basis_state(4), adjoint=True)
        cost = CostFunction("vqsp", target, desc)
        sset = acquire_shadow_set(lambda: target, BrickworkLayout(4, 3), 3, 10, rng)
        for _ in range(5):
            theta = random_parameters(desc, rng)
            dense = shadow_cost(cost, theta, sset, backend="dense")
            mps = shadow_cost(cost, theta, sset, backend="mps")
            assert dense == pytest.approx(mps, abs=1e-8)

    def test_synthesis_backends_agree(self, rng):
        desc = build_ansatz("ala", 2, 1, doubled_blocks=True)
        theta_v = random_parameters(desc, rng)
        target = vectorize_unitary(desc, theta_v)
        cost = CostFunction("vqcs", target, desc)
        sset = acquire_shadow_set(lambda: target, BrickworkLayout(4, 2), 3, 10, rng)
        theta = random_parameters(desc, rng)
        dense = shadow_cost(cost, theta, sset, backend="dense")
        mps = shadow_cost(cost, theta, sset, backend="mps")
        assert dense == pytest.approx(mps, abs=1e-8)


class TestEvaluationStates:
    def test_mps_matches_dense_for_all_families(self, rng):
        for family in ("ala", "hea", "ttn", "mera"):
            desc = build_ansatz(family, 4, 1)
            theta = random_parameters(desc, rng)
            cost = CostFunction("vqsp", haar_random_state(4, rng), desc)
            dense = evaluation_state(cost, theta)
            mps = evaluation_state_mps(cost, theta).to_dense()
            assert np.max(np.abs(dense - mps)) < 1e-10, family

    def test_synthesis_state_mps(self, rng):
        desc = build_ansatz("ala", 2, 1, doubled_blocks=True)
        theta = random_parameters(desc, rng)
        cost = CostFunction("vqcs", vectorize_unitary(desc, theta), desc)
        other = random_parameters(desc, rng)
        assert np.max(np.abs(
            evaluation_state(cost, other) - evaluation_state_mps(cost, other).to_dense()
        )) < 1e-10


class TestFrobeniusInvariance:
    def test_projector_under_random_unitary(self, rng):
        obs = outer(basis_state(2))
        unitary = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
        assert frobenius_invariance_check(obs, unitary)

    def test_pauli_under_cnot(self):
        from shadowopt.ansatz import CNOT
        from shadowopt.linalg import PauliString, pauli_to_dense

        assert frobenius_invariance_check(pauli_to_dense(PauliString.from_label("ZI")), CNOT)

    def test_many_random_pairs(self, rng):
        for _ in range(50):
            a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
            obs = a + a.conj().T
            unitary = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))[0]
            assert frobenius_invariance_check(obs, unitary)
