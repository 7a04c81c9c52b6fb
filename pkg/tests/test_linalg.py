import numpy as np
import pytest
from scipy import stats

from shadowopt.linalg import (
    PAULI_MATRICES,
    PauliString,
    apply_gate,
    basis_state,
    expectation,
    haar_random_state,
    measure_standard_basis,
    operator_from_pauli,
    outer,
    pauli_coefficients,
    pauli_to_dense,
)


class TestApplyGate:
    def test_x_flips_zero(self):
        out = apply_gate(basis_state(1), PAULI_MATRICES["X"], (0,))
        assert np.allclose(out, basis_state(1, 1))

    def test_identity_leaves_state(self, rng):
        psi = haar_random_state(3, rng)
        out = apply_gate(psi, np.eye(4), (0, 2))
        assert np.allclose(out, psi)

    def test_z_flips_plus_to_minus(self):
        plus = np.array([1, 1]) / np.sqrt(2)
        out = apply_gate(plus, PAULI_MATRICES["Z"], (0,))
        assert np.allclose(out, np.array([1, -1]) / np.sqrt(2))

    def test_norm_preserved_random_unitaries(self, rng):
        psi = haar_random_state(4, rng)
        for _ in range(20):
            gate = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
            targets = tuple(rng.choice(4, size=2, replace=False))
            psi = apply_gate(psi, gate, targets)
            assert abs(np.linalg.norm(psi) - 1) < 1e-10

    def test_repeated_target_rejected(self):
        with pytest.raises(ValueError, match="repeated"):
            apply_gate(basis_state(2), np.eye(4), (1, 1))

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            apply_gate(basis_state(2), np.eye(4), (0,))


class TestMeasurement:
    def test_basis_state_is_certain(self, rng):
        bits, post = measure_standard_basis(basis_state(2, 0b01), rng)
        assert bits == "01"
        assert np.allclose(post, basis_state(2, 0b01))

    def test_all_zeros_eight_qubits(self, rng):
        bits, _ = measure_standard_basis(basis_state(8), rng)
        assert bits == "0" * 8

    def test_bell_state_born_frequencies(self, rng):
        bell = np.zeros(4, dtype=complex)
        bell[0b00] = bell[0b11] = 1 / np.sqrt(2)
        draws = 100_000
        counts = {"00": 0, "11": 0}
        # sample indices directly from the amplitudes for speed
        probs = np.abs(bell) ** 2
        outcomes = rng.choice(4, size=draws, p=probs)
        counts["00"] = int(np.sum(outcomes == 0))
        counts["11"] = int(np.sum(outcomes == 3))
        assert counts["00"] + counts["11"] == draws
        sigma = np.sqrt(draws * 0.25)
        assert abs(counts["00"] - draws / 2) <= 3 * sigma

    def test_born_rule_chi_squared(self, rng):
        psi = haar_random_state(3, rng)
        probs = np.abs(psi) ** 2
        draws = 100_000
        outcomes = np.array([int(measure_standard_basis(psi, rng)[0], 2) for _ in range(2000)])
        # chi^2 on a moderate sample through the public API
        observed = np.bincount(outcomes, minlength=8)
        _, p = stats.chisquare(observed, probs * len(outcomes))
        assert p > 0.001


class TestExpectation:
    def test_z_on_zero(self):
        assert expectation(basis_state(1), PAULI_MATRICES["Z"]) == pytest.approx(1.0)

    def test_projector_on_maximally_mixed(self):
        rho = np.eye(2, dtype=complex) / 2
        proj = outer(basis_state(1))
        assert expectation(rho, proj) == pytest.approx(0.5)

    def test_x_on_zero(self):
        assert expectation(basis_state(1), PAULI_MATRICES["X"]) == pytest.approx(0.0, abs=1e-12)

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="Hermitian"):
            expectation(basis_state(1), np.array([[0, 1], [0, 0]], dtype=complex))

    def test_linear_in_observable_and_state(self, rng):
        for n in (2, 3, 4):
            rho1 = outer(haar_random_state(n, rng))
            rho2 = outer(haar_random_state(n, rng))
            a = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
            o1 = a + a.conj().T
            b = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
            o2 = b + b.conj().T
            lhs = expectation(0.3 * rho1 + 0.7 * rho2, o1 + 2.5 * o2)
            rhs = (
                0.3 * expectation(rho1, o1) + 0.7 * expectation(rho2, o1)
                + 2.5 * (0.3 * expectation(rho1, o2) + 0.7 * expectation(rho2, o2))
            )
            assert lhs == pytest.approx(rhs, abs=1e-9)


class TestHaarStates:
    def test_unit_norm(self, rng):
        for n in (1, 3, 6):
            assert abs(np.linalg.norm(haar_random_state(n, rng)) - 1) < 1e-12

    def test_first_moment_two_qubits(self, rng):
        vals = np.array([abs(haar_random_state(2, rng)[0]) ** 2 for _ in range(10_000)])
        # E |<0|psi>|^2 = 1/2^n; var of |<0|psi>|^2 is about (1/4)^2 at n=2
        assert abs(vals.mean() - 0.25) <= 3 * vals.std() / np.sqrt(len(vals))

    def test_second_moment_one_qubit(self, rng):
        vals = np.array([abs(haar_random_state(1, rng)[0]) ** 4 for _ in range(10_000)])
        # E |<0|psi>|^4 = 2 / (2^n (2^n + 1)) = 1/3 at n=1
        assert abs(vals.mean() - 1 / 3) <= 3 * vals.std() / np.sqrt(len(vals))

    def test_unitary_invariance(self, rng):
        fixed = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
        plain = np.array([abs(haar_random_state(2, rng)[0]) ** 2 for _ in range(4000)])
        rotated = np.array(
            [abs((fixed @ haar_random_state(2, rng))[0]) ** 2 for _ in range(4000)]
        )
        _, p = stats.ks_2samp(plain, rotated)
        assert p > 0.001


class TestPauliStrings:
    def test_z_tensor_i_dense(self):
        mat = pauli_to_dense(PauliString.from_label("ZI"))
        assert np.allclose(mat, np.diag([1, 1, -1, -1]))

    def test_identity_dense(self):
        assert np.allclose(pauli_to_dense(PauliString.from_label("III")), np.eye(8))

    def test_negative_phase(self):
        mat = pauli_to_dense(PauliString.from_label("X", phase=-1))
        assert np.allclose(mat, -PAULI_MATRICES["X"])

    def test_multiplication_homomorphism(self, rng):
        letters = "IXYZ"
        for _ in range(50):
            a = PauliString(tuple(rng.choice(list(letters), size=3)))
            b = PauliString(tuple(rng.choice(list(letters), size=3)))
            assert np.allclose(
                pauli_to_dense(a * b), pauli_to_dense(a) @ pauli_to_dense(b), atol=1e-12
            )

    def test_invalid_phase_rejected(self):
        with pytest.raises(ValueError):
            PauliString(("X",), phase=0.5)


class TestPauliTransform:
    def test_round_trip(self, rng):
        for n in (1, 2, 4):
            mat = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
            back = operator_from_pauli(pauli_coefficients(mat), n)
            assert np.allclose(back, mat, atol=1e-11)

    def test_known_coefficients(self):
        coeffs = pauli_coefficients(outer(basis_state(1)))
        assert np.allclose(coeffs, [0.5, 0, 0, 0.5])
