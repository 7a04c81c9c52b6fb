import numpy as np
import pytest

from shadowopt.ansatz import (
    FAMILIES,
    build_ansatz,
    apply_ansatz,
    crossing_metric,
    gate_sequence,
    maximally_entangled_state,
    random_parameters,
    template_matrix,
    vectorize_unitary,
    CNOT,
)
from shadowopt.linalg import apply_gate, basis_state, haar_random_state


def dense_unitary(desc, params):
    dim = 2**desc.n
    U = np.eye(dim, dtype=complex)
    for mat, targets in gate_sequence(desc, params):
        for c in range(dim):
            U[:, c] = apply_gate(U[:, c], mat, targets)
    return U


class TestLayouts:
    def test_ala_8_3_counts(self):
        desc = build_ansatz("ala", 8, 3)
        assert len(desc.gates) == 11  # 4 + 3 + 4 blocks
        assert desc.num_params == 44

    def test_ttn_8_counts(self):
        desc = build_ansatz("ttn", 8)
        assert len(desc.gates) == 7  # binary tree: n - 1 nodes
        assert desc.num_params == 28

    def test_hea_2_1_counts(self):
        desc = build_ansatz("hea", 2, 1)
        boxes = [g for g in desc.gates if g.template == "box2"]
        cnots = [g for g in desc.gates if g.template == "cnot"]
        assert len(boxes) == 2 and len(cnots) == 1
        assert desc.num_params == 4

    def test_parameter_counts_locked_small_n(self):
        assert build_ansatz("ala", 4, 2).num_params == 4 * (2 + 1)
        assert build_ansatz("ala", 6, 3).num_params == 4 * (3 + 2 + 3)
        assert build_ansatz("hea", 4, 3).num_params == 2 * 4 * 3
        assert build_ansatz("ttn", 4).num_params == 4 * 3
        assert build_ansatz("mera", 4).num_params == 4 * (1 + 2 + 0 + 1)
        assert build_ansatz("mera", 8).num_params == 4 * 11

    def test_layout_regeneration_deterministic(self):
        a = build_ansatz("mera", 8, 2)
        b = build_ansatz("mera", 8, 2)
        assert a == b

    def test_tree_families_need_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            build_ansatz("ttn", 6)
        with pytest.raises(ValueError, match="power of two"):
            build_ansatz("mera", 5)

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError, match="family"):
            build_ansatz("qaoa", 4)

    def test_doubled_blocks_double_parameters(self):
        plain = build_ansatz("ala", 4, 2)
        doubled = build_ansatz("ala", 4, 2, doubled_blocks=True)
        assert doubled.num_params == 2 * plain.num_params


class TestApplication:
    def test_zero_angles_reduce_to_cnot(self):
        desc = build_ansatz("ala", 2, 1)
        z = np.zeros(4)
        assert np.allclose(apply_ansatz(desc, z, basis_state(2)), basis_state(2))
        assert np.allclose(apply_ansatz(desc, z, basis_state(2, 0b10)), basis_state(2, 0b11))
        assert np.allclose(template_matrix("block4", z), CNOT)

    def test_forward_then_adjoint_is_identity(self, rng):
        for family in FAMILIES:
            desc = build_ansatz(family, 4, 2)
            params = random_parameters(desc, rng)
            psi = haar_random_state(4, rng)
            round_trip = apply_ansatz(desc, params, apply_ansatz(desc, params, psi), adjoint=True)
            assert np.max(np.abs(round_trip - psi)) < 1e-10, family

    def test_single_block_matches_dense(self, rng):
        desc = build_ansatz("ala", 2, 1)
        params = random_parameters(desc, rng)
        psi = haar_random_state(2, rng)
        dense = dense_unitary(desc, params)
        assert np.allclose(apply_ansatz(desc, params, psi), dense @ psi, atol=1e-10)

    def test_norm_preserved_every_family(self, rng):
        for family in FAMILIES:
            desc = build_ansatz(family, 8, 2)
            params = random_parameters(desc, rng)
            out = apply_ansatz(desc, params, haar_random_state(8, rng))
            assert abs(np.linalg.norm(out) - 1) < 1e-10

    def test_wrong_parameter_count_rejected(self):
        desc = build_ansatz("ala", 4, 1)
        with pytest.raises(ValueError, match="parameters"):
            apply_ansatz(desc, np.zeros(3), basis_state(4))


class TestCrossingMetric:
    def test_ala_is_one_per_layer(self):
        assert crossing_metric(build_ansatz("ala", 8, 3)) == 3

    def test_single_distant_gate(self):
        from shadowopt.ansatz import AnsatzDescriptor, GateSpec

        desc = AnsatzDescriptor("ala", 4, 1, (GateSpec("block4", (0, 3), (0, 1, 2, 3)),))
        assert crossing_metric(desc) == 1

    def test_empty_circuit(self):
        from shadowopt.ansatz import AnsatzDescriptor

        assert crossing_metric(AnsatzDescriptor("ala", 4, 1, ())) == 0

    def test_logarithmic_growth_for_trees(self):
        tree_4 = crossing_metric(build_ansatz("ttn", 4))
        tree_16 = crossing_metric(build_ansatz("ttn", 16))
        assert tree_16 - tree_4 == 2  # one extra tree level per doubling
        mera_4 = crossing_metric(build_ansatz("mera", 4))
        mera_16 = crossing_metric(build_ansatz("mera", 16))
        assert mera_16 <= mera_4 + 6

    def test_linear_growth_for_brick_families(self):
        assert crossing_metric(build_ansatz("ala", 8, 6)) == 2 * crossing_metric(
            build_ansatz("ala", 8, 3)
        )
        hea_1 = crossing_metric(build_ansatz("hea", 8, 1))
        hea_3 = crossing_metric(build_ansatz("hea", 8, 3))
        assert hea_3 == 3 * hea_1


class TestVectorization:
    def test_identity_gives_bell_state(self):
        assert np.allclose(maximally_entangled_state(1), np.array([1, 0, 0, 1]) / np.sqrt(2))

    def test_normalized(self, rng):
        desc = build_ansatz("ala", 3, 2)
        vec = vectorize_unitary(desc, random_parameters(desc, rng))
        assert abs(np.linalg.norm(vec) - 1) < 1e-10

    def test_overlap_equals_normalized_trace(self, rng):
        desc = build_ansatz("ala", 2, 2)
        for _ in range(5):
            ta, tb = random_parameters(desc, rng), random_parameters(desc, rng)
            lhs = abs(np.vdot(vectorize_unitary(desc, ta), vectorize_unitary(desc, tb))) ** 2
            ua, ub = dense_unitary(desc, ta), dense_unitary(desc, tb)
            rhs = abs(np.trace(ua.conj().T @ ub)) ** 2 / 4**2
            assert lhs == pytest.approx(rhs, abs=1e-10)
