"""Cost functions for state preparation and gate synthesis, with three
evaluation backends: exact statevector, finite-shot sampling, and shadows.

State preparation minimizes the infidelity 1 - |<target| U(theta)^dag |0>|^2.
Gate synthesis minimizes 1 - |tr(U(theta)^dag V)|^2 / 4^n, evaluated through
the normalized column-stacked state of V on 2n qubits, so its shadow backend
is the state-preparation one with the vectorized ansatz state.

Both observables are rank-one projectors with unit Frobenius norm. The shadow
backend consumes no copies: all randomness is frozen in the shadow set, so the
surrogate cost is a deterministic function of theta. Its value may leave
[0, 1] (shadows are not states) and is intentionally not clamped.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ansatz import AnsatzDescriptor, apply_ansatz, gate_sequence, vectorize_unitary
from .budget import BudgetLedger
from .channel import channel_mpo
from .linalg import basis_state
from .mps import MPS
from .shadows import ShadowSet, materialize_mps

VQSP = "vqsp"
VQCS = "vqcs"


@dataclass(frozen=True)
class CostFunction:
    """A minimization target: ``kind`` selects state preparation ("vqsp",
    target is an n-qubit state) or gate synthesis ("vqcs", target is the
    2n-qubit column-stacked state of the unknown gate)."""

    kind: str
    target: np.ndarray
    ansatz: AnsatzDescriptor
    observable_norm: float = 1.0

    def __post_init__(self):
        if self.kind not in (VQSP, VQCS):
            raise ValueError(f"unknown cost kind {self.kind!r}")
        target = np.asarray(self.target, dtype=complex)
        if abs(np.linalg.norm(target) - 1.0) > 1e-9:
            raise ValueError("target state must be normalized")
        expected = 2**self.ansatz.n if self.kind == VQSP else 4**self.ansatz.n
        if target.shape != (expected,):
            raise ValueError(f"target shape {target.shape} does not match ansatz")
        object.__setattr__(self, "target", target)

    @property
    def total_qubits(self) -> int:
        return self.ansatz.n if self.kind == VQSP else 2 * self.ansatz.n


def evaluation_state(cost: CostFunction, params: np.ndarray) -> np.ndarray:
    """The parameterized pure state whose overlap with the target defines the
    cost: U(theta)^dag |0> for state prep, (I (x) U(theta)) |Phi> for synthesis."""
    if cost.kind == VQSP:
        return apply_ansatz(cost.ansatz, params, basis_state(cost.ansatz.n), adjoint=True)
    return vectorize_unitary(cost.ansatz, params)


def evaluation_state_mps(cost: CostFunction, params: np.ndarray) -> MPS:
    """Tensor-network form of ``evaluation_state``."""
    if cost.kind == VQSP:
        psi = MPS.from_bitstring("0" * cost.ansatz.n)
        seq = [(m.conj().T, t) for m, t in reversed(gate_sequence(cost.ansatz, params))]
        for mat, targets in seq:
            psi.apply_gate(mat, targets)
        return psi
    n = cost.ansatz.n
    psi = MPS.from_bitstring("0" * (2 * n))
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    for q in range(n):
        psi.apply_1q(hadamard, q)
        psi.apply_gate(cnot, (q, q + n))
    for mat, targets in gate_sequence(cost.ansatz, params):
        psi.apply_gate(mat, tuple(t + n for t in targets))
    return psi


def exact_cost(cost: CostFunction, params: np.ndarray) -> float:
    """Noise-free cost from the statevector overlap; always in [0, 1]."""
    amp = np.vdot(cost.target, evaluation_state(cost, params))
    value = 1.0 - float(np.abs(amp) ** 2)
    return min(max(value, 0.0), 1.0)


def shot_cost(
    cost: CostFunction,
    params: np.ndarray,
    shots: int,
    rng: np.random.Generator,
    ledger: BudgetLedger | None = None,
) -> float:
    """Finite-copy estimate: the projective measurement onto the target
    succeeds with probability 1 - cost; the sample mean over ``shots`` copies
    is returned as the cost estimate. Spends ``shots`` copies."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if ledger is not None:
        ledger.spend("shot_evaluation", shots)
    p_success = 1.0 - exact_cost(cost, params)
    hits = int(rng.binomial(shots, p_success))
    return 1.0 - hits / shots


def shadow_cost(
    cost: CostFunction,
    params: np.ndarray,
    shadow_set: ShadowSet,
    backend: str = "dense",
) -> float:
    """Shadow estimate of the cost; consumes no copies.

    dense: one evaluation state per call, then T1 quadratic forms against the
    cached group-mean shadows. mps: the same estimator contracted site by
    site per snapshot (scalar group means, then the median); equal to the
    dense path up to float roundoff.
    """
    if shadow_set.n != cost.total_qubits:
        raise ValueError(
            f"shadow set is on {shadow_set.n} qubits but the cost needs {cost.total_qubits}"
        )
    if backend == "dense":
        phi = evaluation_state(cost, params)
        vals = [float(np.vdot(phi, g @ phi).real) for g in shadow_set.group_means()]
    elif backend == "mps":
        phi = evaluation_state_mps(cost, params)
        mpo = _cached_channel_mpo(shadow_set)
        per_snapshot = np.empty(len(shadow_set))
        for i in range(len(shadow_set)):
            shadow = materialize_mps(shadow_set.snapshot(i), shadow_set.weights(), mpo)
            per_snapshot[i] = shadow.expectation_with_state(phi)
        vals = per_snapshot.reshape(shadow_set.t1, shadow_set.t2).mean(axis=1)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return 1.0 - float(np.median(vals))


def _cached_channel_mpo(shadow_set: ShadowSet):
    mpo = getattr(shadow_set, "_channel_mpo", None)
    if mpo is None:
        mpo = channel_mpo(shadow_set.weights())
        shadow_set._channel_mpo = mpo
    return mpo


def frobenius_invariance_check(observable: np.ndarray, unitary: np.ndarray, atol: float = 1e-9) -> bool:
    """Whether ||O||_F equals ||U O U^dag||_F (it always should)."""
    before = np.linalg.norm(observable)
    after = np.linalg.norm(unitary @ observable @ unitary.conj().T)
    return bool(abs(before - after) <= atol)
