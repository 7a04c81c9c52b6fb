"""Shadow acquisition, materialization, estimation, and sample planning.

A snapshot is one (circuit, outcome) pair; its shadow is the inverse-channel
image of U^dag |u><u| U. Estimation uses the median of T1 group means of T2
snapshots each. Group-mean shadow operators are precomputed once per set: by
linearity of the estimators this is exactly equivalent to the per-snapshot
median of means, and it cuts each evaluation from T1*T2 to T1 quadratic forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clifford
from .brickwork import (
    BrickworkCircuit,
    BrickworkLayout,
    apply_circuits_batch,
    basis_states_batch,
    born_sample_batch,
    outcome_strings,
)
from .budget import BudgetLedger
from .channel import (
    InverseChannelMPO,
    PatternWeightTable,
    apply_inverse_channel,
    channel_mpo,
    pattern_weights,
)
from .linalg import index_to_bitstring, outer
from .mps import MPS, PauliMPS

_CHUNK = 1 << 14


def _batched_quadratic_form(psi: np.ndarray, hermitian: np.ndarray) -> np.ndarray:
    """Row-wise <psi_b| M |psi_b> for Hermitian M, via one BLAS product."""
    return np.einsum("bi,bi->b", psi.conj(), psi @ hermitian.T).real


@dataclass(frozen=True)
class Snapshot:
    circuit: BrickworkCircuit
    outcome: str

    def __post_init__(self):
        if len(self.outcome) != self.circuit.layout.n:
            raise ValueError("outcome length does not match circuit")


class ShadowSet:
    """T1 x T2 snapshots plus their cached group-mean shadow operators."""

    def __init__(
        self,
        layout: BrickworkLayout,
        t1: int,
        t2: int,
        block_indices: np.ndarray,
        outcome_indices: np.ndarray,
    ):
        if t1 < 1 or t2 < 1:
            raise ValueError("t1 and t2 must be >= 1")
        total = t1 * t2
        block_indices = np.asarray(block_indices, dtype=np.uint16)
        outcome_indices = np.asarray(outcome_indices, dtype=np.int64)
        if block_indices.shape != (total, layout.num_blocks):
            raise ValueError("block index array does not match t1*t2 snapshots")
        if outcome_indices.shape != (total,):
            raise ValueError("outcome array does not match t1*t2 snapshots")
        self.layout = layout
        self.t1 = t1
        self.t2 = t2
        self.block_indices = block_indices
        self.outcome_indices = outcome_indices
        self._group_means: list[np.ndarray] | None = None
        self._weights: PatternWeightTable | None = None

    def __len__(self) -> int:
        return self.t1 * self.t2

    @property
    def n(self) -> int:
        return self.layout.n

    def snapshot(self, i: int) -> Snapshot:
        return Snapshot(
            BrickworkCircuit(self.layout, self.block_indices[i]),
            index_to_bitstring(int(self.outcome_indices[i]), self.layout.n),
        )

    def snapshots(self) -> list[Snapshot]:
        return [self.snapshot(i) for i in range(len(self))]

    def weights(self) -> PatternWeightTable:
        if self._weights is None:
            self._weights = pattern_weights(self.layout)
        return self._weights

    def group_means(self) -> list[np.ndarray]:
        """Dense group-mean shadows, materialized once and cached."""
        if self._group_means is None:
            self._group_means = [
                apply_inverse_channel(self.weights(), sigma)
                for sigma in self._group_mean_premeasurement()
            ]
        return self._group_means

    def _group_mean_premeasurement(self) -> list[np.ndarray]:
        """Per group: the average of U^dag |u><u| U before channel inversion."""
        out = []
        for g in range(self.t1):
            lo, hi = g * self.t2, (g + 1) * self.t2
            acc = np.zeros((2**self.n, 2**self.n), dtype=complex)
            for lo_c in range(lo, hi, _CHUNK):
                hi_c = min(lo_c + _CHUNK, hi)
                states = basis_states_batch(self.outcome_indices[lo_c:hi_c], self.n)
                psi = apply_circuits_batch(
                    states, self.block_indices[lo_c:hi_c], self.layout, adjoint=True
                )
                acc += psi.T @ psi.conj()
            out.append(acc / self.t2)
        return out

    def per_snapshot_values(self, observable: np.ndarray) -> np.ndarray:
        """tr(shadow_j O) for every snapshot j, without materializing shadows."""
        dual = apply_inverse_channel(self.weights(), observable)
        total = len(self)
        vals = np.empty(total)
        for lo in range(0, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            states = basis_states_batch(self.outcome_indices[lo:hi], self.n)
            psi = apply_circuits_batch(states, self.block_indices[lo:hi], self.layout, adjoint=True)
            vals[lo:hi] = _batched_quadratic_form(psi, dual)
        return vals

    @classmethod
    def from_snapshots(cls, snapshots: list[Snapshot], t1: int, t2: int) -> "ShadowSet":
        layout = snapshots[0].circuit.layout
        blocks = np.stack([s.circuit.blocks for s in snapshots])
        outcomes = np.array([int(s.outcome, 2) for s in snapshots], dtype=np.int64)
        return cls(layout, t1, t2, blocks, outcomes)

    @classmethod
    def exact(cls, rho: np.ndarray, t1: int, layout: BrickworkLayout) -> "ShadowSet":
        """Test hook: a set whose group means are exactly the given state."""
        n = layout.n
        total_blocks = layout.num_blocks
        obj = cls(
            layout,
            t1,
            1,
            np.zeros((t1, total_blocks), dtype=np.uint16),
            np.zeros(t1, dtype=np.int64),
        )
        obj._group_means = [np.asarray(rho, dtype=complex).copy() for _ in range(t1)]
        return obj


def acquire_shadow_set(
    prepare_state,
    layout: BrickworkLayout,
    t1: int,
    t2: int,
    rng: np.random.Generator,
    ledger: BudgetLedger | None = None,
    force_identity_blocks: bool = False,
) -> ShadowSet:
    """Sample t1*t2 snapshots of the prepared state.

    ``prepare_state`` is a zero-argument callable returning the unknown state
    vector; passing None simulates the maximally mixed state (outcomes drawn
    uniformly, which is exact for that source). Each snapshot consumes one
    copy from the ledger.
    """
    total = t1 * t2
    if ledger is not None:
        ledger.spend("shadow_acquisition", total)
    n = layout.n
    if force_identity_blocks:
        blocks = np.full((total, layout.num_blocks), clifford.identity_index(), dtype=np.uint16)
    else:
        blocks = rng.integers(clifford.CLIFFORD2_SIZE, size=(total, layout.num_blocks)).astype(np.uint16)
    outcomes = np.empty(total, dtype=np.int64)
    if prepare_state is None:
        outcomes[:] = rng.integers(2**n, size=total)
    else:
        state = np.asarray(prepare_state(), dtype=complex)
        if state.shape != (2**n,):
            raise ValueError("prepared state does not match layout size")
        for lo in range(0, total, _CHUNK):
            hi = min(lo + _CHUNK, total)
            batch = np.broadcast_to(state, (hi - lo, 2**n))
            evolved = apply_circuits_batch(batch, blocks[lo:hi], layout)
            outcomes[lo:hi] = born_sample_batch(evolved, rng)
    return ShadowSet(layout, t1, t2, blocks, outcomes)


def acquire_snapshots(
    prepare_state,
    layout: BrickworkLayout,
    count: int,
    rng: np.random.Generator,
    ledger: BudgetLedger | None = None,
    force_identity_blocks: bool = False,
) -> list[Snapshot]:
    """Acquire ``count`` independent snapshots (one copy each)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    sset = acquire_shadow_set(
        prepare_state, layout, 1, count, rng, ledger=ledger,
        force_identity_blocks=force_identity_blocks,
    )
    return sset.snapshots()


def materialize_dense(snapshot: Snapshot, weights: PatternWeightTable) -> np.ndarray:
    """Dense shadow: the inverse channel applied to U^dag |u><u| U."""
    layout = snapshot.circuit.layout
    if weights.layout != layout:
        raise ValueError("weight table does not match the snapshot layout")
    states = basis_states_batch(np.array([int(snapshot.outcome, 2)]), layout.n)
    psi = apply_circuits_batch(states, snapshot.circuit.blocks[None, :], layout, adjoint=True)[0]
    return apply_inverse_channel(weights, outer(psi))


def snapshot_state_mps(snapshot: Snapshot) -> MPS:
    """MPS of U^dag |u>: the state part of the shadow, before channel inversion."""
    layout = snapshot.circuit.layout
    psi = MPS.from_bitstring(snapshot.outcome)
    dense = clifford.dense_table()
    positions = layout.positions
    for pos in range(layout.num_blocks - 1, -1, -1):
        _, q, _ = positions[pos]
        psi.apply_2q(dense[snapshot.circuit.blocks[pos]].conj().T, q)
    return psi


def materialize_mps(
    snapshot: Snapshot,
    weights: PatternWeightTable,
    mpo: InverseChannelMPO | None = None,
) -> PauliMPS:
    """Tensor-train shadow equal (densified) to ``materialize_dense``."""
    if mpo is None:
        mpo = channel_mpo(weights)
    psi = snapshot_state_mps(snapshot)
    sigma = PauliMPS.from_state_mps(psi)
    return sigma.multiply_pattern_function(mpo.lifted_cores())


def median_of_means(values) -> float:
    """Median over group means; ``values`` has one row per group."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("median_of_means needs at least one value")
    if arr.ndim == 1:
        arr = arr[:, None]
    return float(np.median(arr.mean(axis=1)))


def estimate_expectation(shadow_set: ShadowSet, observable_evaluator) -> float:
    """Median over groups of the evaluator applied to each group-mean shadow.

    For evaluators linear in the shadow this equals the per-snapshot
    median of means exactly.
    """
    values = [float(observable_evaluator(g)) for g in shadow_set.group_means()]
    return float(np.median(values))


@dataclass(frozen=True)
class SamplePlan:
    t1: int
    t2: int
    delta: float
    epsilon: float
    m: float
    num_evaluations: float
    frobenius_norm: float
    design: str

    @property
    def total(self) -> int:
        return self.t1 * self.t2


def plan_samples(
    delta: float,
    epsilon: float,
    m: float,
    num_evaluations: float,
    frobenius_norm: float,
    design: str = "one-design",
) -> SamplePlan:
    """Group count and size guaranteeing eps-accurate estimates of all
    ``num_evaluations`` values with probability 1-delta, for an input state
    drawn from a 1-design or a 2-design. Natural log; ceilings throughout."""
    if not (0 < delta < 1 and 0 < epsilon < 1):
        raise ValueError("delta and epsilon must lie in (0, 1)")
    if num_evaluations < 1:
        raise ValueError("number of evaluations must be >= 1")
    if design not in ("one-design", "two-design"):
        raise ValueError("design must be 'one-design' or 'two-design'")
    C = float(num_evaluations)
    F2 = frobenius_norm**2
    if design == "one-design":
        denom = m * delta - 1.0
        if denom <= 0:
            raise ValueError(f"need m > 1/delta for a 1-design source (m*delta-1 = {denom})")
        t1 = math.ceil(2.0 * math.log(2.0 * (m - 1.0) * C / denom))
        t2 = math.ceil(136.0 / epsilon**2 * m * F2)
    else:
        denom = m * m * delta - 1.0
        if denom <= 0:
            raise ValueError(f"need m > 1/sqrt(delta) for a 2-design source (m^2*delta-1 = {denom})")
        t1 = math.ceil(2.0 * math.log(2.0 * (m * m - 1.0) * C / denom))
        t2 = math.ceil(136.0 / epsilon**2 * (2.0 * m + 1.0) * F2)
    return SamplePlan(max(t1, 1), max(t2, 1), delta, epsilon, m, C, frobenius_norm, design)


# ---------------------------------------------------------------------------
# Shadow-norm estimation and the variance check across random states.
# ---------------------------------------------------------------------------

def _shadow_norm_samples(
    layout: BrickworkLayout,
    observable: np.ndarray,
    state: np.ndarray | None,
    samples: int,
    rng: np.random.Generator,
    weights: PatternWeightTable | None = None,
) -> np.ndarray:
    """Per-sample squared shadow expectations <O>_shadow^2 with (U, u) drawn
    from the ensemble and the given state (None = maximally mixed)."""
    if weights is None:
        weights = pattern_weights(layout)
    dual = apply_inverse_channel(weights, np.asarray(observable, dtype=complex))
    n = layout.n
    vals = np.empty(samples)
    done = 0
    while done < samples:
        b = min(_CHUNK, samples - done)
        blocks = rng.integers(clifford.CLIFFORD2_SIZE, size=(b, layout.num_blocks)).astype(np.uint16)
        if state is None:
            u = rng.integers(2**n, size=b)
        else:
            batch = np.broadcast_to(np.asarray(state, dtype=complex), (b, 2**n))
            evolved = apply_circuits_batch(batch, blocks, layout)
            u = born_sample_batch(evolved, rng)
        psi = apply_circuits_batch(basis_states_batch(u, n), blocks, layout, adjoint=True)
        v = _batched_quadratic_form(psi, dual)
        vals[done : done + b] = v**2
        done += b
    return vals


def estimate_locally_scrambled_norm(
    layout: BrickworkLayout,
    observable: np.ndarray,
    samples: int,
    rng: np.random.Generator,
) -> tuple[float, float]:
    """Monte Carlo estimate of the squared shadow norm at the maximally mixed
    state. The observable must be traceless (pass the traceless part)."""
    observable = np.asarray(observable, dtype=complex)
    if abs(np.trace(observable)) > 1e-9:
        raise ValueError("observable must be traceless; subtract tr(O)/2^n * I first")
    if not observable.any():
        return 0.0, 0.0
    vals = _shadow_norm_samples(layout, observable, None, samples, rng)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples))


def estimate_state_shadow_norm(
    layout: BrickworkLayout,
    observable: np.ndarray,
    state: np.ndarray | None,
    samples: int,
    rng: np.random.Generator,
) -> tuple[float, float]:
    """State-dependent squared shadow norm; state=None means maximally mixed."""
    observable = np.asarray(observable, dtype=complex)
    if abs(np.trace(observable)) > 1e-9:
        raise ValueError("observable must be traceless; subtract tr(O)/2^n * I first")
    if not observable.any():
        return 0.0, 0.0
    vals = _shadow_norm_samples(layout, observable, state, samples, rng)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples))


def exhaustive_shadow_norm(layout: BrickworkLayout, observable: np.ndarray) -> float:
    """Exact squared shadow norm at the maximally mixed state for the
    single-block layout, by enumerating all circuits and outcomes."""
    if layout.n != 2 or layout.d != 1:
        raise ValueError("exhaustive norm is implemented for n=2, d=1 only")
    weights = pattern_weights(layout)
    dual = apply_inverse_channel(weights, np.asarray(observable, dtype=complex))
    dense = clifford.dense_table()
    total = 0.0
    for u in range(4):
        rows = dense[:, u, :]  # <u| U_m ; U^dag|u> = rows^dag
        v = np.einsum("mi,ij,mj->m", rows, dual, rows.conj()).real
        total += float(np.sum(v**2)) / 4.0
    return total / clifford.CLIFFORD2_SIZE


@dataclass(frozen=True)
class VarianceBoundReport:
    """Spread of the state-dependent squared shadow norm across random states,
    compared against the fourth-power Frobenius bound (64 ||O||_F^4). The
    squared variant (64 ||O||_F^2) is reported alongside for reference."""

    norm_estimates: np.ndarray
    variance: float
    variance_stderr: float
    bound_fourth_power: float
    bound_squared: float
    passed: bool

    @property
    def upper_95(self) -> float:
        return self.variance + 1.96 * self.variance_stderr


def verify_variance_bound(
    layout: BrickworkLayout,
    observable: np.ndarray,
    num_states: int,
    samples_per_state: int,
    rng: np.random.Generator,
) -> VarianceBoundReport:
    """Estimate Var over Haar states of the squared shadow norm of O and
    compare against 64 ||O||_F^4."""
    from .linalg import haar_random_state

    weights = pattern_weights(layout)
    observable = np.asarray(observable, dtype=complex)
    norms = np.empty(num_states)
    for k in range(num_states):
        state = haar_random_state(layout.n, rng)
        vals = _shadow_norm_samples(layout, observable, state, samples_per_state, rng, weights)
        norms[k] = vals.mean()
    variance = float(np.var(norms, ddof=1))
    centered = norms - norms.mean()
    m4 = float(np.mean(centered**4))
    var_stderr = float(np.sqrt(max(m4 - variance**2, 0.0) / num_states))
    fro_sq = float(np.trace(observable @ observable.conj().T).real)
    bound4 = 64.0 * fro_sq**2
    bound2 = 64.0 * fro_sq
    passed = variance + 1.96 * var_stderr <= bound4
    return VarianceBoundReport(norms, variance, var_stderr, bound4, bound2, passed)
