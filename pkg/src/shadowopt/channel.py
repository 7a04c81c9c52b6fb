"""The randomized-measurement channel of the brickwork ensemble.

The channel acts diagonally in the Pauli basis: a Pauli P with support pattern
s (1 on non-identity sites) is scaled by the weight

    w(s) = Pr[ U P U^dag is an {I, Z}-string ]  over the circuit ensemble.

Because a uniform 2-qubit Clifford maps any fixed non-identity Pauli to each
of the 15 non-identity 2-qubit Paulis with equal probability, the support
pattern evolves through the circuit as a Markov chain: each block fixes the
pattern (0,0) and sends any other pattern to (0,1), (1,0), (1,1) with
probabilities 1/5, 1/5, 3/5. Conditioned on the final pattern f, the letters
on the support are independent and uniform over {X, Y, Z}, so

    w(s) = sum_f Pr[s -> f] * (1/3)**|f|.

The table of all 2**n weights is computed by dynamic programming over layers;
``monte_carlo_weight`` is the independent sampling oracle used to validate it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import clifford
from .brickwork import BrickworkLayout
from .linalg import operator_from_pauli, pauli_coefficients

# Single-block pattern transition matrix, pattern pairs ordered 00,01,10,11.
BLOCK_PATTERN_TRANSITION = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.2, 0.2, 0.6],
        [0.0, 0.2, 0.2, 0.6],
        [0.0, 0.2, 0.2, 0.6],
    ]
)


@dataclass(frozen=True)
class PatternWeightTable:
    """Channel eigenvalues w(s), indexed by the integer pattern (qubit 0 = MSB)."""

    layout: BrickworkLayout
    weights: np.ndarray  # shape (2**n,), float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (2**self.layout.n,):
            raise ValueError("weight table size does not match layout")
        if abs(w[0] - 1.0) > 1e-12:
            raise ValueError("weight of the all-identity pattern must be 1")
        if np.any(w <= 0):
            raise ValueError("channel weights must be strictly positive (uncovered qubit?)")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.layout.n

    def weight(self, pattern) -> float:
        """Weight of a pattern given as an int, bit tuple, or Pauli letters."""
        return float(self.weights[_pattern_index(pattern, self.n)])

    def per_pauli(self) -> np.ndarray:
        """Weights expanded over all 4**n Pauli indices."""
        return self.weights[pauli_pattern_indices(self.n)]


def _pattern_index(pattern, n: int) -> int:
    if isinstance(pattern, (int, np.integer)):
        return int(pattern)
    bits = [0 if (b in (0, "0", "I")) else 1 for b in pattern]
    if len(bits) != n:
        raise ValueError(f"pattern length {len(bits)} does not match n={n}")
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    return idx


def pauli_pattern_indices(n: int) -> np.ndarray:
    """For each base-4 Pauli index, the integer support pattern."""
    digits = (np.arange(4**n)[:, None] // (4 ** np.arange(n - 1, -1, -1))) % 4
    bits = (digits != 0).astype(np.int64)
    return bits @ (2 ** np.arange(n - 1, -1, -1))


def pattern_weights(layout: BrickworkLayout) -> PatternWeightTable:
    """Exact channel weights for every support pattern, by layer-wise DP."""
    n = layout.n
    values = np.array([1.0, 1.0 / 3.0])
    table = values
    for _ in range(n - 1):
        table = np.multiply.outer(table, values).reshape(-1)
    table = table.reshape((2,) * n)
    B = BLOCK_PATTERN_TRANSITION
    for layer in range(layout.d - 1, -1, -1):
        for q, _ in layout.layer_blocks(layer):
            t = np.moveaxis(table, (q, q + 1), (0, 1)).reshape(4, -1)
            t = B @ t
            table = np.moveaxis(t.reshape((2, 2) + (2,) * (n - 2)), (0, 1), (q, q + 1))
    return PatternWeightTable(layout, table.reshape(-1).copy())


def monte_carlo_weight(
    layout: BrickworkLayout, pattern, samples: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Sampling estimate of w(pattern): conjugate a fixed Pauli with that
    support (X on every support site) through sampled circuits and count the
    fraction landing in {I, Z}-strings. Returns (estimate, stderr)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = layout.n
    idx = _pattern_index(pattern, n)
    if idx == 0:
        return 1.0, 0.0
    img_tab, _ = clifford.conjugation_tables()
    bits = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
    hits = 0
    chunk = min(samples, 1 << 17)
    done = 0
    while done < samples:
        b = min(chunk, samples - done)
        letters = np.tile(np.array([1 if x else 0 for x in bits], dtype=np.uint8), (b, 1))
        for layer in range(layout.d):
            for q, r in layout.layer_blocks(layer):
                codes = 4 * letters[:, q] + letters[:, r]
                draws = rng.integers(clifford.CLIFFORD2_SIZE, size=b)
                imgs = img_tab[draws, codes]
                letters[:, q] = imgs // 4
                letters[:, r] = imgs % 4
        diagonal = np.all((letters == 0) | (letters == 3), axis=1)
        hits += int(diagonal.sum())
        done += b
    est = hits / samples
    stderr = np.sqrt(max(est * (1.0 - est), 1.0 / samples) / samples)
    return float(est), float(stderr)


def apply_channel(table: PatternWeightTable, op: np.ndarray) -> np.ndarray:
    """Scale each Pauli coefficient of op by its pattern weight."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (2**table.n, 2**table.n):
        raise ValueError(f"operator shape {op.shape} does not match n={table.n}")
    coeffs = pauli_coefficients(op) * table.per_pauli()
    return operator_from_pauli(coeffs, table.n)


def apply_inverse_channel(table: PatternWeightTable, op: np.ndarray) -> np.ndarray:
    """Divide each Pauli coefficient of op by its pattern weight."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (2**table.n, 2**table.n):
        raise ValueError(f"operator shape {op.shape} does not match n={table.n}")
    coeffs = pauli_coefficients(op) / table.per_pauli()
    return operator_from_pauli(coeffs, table.n)


@dataclass(frozen=True)
class InverseChannelMPO:
    """Tensor-train form of the inverse-channel eigenvalue function 1/w(s).

    Cores have shape (chi_left, 2, chi_right); contracting them over the bond
    indices with pattern bits fixed reproduces 1/w(s) to the SVD cutoff.
    """

    layout: BrickworkLayout
    cores: tuple[np.ndarray, ...]

    @property
    def max_bond(self) -> int:
        return max(core.shape[2] for core in self.cores[:-1]) if len(self.cores) > 1 else 1

    def values(self) -> np.ndarray:
        """Densified table of 1/w over all 2**n patterns."""
        t = self.cores[0]
        for core in self.cores[1:]:
            t = np.tensordot(t, core, axes=([t.ndim - 1], [0]))
        return t.reshape(-1)

    def lifted_cores(self) -> tuple[np.ndarray, ...]:
        """Cores expanded from pattern bits to Pauli letters (physical dim 4)."""
        return tuple(core[:, [0, 1, 1, 1], :] for core in self.cores)

    def apply_to_dense(self, op: np.ndarray) -> np.ndarray:
        n = self.layout.n
        coeffs = pauli_coefficients(op) * self.values()[pauli_pattern_indices(n)]
        return operator_from_pauli(coeffs, n)


def channel_mpo(table: PatternWeightTable, cutoff: float = 1e-12) -> InverseChannelMPO:
    """Tensor-train factorization of 1/w(s) by successive SVD."""
    n = table.n
    remaining = (1.0 / table.weights).reshape(1, -1)
    cores = []
    for _ in range(n - 1):
        chi = remaining.shape[0]
        mat = remaining.reshape(chi * 2, -1)
        u, s, vh = np.linalg.svd(mat, full_matrices=False)
        keep = max(1, int(np.sum(s > cutoff * s[0])))
        cores.append(u[:, :keep].reshape(chi, 2, keep))
        remaining = (s[:keep, None] * vh[:keep]).reshape(keep, -1)
    cores.append(remaining.reshape(-1, 2, 1))
    return InverseChannelMPO(table.layout, tuple(cores))


def exhaustive_channel_matrix(layout: BrickworkLayout) -> np.ndarray:
    """Superoperator of the measurement channel in the Pauli basis, assembled
    by explicit averaging over every Clifford assignment and every outcome.

    Only feasible for a single-block layout (n=2, d=1); this is the
    enumeration oracle for the pattern-chain construction.
    """
    if layout.n != 2 or layout.d != 1:
        raise ValueError("exhaustive enumeration is implemented for n=2, d=1 only")
    dense = clifford.dense_table()
    paulis = np.stack(
        [operator_from_pauli(np.eye(16, dtype=complex)[k], 2) for k in range(16)]
    )
    S = np.zeros((16, 16), dtype=complex)
    # amp[m, u, :] = row u of U_m; sigma_{m,u} = U^dag |u><u| U
    for u in range(4):
        rows = dense[:, u, :]  # <u| U_m
        sigmas = np.einsum("mi,mj->mij", rows.conj(), rows)
        # <u| U P U^dag |u> = rows @ P @ rows^dag (diagonal per m)
        vals = np.einsum("mi,kij,mj->mk", rows, paulis, rows.conj())
        contrib = np.einsum("mk,mij->kij", vals, sigmas) / clifford.CLIFFORD2_SIZE
        for k in range(16):
            S[:, k] += pauli_coefficients(contrib[k])
    return S
