"""Dense complex linear algebra and statevector simulation for small qubit counts.

Conventions used throughout the package:

- Qubit 0 is the *most significant* bit of a computational-basis index, so the
  basis state |q0 q1 ... q_{n-1}> has index sum(q_i * 2**(n-1-i)).
- States are 1-D complex numpy arrays of length 2**n, operators are square
  complex arrays of size 2**n x 2**n.
- Unitarity / Hermiticity are checked to 1e-10 on the maximum entry deviation;
  positive semidefiniteness (where needed) to 1e-8.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOL = 1e-10
PSD_ATOL = 1e-8

PAULI_LETTERS = "IXYZ"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# Single-qubit products: _PAULI_MUL[a][b] = (phase, letter) with ab = phase * letter.
_PAULI_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}

_VALID_PHASES = (1, -1, 1j, -1j)


@dataclass(frozen=True)
class PauliString:
    """A signed/phased n-qubit Pauli operator: phase * (letter_0 x ... x letter_{n-1})."""

    letters: tuple[str, ...]
    phase: complex = 1

    def __post_init__(self):
        if any(c not in PAULI_LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli letters {self.letters}")
        if not any(np.isclose(self.phase, p) for p in _VALID_PHASES):
            raise ValueError(f"invalid Pauli phase {self.phase}; must be one of +-1, +-i")

    @classmethod
    def from_label(cls, label: str, phase: complex = 1) -> "PauliString":
        return cls(tuple(label), phase)

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def label(self) -> str:
        return "".join(self.letters)

    @property
    def support(self) -> tuple[int, ...]:
        """Pattern bits: 1 where the letter is non-identity."""
        return tuple(0 if c == "I" else 1 for c in self.letters)

    @property
    def weight(self) -> int:
        return sum(self.support)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("Pauli length mismatch")
        phase = self.phase * other.phase
        letters = []
        for a, b in zip(self.letters, other.letters):
            p, c = _PAULI_MUL[(a, b)]
            phase *= p
            letters.append(c)
        return PauliString(tuple(letters), _canonical_phase(phase))

    def __neg__(self) -> "PauliString":
        return PauliString(self.letters, _canonical_phase(-self.phase))


def _canonical_phase(phase: complex) -> complex:
    for p in _VALID_PHASES:
        if np.isclose(phase, p):
            return p
    raise ValueError(f"phase {phase} is not a fourth root of unity")


def identity_pauli(n: int) -> PauliString:
    return PauliString(("I",) * n)


def pauli_to_dense(p: PauliString) -> np.ndarray:
    """Dense matrix of a PauliString (tensor product, qubit 0 as the left factor)."""
    out = np.array([[p.phase]], dtype=complex)
    for c in p.letters:
        out = np.kron(out, PAULI_MATRICES[c])
    return out


def basis_state(n: int, index: int = 0) -> np.ndarray:
    state = np.zeros(2**n, dtype=complex)
    state[index] = 1.0
    return state


def bitstring_to_index(bits: str) -> int:
    return int(bits, 2)


def index_to_bitstring(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def num_qubits(state: np.ndarray) -> int:
    n = int(round(np.log2(state.shape[0])))
    if 2**n != state.shape[0]:
        raise ValueError(f"length {state.shape[0]} is not a power of two")
    return n


def check_state(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    num_qubits(state)
    if abs(np.linalg.norm(state) - 1.0) > ATOL:
        raise ValueError("state is not normalized")
    return state


def is_unitary(mat: np.ndarray, atol: float = ATOL) -> bool:
    return np.max(np.abs(mat @ mat.conj().T - np.eye(mat.shape[0]))) <= atol


def is_hermitian(mat: np.ndarray, atol: float = ATOL) -> bool:
    return np.max(np.abs(mat - mat.conj().T)) <= atol


def is_density_operator(mat: np.ndarray, psd_atol: float = PSD_ATOL) -> bool:
    """Hermitian, unit trace, PSD within tolerance. Shadows deliberately fail
    this check: they are unit-trace Hermitian estimators, not states."""
    mat = np.asarray(mat, dtype=complex)
    if not is_hermitian(mat) or abs(np.trace(mat) - 1.0) > 1e-9:
        return False
    return bool(np.linalg.eigvalsh(mat).min() >= -psd_atol)


def apply_gate(state: np.ndarray, gate: np.ndarray, targets: tuple[int, ...]) -> np.ndarray:
    """Apply a k-qubit gate to the given target qubits of an n-qubit state.

    ``targets`` orders the gate's own qubits: ``targets[0]`` is the gate's
    first (most significant) qubit. Returns a new state; the input is unchanged.
    """
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state)
    k = len(targets)
    if len(set(targets)) != k:
        raise ValueError(f"repeated target index in {targets}")
    if any(t < 0 or t >= n for t in targets):
        raise ValueError(f"target out of range for {n} qubits: {targets}")
    if gate.shape != (2**k, 2**k):
        raise ValueError(f"gate shape {gate.shape} does not match {k} targets")
    psi = state.reshape((2,) * n)
    # Move target axes to the front, in gate order.
    rest = [ax for ax in range(n) if ax not in targets]
    perm = list(targets) + rest
    psi = np.transpose(psi, perm).reshape(2**k, -1)
    psi = gate @ psi
    psi = psi.reshape([2] * n)
    inv = np.argsort(perm)
    return np.transpose(psi, inv).reshape(-1)


def apply_unitary_to_operator(op: np.ndarray, gate: np.ndarray, targets: tuple[int, ...]) -> np.ndarray:
    """Return (gate embedded on targets) @ op @ (gate embedded)^dagger."""
    n = num_qubits(op[:, 0])
    dim = 2**n
    out = np.empty_like(op, dtype=complex)
    for col in range(dim):
        out[:, col] = apply_gate(op[:, col], gate, targets)
    for row in range(dim):
        out[row, :] = apply_gate(out[row, :].conj(), gate, targets).conj()
    return out


def measure_standard_basis(state: np.ndarray, rng: np.random.Generator) -> tuple[str, np.ndarray]:
    """Sample a computational-basis outcome by the Born rule.

    Returns the outcome bitstring and the post-measurement basis state.
    """
    state = check_state(state)
    n = num_qubits(state)
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    index = int(rng.choice(len(state), p=probs))
    return index_to_bitstring(index, n), basis_state(n, index)


def expectation(state_or_rho: np.ndarray, observable: np.ndarray) -> float:
    """tr(rho O) for a state vector or density operator, checked real."""
    observable = np.asarray(observable, dtype=complex)
    if not is_hermitian(observable):
        raise ValueError("observable is not Hermitian")
    arr = np.asarray(state_or_rho, dtype=complex)
    if arr.ndim == 1:
        value = np.vdot(arr, observable @ arr)
    else:
        value = np.trace(arr @ observable)
    if abs(value.imag) > 1e-8 * max(1.0, abs(value.real)):
        raise ValueError(f"expectation has a non-negligible imaginary part: {value}")
    return float(value.real)


def haar_random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform (Haar / spherical-measure) random pure state on n qubits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vec = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return vec / np.linalg.norm(vec)


def outer(state: np.ndarray) -> np.ndarray:
    """Density operator |psi><psi| of a pure state."""
    state = np.asarray(state, dtype=complex)
    return np.outer(state, state.conj())


# ---------------------------------------------------------------------------
# Pauli-basis transform: A = sum_P c_P P with c_P = tr(A P) / 2**n.
# Coefficient index is base-4 over the letters, qubit 0 as the most
# significant digit, digit order I, X, Y, Z.
# ---------------------------------------------------------------------------

_PAULI_STACK = np.stack([PAULI_MATRICES[c] for c in PAULI_LETTERS])
# _TO_COEFF[p, 2r+c] = sigma_p[c, r] / 2 ; _FROM_COEFF[2r+c, p] = sigma_p[r, c]
_TO_COEFF = _PAULI_STACK.transpose(0, 2, 1).reshape(4, 4) / 2.0
_FROM_COEFF = _PAULI_STACK.reshape(4, 4).T.copy()


def pauli_coefficients(op: np.ndarray) -> np.ndarray:
    """Coefficients c of op in the Pauli basis, flat array of length 4**n."""
    op = np.asarray(op, dtype=complex)
    n = num_qubits(op[:, 0])
    t = op.reshape((2,) * (2 * n))
    order = [ax for q in range(n) for ax in (q, n + q)]
    t = np.transpose(t, order).reshape((4,) * n)
    for _ in range(n):
        t = np.tensordot(t, _TO_COEFF, axes=([0], [1]))
    return t.reshape(-1)


def operator_from_pauli(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Inverse of pauli_coefficients."""
    t = np.asarray(coeffs, dtype=complex).reshape((4,) * n)
    for _ in range(n):
        t = np.tensordot(t, _FROM_COEFF, axes=([0], [1]))
    # axes are now (rc)_0 ... (rc)_{n-1}; split and regroup rows/columns
    t = t.reshape((2,) * (2 * n))
    rows = [2 * q for q in range(n)]
    cols = [2 * q + 1 for q in range(n)]
    return np.transpose(t, rows + cols).reshape(2**n, 2**n)


def pauli_index(letters: tuple[str, ...] | str) -> int:
    idx = 0
    for c in letters:
        idx = idx * 4 + PAULI_LETTERS.index(c)
    return idx
