"""Matrix-product backends: states as site tensors and shadows as
Pauli-coefficient tensor trains.

All decompositions are exact up to a relative singular-value cutoff of 1e-12;
no fixed-rank truncation is ever applied, so dense and tensor-network paths
agree to numerical precision on the supported sizes.
"""
from __future__ import annotations

import numpy as np

from .linalg import PAULI_LETTERS, PAULI_MATRICES, operator_from_pauli

DEFAULT_CUTOFF = 1e-12

_PAULI_STACK = np.stack([PAULI_MATRICES[c] for c in PAULI_LETTERS])
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def _split(theta: np.ndarray, cutoff: float) -> tuple[np.ndarray, np.ndarray]:
    """SVD split of a (chi_l*p, q*chi_r) matrix, dropping near-zero weight."""
    u, s, vh = np.linalg.svd(theta, full_matrices=False)
    keep = max(1, int(np.sum(s > cutoff * s[0])))
    return u[:, :keep], s[:keep, None] * vh[:keep]


class MPS:
    """Open-boundary matrix product state; tensors have shape (chi_l, 2, chi_r)."""

    def __init__(self, tensors: list[np.ndarray]):
        self.tensors = [np.asarray(t, dtype=complex) for t in tensors]

    @property
    def n(self) -> int:
        return len(self.tensors)

    @classmethod
    def from_bitstring(cls, bits: str) -> "MPS":
        tensors = []
        for c in bits:
            t = np.zeros((1, 2, 1), dtype=complex)
            t[0, int(c), 0] = 1.0
            tensors.append(t)
        return cls(tensors)

    @classmethod
    def from_dense(cls, vec: np.ndarray, cutoff: float = DEFAULT_CUTOFF) -> "MPS":
        vec = np.asarray(vec, dtype=complex)
        n = int(round(np.log2(vec.size)))
        tensors = []
        remaining = vec.reshape(1, -1)
        for _ in range(n - 1):
            chi = remaining.shape[0]
            u, rest = _split(remaining.reshape(chi * 2, -1), cutoff)
            tensors.append(u.reshape(chi, 2, -1))
            remaining = rest
        tensors.append(remaining.reshape(-1, 2, 1))
        return cls(tensors)

    def copy(self) -> "MPS":
        return MPS([t.copy() for t in self.tensors])

    def to_dense(self) -> np.ndarray:
        t = self.tensors[0]
        for nxt in self.tensors[1:]:
            t = np.tensordot(t, nxt, axes=([t.ndim - 1], [0]))
        return t.reshape(-1)

    def max_bond(self) -> int:
        return max((t.shape[2] for t in self.tensors[:-1]), default=1)

    def apply_1q(self, mat: np.ndarray, q: int) -> None:
        self.tensors[q] = np.einsum("ij,ajb->aib", mat, self.tensors[q])

    def apply_2q(self, mat4: np.ndarray, q: int, cutoff: float = DEFAULT_CUTOFF) -> None:
        """Apply a 4x4 gate on adjacent sites (q, q+1)."""
        a, b = self.tensors[q], self.tensors[q + 1]
        theta = np.tensordot(a, b, axes=([2], [0]))  # (l, s1, s2, r)
        gate = mat4.reshape(2, 2, 2, 2)
        theta = np.einsum("ijkl,aklb->aijb", gate, theta)
        l, _, _, r = theta.shape
        u, rest = _split(theta.reshape(l * 2, 2 * r), cutoff)
        self.tensors[q] = u.reshape(l, 2, -1)
        self.tensors[q + 1] = rest.reshape(-1, 2, r)

    def apply_gate(self, mat: np.ndarray, targets: tuple[int, ...], cutoff: float = DEFAULT_CUTOFF) -> None:
        """Apply a 1- or 2-qubit gate; distant pairs are routed with swaps."""
        if len(targets) == 1:
            self.apply_1q(mat, targets[0])
            return
        if len(targets) != 2:
            raise ValueError("only 1- and 2-qubit gates are supported")
        a, b = targets
        if a > b:
            raise ValueError("gate targets must be ordered (a < b)")
        for k in range(b - 1, a, -1):
            self.apply_2q(_SWAP, k, cutoff)
        self.apply_2q(mat, a, cutoff)
        for k in range(a + 1, b):
            self.apply_2q(_SWAP, k, cutoff)

    def inner(self, other: "MPS") -> complex:
        """<self | other>."""
        L = np.ones((1, 1), dtype=complex)
        for s, o in zip(self.tensors, other.tensors):
            L = np.einsum("ac,asb,csd->bd", L, s.conj(), o)
        return complex(L[0, 0])

    def norm(self) -> float:
        return float(np.sqrt(abs(self.inner(self))))


class PauliMPS:
    """Operator stored as a tensor train of Pauli coefficients.

    Site tensors have shape (chi_l, 4, chi_r), physical index over I, X, Y, Z;
    contracting with letters fixed gives c_P with A = sum_P c_P P.
    """

    def __init__(self, tensors: list[np.ndarray]):
        self.tensors = [np.asarray(t, dtype=complex) for t in tensors]

    @property
    def n(self) -> int:
        return len(self.tensors)

    @classmethod
    def from_state_mps(cls, psi: MPS) -> "PauliMPS":
        """Coefficients of |psi><psi| (psi need not be normalized)."""
        tensors = []
        for t in psi.tensors:
            c = np.einsum("asb,cte,pts->acpbe", t, t.conj(), _PAULI_STACK / 2.0)
            la, lc, _, rb, re = c.shape
            tensors.append(c.reshape(la * lc, 4, rb * re))
        return cls(tensors)

    def copy(self) -> "PauliMPS":
        return PauliMPS([t.copy() for t in self.tensors])

    def max_bond(self) -> int:
        return max((t.shape[2] for t in self.tensors[:-1]), default=1)

    def scale(self, factor: complex) -> "PauliMPS":
        out = self.copy()
        out.tensors[0] = out.tensors[0] * factor
        return out

    def multiply_pattern_function(self, lifted_cores: tuple[np.ndarray, ...]) -> "PauliMPS":
        """Entrywise product with a function given as lifted cores (chi, 4, chi)."""
        tensors = []
        for c, f in zip(self.tensors, lifted_cores):
            m = np.einsum("apb,xpy->axpby", c, f)
            la, lx, _, rb, ry = m.shape
            tensors.append(m.reshape(la * lx, 4, rb * ry))
        return PauliMPS(tensors)

    def add(self, other: "PauliMPS") -> "PauliMPS":
        tensors = []
        for i, (a, b) in enumerate(zip(self.tensors, other.tensors)):
            la, _, ra = a.shape
            lb, _, rb = b.shape
            if i == 0:
                t = np.concatenate([a, b], axis=2)
            elif i == self.n - 1:
                t = np.concatenate([a, b], axis=0)
            else:
                t = np.zeros((la + lb, 4, ra + rb), dtype=complex)
                t[:la, :, :ra] = a
                t[la:, :, ra:] = b
            tensors.append(t)
        return PauliMPS(tensors)

    def compress(self, cutoff: float = DEFAULT_CUTOFF) -> "PauliMPS":
        """Two-sweep canonicalization with singular-value truncation."""
        tensors = [t.copy() for t in self.tensors]
        for i in range(self.n - 1):  # left-to-right QR
            l, p, r = tensors[i].shape
            q, rest = np.linalg.qr(tensors[i].reshape(l * p, r))
            tensors[i] = q.reshape(l, p, -1)
            tensors[i + 1] = np.tensordot(rest, tensors[i + 1], axes=([1], [0]))
        for i in range(self.n - 1, 0, -1):  # right-to-left SVD
            l, p, r = tensors[i].shape
            u, s, vh = np.linalg.svd(tensors[i].reshape(l, p * r), full_matrices=False)
            keep = max(1, int(np.sum(s > cutoff * s[0]))) if s[0] > 0 else 1
            tensors[i] = vh[:keep].reshape(keep, p, r)
            tensors[i - 1] = np.tensordot(tensors[i - 1], u[:, :keep] * s[:keep], axes=([2], [0]))
        return PauliMPS(tensors)

    def coefficients(self) -> np.ndarray:
        t = self.tensors[0]
        for nxt in self.tensors[1:]:
            t = np.tensordot(t, nxt, axes=([t.ndim - 1], [0]))
        return t.reshape(-1)

    def to_dense(self) -> np.ndarray:
        return operator_from_pauli(self.coefficients(), self.n)

    def trace(self) -> float:
        t = self.tensors[0][:, 0, :]
        for nxt in self.tensors[1:]:
            t = t @ nxt[:, 0, :]
        return float((t[0, 0] * 2**self.n).real)

    def expectation_with_state(self, phi: MPS) -> float:
        """<phi| A |phi> for this operator A, contracted site by site."""
        if phi.n != self.n:
            raise ValueError("site count mismatch")
        L = np.ones((1, 1, 1), dtype=complex)
        for f, c in zip(phi.tensors, self.tensors):
            d = np.tensordot(c, _PAULI_STACK, axes=([1], [0]))  # (alpha, beta, t, s)
            L = np.einsum("acx,asb,cte,xyts->bey", L, f, f.conj(), d, optimize=True)
        val = complex(L[0, 0, 0])
        return float(val.real)
