"""Exact 2-qubit Clifford group machinery.

A 2-qubit Clifford (modulo global phase) is stored as a tableau: the four
signed Pauli images of the generators X1, Z1, X2, Z2 under conjugation
U P U^dag. There are exactly 11520 such tableaus: 720 binary symplectic
4x4 matrices times 16 sign assignments.

Canonical enumeration order (stable across runs and platforms):

- A Pauli-up-to-phase maps to the GF(2) vector v = (x1, x2, z1, z2), where
  x/z flag an X/Z component (Y has both). The symplectic part of a tableau
  is the 4x4 GF(2) matrix M whose columns are the image vectors of
  X1, X2, Z1, Z2 (in that column order).
- Symplectic matrices are sorted ascending by the 16-bit integer formed from
  M's entries row-major, M[0,0] as the most significant bit.
- index = 16 * (rank of M in that order) + (8*sX1 + 4*sZ1 + 2*sX2 + 1*sZ2),
  where the sign bits are 0 for + and 1 for - in tableau generator order.

The dense matrix of a tableau is fixed up to global phase; the phase is
pinned by making the first entry of column 0 with modulus > 1e-9 real
positive.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import PauliString, pauli_to_dense

CLIFFORD2_SIZE = 11520

_GEN_LABELS = ("XI", "ZI", "IX", "IZ")  # X1, Z1, X2, Z2 with qubit 1 first
# Column layout of the symplectic matrix: images of X1, X2, Z1, Z2.
_GEN_COLUMN = {"X1": 0, "X2": 1, "Z1": 2, "Z2": 3}


def _symplectic_form() -> np.ndarray:
    J = np.zeros((4, 4), dtype=np.uint8)
    J[:2, 2:] = np.eye(2, dtype=np.uint8)
    J[2:, :2] = np.eye(2, dtype=np.uint8)
    return J


@lru_cache(maxsize=None)
def _symplectic_matrices() -> np.ndarray:
    """All 720 elements of Sp(4, 2), sorted by their row-major bit encoding."""
    cache = _load_cached("sp4_matrices.npy")
    if cache is not None:
        return cache
    codes = np.arange(1 << 16, dtype=np.uint32)
    bits = ((codes[:, None] >> np.arange(15, -1, -1)) & 1).astype(np.uint8)
    mats = bits.reshape(-1, 4, 4)
    J = _symplectic_form()
    prod = np.einsum("mji,jk,mkl->mil", mats, J, mats) % 2
    keep = np.all(prod == J, axis=(1, 2))
    result = mats[keep]  # codes ascending, hence canonical order
    assert result.shape[0] == 720
    _store_cached("sp4_matrices.npy", result)
    return result


@lru_cache(maxsize=None)
def _symplectic_rank_lookup() -> dict[int, int]:
    mats = _symplectic_matrices()
    weights = 1 << np.arange(15, -1, -1).reshape(4, 4)
    codes = np.einsum("mij,ij->m", mats.astype(np.int64), weights)
    return {int(c): i for i, c in enumerate(codes)}


def _vector_to_letters(vec: np.ndarray) -> tuple[str, str]:
    letters = []
    for q in range(2):
        x, z = int(vec[q]), int(vec[2 + q])
        letters.append("IXZY"[x + 2 * z])
    return tuple(letters)


def _letters_to_vector(letters: tuple[str, str]) -> np.ndarray:
    vec = np.zeros(4, dtype=np.uint8)
    for q, c in enumerate(letters):
        vec[q] = 1 if c in "XY" else 0
        vec[2 + q] = 1 if c in "ZY" else 0
    return vec


@dataclass(frozen=True)
class CliffordTableau2:
    """Images of X1, Z1, X2, Z2 under U P U^dag, each a signed 2-qubit Pauli."""

    images: tuple[PauliString, PauliString, PauliString, PauliString]

    def __post_init__(self):
        for img in self.images:
            if img.n != 2:
                raise ValueError("tableau images must be 2-qubit Paulis")
            if img.phase not in (1, -1):
                raise ValueError("tableau image phases must be +-1")

    @property
    def symplectic(self) -> np.ndarray:
        M = np.zeros((4, 4), dtype=np.uint8)
        for idx, gen in enumerate(("X1", "Z1", "X2", "Z2")):
            M[:, _GEN_COLUMN[gen]] = _letters_to_vector(self.images[idx].letters)
        return M

    @property
    def index(self) -> int:
        weights = 1 << np.arange(15, -1, -1).reshape(4, 4)
        code = int(np.einsum("ij,ij->", self.symplectic.astype(np.int64), weights))
        rank = _symplectic_rank_lookup()[code]
        sign_bits = 0
        for img in self.images:
            sign_bits = (sign_bits << 1) | (1 if img.phase == -1 else 0)
        return rank * 16 + sign_bits

    @classmethod
    def from_index(cls, index: int) -> "CliffordTableau2":
        if not 0 <= index < CLIFFORD2_SIZE:
            raise ValueError(f"Clifford index {index} out of range [0, {CLIFFORD2_SIZE})")
        M = _symplectic_matrices()[index // 16]
        sign_bits = index % 16
        images = []
        for pos, gen in enumerate(("X1", "Z1", "X2", "Z2")):
            vec = M[:, _GEN_COLUMN[gen]]
            phase = -1 if (sign_bits >> (3 - pos)) & 1 else 1
            images.append(PauliString(_vector_to_letters(vec), phase))
        return cls(tuple(images))

    @classmethod
    def identity(cls) -> "CliffordTableau2":
        return cls(tuple(PauliString.from_label(lbl) for lbl in ("XI", "ZI", "IX", "IZ")))

    def conjugate(self, p: PauliString) -> PauliString:
        return conjugate_pauli(self, p)

    def inverse(self) -> "CliffordTableau2":
        Minv = _gf2_inverse(self.symplectic)
        images = []
        for gen in ("X1", "Z1", "X2", "Z2"):
            target = np.zeros(4, dtype=np.uint8)
            target[_GEN_COLUMN[gen]] = 1
            vec = (Minv @ target) % 2
            cand = PauliString(_vector_to_letters(vec))
            fwd = conjugate_pauli(self, cand)
            images.append(cand if fwd.phase == 1 else -cand)
        return CliffordTableau2(tuple(images))

    def compose(self, first: "CliffordTableau2") -> "CliffordTableau2":
        """Tableau of (self after first), i.e. conjugation by U_self U_first."""
        return CliffordTableau2(tuple(conjugate_pauli(self, img) for img in first.images))


def _gf2_inverse(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    aug = np.concatenate([M.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    row = 0
    for col in range(n):
        pivots = np.nonzero(aug[row:, col])[0]
        if len(pivots) == 0:
            raise ValueError("matrix is singular over GF(2)")
        pivot = row + pivots[0]
        if pivot != row:
            aug[[row, pivot]] = aug[[pivot, row]]
        for r in range(n):
            if r != row and aug[r, col]:
                aug[r] ^= aug[row]
        row += 1
    return aug[:, n:].copy()


def conjugate_pauli(t: CliffordTableau2, p: PauliString) -> PauliString:
    """Image U P U^dag as a signed Pauli, for a 2-qubit Pauli P."""
    if p.n != 2:
        raise ValueError("conjugate_pauli expects a 2-qubit Pauli")
    phase = p.phase
    acc = PauliString.from_label("II")
    img_x = (t.images[0], t.images[2])  # X1, X2
    img_z = (t.images[1], t.images[3])  # Z1, Z2
    for q, letter in enumerate(p.letters):
        if letter == "I":
            continue
        if letter == "Y":
            phase *= 1j
        if letter in "XY":
            acc = acc * img_x[q]
        if letter in "ZY":
            acc = acc * img_z[q]
    result = PauliString(acc.letters, acc.phase * phase)
    assert result.phase in (1, -1) or p.phase in (1j, -1j)
    return result


def enumerate_clifford2() -> list[CliffordTableau2]:
    """All 11520 two-qubit Clifford tableaus in canonical index order."""
    return [CliffordTableau2.from_index(i) for i in range(CLIFFORD2_SIZE)]


def identity_index() -> int:
    """Canonical index of the identity tableau."""
    return CliffordTableau2.identity().index


def sample_uniform_clifford2(rng: np.random.Generator) -> CliffordTableau2:
    return CliffordTableau2.from_index(int(rng.integers(CLIFFORD2_SIZE)))


def tableau_to_dense(t: CliffordTableau2) -> np.ndarray:
    """4x4 unitary realizing the tableau, with the documented global phase."""
    return _dense_from_images(t.images)


def _dense_from_images(images) -> np.ndarray:
    s1 = pauli_to_dense(images[1])  # image of Z1: stabilizer of U|00>
    s2 = pauli_to_dense(images[3])  # image of Z2
    eye = np.eye(4, dtype=complex)
    proj = (eye + s1) @ (eye + s2) / 4.0
    col = next(c for c in range(4) if np.linalg.norm(proj[:, c]) > 1e-9)
    phi0 = proj[:, col] / np.linalg.norm(proj[:, col])
    x1 = pauli_to_dense(images[0])
    x2 = pauli_to_dense(images[2])
    U = np.empty((4, 4), dtype=complex)
    for u1 in (0, 1):
        for u2 in (0, 1):
            vec = phi0
            if u2:
                vec = x2 @ vec
            if u1:
                vec = x1 @ vec
            U[:, 2 * u1 + u2] = vec
    row = next(r for r in range(4) if abs(U[r, 0]) > 1e-9)
    U = U * (U[row, 0].conjugate() / abs(U[row, 0]))
    return U


# ---------------------------------------------------------------------------
# Cached bulk tables used by the hot paths (sampling, Monte Carlo, batching).
# ---------------------------------------------------------------------------

def _cache_dir() -> str | None:
    return os.environ.get("SHADOWOPT_CACHE_DIR")


def _load_cached(name: str):
    d = _cache_dir()
    if d:
        path = os.path.join(d, name)
        if os.path.exists(path):
            try:
                return np.load(path)
            except Exception:
                return None
    return None


def _store_cached(name: str, arr: np.ndarray) -> None:
    d = _cache_dir()
    if d:
        os.makedirs(d, exist_ok=True)
        np.save(os.path.join(d, name), arr)


def pauli2_code(letters: tuple[str, str]) -> int:
    """Base-4 code of a 2-qubit Pauli letter pair: 4*q1 + q2, I,X,Y,Z -> 0..3."""
    return 4 * "IXYZ".index(letters[0]) + "IXYZ".index(letters[1])


def code_to_letters(code: int) -> tuple[str, str]:
    return ("IXYZ"[code // 4], "IXYZ"[code % 4])


@lru_cache(maxsize=None)
def conjugation_tables() -> tuple[np.ndarray, np.ndarray]:
    """(image_code, sign) tables of shape (11520, 16) over all tableau/Pauli pairs.

    image_code[t, p] is the base-4 code of the letters of U_t P_p U_t^dag and
    sign[t, p] in {+1, -1} its sign.
    """
    img = _load_cached("conj_images.npy")
    sgn = _load_cached("conj_signs.npy")
    if img is not None and sgn is not None:
        return img, sgn
    img = np.zeros((CLIFFORD2_SIZE, 16), dtype=np.uint8)
    sgn = np.ones((CLIFFORD2_SIZE, 16), dtype=np.int8)
    paulis = [PauliString(code_to_letters(c)) for c in range(16)]
    for t_idx in range(CLIFFORD2_SIZE):
        t = CliffordTableau2.from_index(t_idx)
        for c in range(1, 16):
            q = conjugate_pauli(t, paulis[c])
            img[t_idx, c] = pauli2_code(q.letters)
            sgn[t_idx, c] = int(q.phase.real)
    _store_cached("conj_images.npy", img)
    _store_cached("conj_signs.npy", sgn)
    return img, sgn


@lru_cache(maxsize=None)
def dense_table() -> np.ndarray:
    """Dense 4x4 unitaries of all 11520 tableaus, indexed canonically."""
    cached = _load_cached("dense_table.npy")
    if cached is not None:
        return cached
    mats = np.stack([tableau_to_dense(CliffordTableau2.from_index(i)) for i in range(CLIFFORD2_SIZE)])
    _store_cached("dense_table.npy", mats)
    return mats


@lru_cache(maxsize=None)
def inverse_index_table() -> np.ndarray:
    """inverse_index_table()[i] = canonical index of the inverse of tableau i."""
    cached = _load_cached("inverse_index.npy")
    if cached is not None:
        return cached
    inv = np.zeros(CLIFFORD2_SIZE, dtype=np.uint16)
    for i in range(CLIFFORD2_SIZE):
        inv[i] = CliffordTableau2.from_index(i).inverse().index
    _store_cached("inverse_index.npy", inv)
    return inv
