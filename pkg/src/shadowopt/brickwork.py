"""Brickwork circuits of random 2-qubit Cliffords: the randomizing ensemble.

Layout convention: layer k (0-based) places blocks on nearest-neighbor pairs
(q, q+1) with q starting at 0 for even k and at 1 for odd k. For odd n the
edge qubit idles in layers where it has no partner. Blocks are ordered
layer-major, left-to-right; a circuit is the list of Clifford indices in that
order, with layer 0 applied to the state first.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import clifford
from .linalg import PauliString, index_to_bitstring


class InvalidLayoutError(ValueError):
    pass


@dataclass(frozen=True)
class BrickworkLayout:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidLayoutError("need at least 2 qubits")
        if self.d < 1:
            raise InvalidLayoutError("need at least 1 layer")
        covered = set()
        for layer in range(self.d):
            for q, _ in self.layer_blocks(layer):
                covered.update((q, q + 1))
        if covered != set(range(self.n)):
            missing = sorted(set(range(self.n)) - covered)
            raise InvalidLayoutError(f"qubits {missing} are never covered by a block")

    def layer_blocks(self, layer: int) -> list[tuple[int, int]]:
        start = layer % 2
        return [(q, q + 1) for q in range(start, self.n - 1, 2)]

    @property
    def positions(self) -> list[tuple[int, int, int]]:
        """(layer, q, q+1) for every block, layer-major, left-to-right."""
        return [(layer, q, r) for layer in range(self.d) for q, r in self.layer_blocks(layer)]

    @property
    def num_blocks(self) -> int:
        return len(self.positions)

    def descriptor(self) -> str:
        return f"brickwork(n={self.n},d={self.d},even_offset=0)"


@dataclass(frozen=True)
class BrickworkCircuit:
    layout: BrickworkLayout
    blocks: np.ndarray  # canonical Clifford indices, one per layout position

    def __post_init__(self):
        blocks = np.asarray(self.blocks, dtype=np.uint16)
        if blocks.shape != (self.layout.num_blocks,):
            raise ValueError(f"expected {self.layout.num_blocks} block indices, got {blocks.shape}")
        if blocks.size and int(blocks.max()) >= clifford.CLIFFORD2_SIZE:
            raise ValueError("Clifford index out of range")
        object.__setattr__(self, "blocks", blocks)


def sample_circuit(layout: BrickworkLayout, rng: np.random.Generator) -> BrickworkCircuit:
    return BrickworkCircuit(layout, rng.integers(clifford.CLIFFORD2_SIZE, size=layout.num_blocks))


def identity_circuit(layout: BrickworkLayout) -> BrickworkCircuit:
    return BrickworkCircuit(layout, np.full(layout.num_blocks, clifford.identity_index()))


def apply_circuit(state: np.ndarray, circuit: BrickworkCircuit, adjoint: bool = False) -> np.ndarray:
    """Apply the brickwork circuit (or its adjoint) to a statevector."""
    return apply_circuits_batch(state[None, :], circuit.blocks[None, :], circuit.layout, adjoint)[0]


def apply_circuits_batch(
    states: np.ndarray,
    block_indices: np.ndarray,
    layout: BrickworkLayout,
    adjoint: bool = False,
) -> np.ndarray:
    """Apply one sampled circuit per row of ``states`` (shape (B, 2**n)).

    ``block_indices`` has shape (B, num_blocks) in layer-major order.
    """
    dense = clifford.dense_table()
    n = layout.n
    positions = list(enumerate(layout.positions))
    if adjoint:
        positions = positions[::-1]
    out = np.asarray(states, dtype=complex)
    B = out.shape[0]
    for pos, (layer, q, _) in positions:
        mats = dense[block_indices[:, pos]]
        if adjoint:
            mats = mats.conj().transpose(0, 2, 1)
        left = 2**q
        right = 2 ** (n - q - 2)
        # (B,1,4,4) @ (B,left,4,right) contracts the block's 4-dim axis
        out = np.matmul(mats[:, None], out.reshape(B, left, 4, right))
    return out.reshape(B, 2**n)


def conjugate_through_circuit(
    circuit: BrickworkCircuit, p: PauliString, adjoint: bool = False
) -> PauliString:
    """Signed Pauli image U P U^dag (or U^dag P U with adjoint=True)."""
    layout = circuit.layout
    if p.n != layout.n:
        raise ValueError("Pauli size does not match layout")
    img_tab, sgn_tab = clifford.conjugation_tables()
    indices = circuit.blocks
    if adjoint:
        indices = clifford.inverse_index_table()[indices]
    letters = list(p.letters)
    phase = p.phase
    order = range(layout.num_blocks) if not adjoint else range(layout.num_blocks - 1, -1, -1)
    positions = layout.positions
    for pos in order:
        _, q, r = positions[pos]
        code = 4 * "IXYZ".index(letters[q]) + "IXYZ".index(letters[r])
        if code == 0:
            continue
        idx = int(indices[pos])
        new_code = int(img_tab[idx, code])
        phase *= int(sgn_tab[idx, code])
        letters[q] = "IXYZ"[new_code // 4]
        letters[r] = "IXYZ"[new_code % 4]
    return PauliString(tuple(letters), phase)


def basis_projector_decomposition(u: str) -> list[tuple[PauliString, int]]:
    """Signed-Pauli expansion of |u><u| = 2**-n * sum sign * Z-monomial
    (the circuit-free case)."""
    n = len(u)
    if n < 1 or any(c not in "01" for c in u):
        raise ValueError(f"malformed outcome bitstring {u!r}")
    u_bits = np.array([int(c) for c in u], dtype=np.uint8)
    terms = []
    for z in range(2**n):
        z_bits = [(z >> (n - 1 - q)) & 1 for q in range(n)]
        letters = tuple("Z" if b else "I" for b in z_bits)
        sign = int((-1) ** int(np.dot(u_bits, z_bits)))
        terms.append((PauliString(letters), sign))
    return terms


def stabilizer_decomposition(circuit: BrickworkCircuit, u: str) -> list[tuple[PauliString, int]]:
    """Signed-Pauli expansion of U^dag |u><u| U.

    Returns the 2**n pairs (S, sign) with
    U^dag |u><u| U = 2**-n * sum sign * S, where each S carries phase +1.
    """
    layout = circuit.layout
    if len(u) != layout.n:
        raise ValueError(f"outcome bitstring {u!r} does not match {layout.n} qubits")
    terms = []
    for p, sign in basis_projector_decomposition(u):
        q = conjugate_through_circuit(circuit, p, adjoint=True)
        assert q.phase in (1, -1)
        terms.append((PauliString(q.letters), sign * int(q.phase.real)))
    return terms


def born_sample_batch(states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Basis-state indices sampled by the Born rule, one per row."""
    probs = np.abs(states) ** 2
    cum = np.cumsum(probs, axis=1)
    r = rng.random((states.shape[0], 1)) * cum[:, -1:]
    return (cum > r).argmax(axis=1)


def basis_states_batch(indices: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((len(indices), 2**n), dtype=complex)
    out[np.arange(len(indices)), indices] = 1.0
    return out


def outcome_strings(indices: np.ndarray, n: int) -> list[str]:
    return [index_to_bitstring(int(i), n) for i in indices]
