"""Parameterized shallow circuit families: ALA, MERA, HEA, TTN.

The two-qubit unit is Ry(a) (x) Ry(b), then CNOT (control = first target),
then Ry(c) (x) Ry(d): 4 angles, reducing to a bare CNOT at zero angles.
Gate-synthesis problems use a doubled unit (two of these in sequence,
8 angles). HEA uses single-qubit boxes Ry(a)Rz(b) plus a CNOT ladder.

Tree families (MERA, TTN) need n a power of two. Layouts:

- ALA: ``layers`` brick layers; layer k holds blocks on (q, q+1), q starting
  at k % 2 and stepping by 2.
- HEA: per layer, one box per qubit followed by the ladder CNOT(i, i+1).
- TTN: a binary tree from leaves to root; the level-k block joins the
  highest-index qubits of adjacent subtrees: (i*2^k + 2^(k-1) - 1,
  i*2^k + 2^k - 1).
- MERA: per scale, blocks between adjacent coarse-graining pairs first
  (disentanglers), then blocks on the pairs themselves (isometries);
  representatives of a subtree are its highest-index qubit. ``layers``
  repeats the whole structure for the tree families.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import apply_gate, basis_state

TEMPLATE_ARITY = {"block4": 4, "block8": 8, "box2": 2, "cnot": 0}
TEMPLATE_QUBITS = {"block4": 2, "block8": 2, "box2": 1, "cnot": 2}

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)

FAMILIES = ("ala", "mera", "hea", "ttn")


def _ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(phi: float) -> np.ndarray:
    return np.array([[np.exp(-1j * phi / 2), 0], [0, np.exp(1j * phi / 2)]], dtype=complex)


def _block4(angles) -> np.ndarray:
    pre = np.kron(_ry(angles[0]), _ry(angles[1]))
    post = np.kron(_ry(angles[2]), _ry(angles[3]))
    return post @ CNOT @ pre


def template_matrix(template: str, angles) -> np.ndarray:
    if template == "block4":
        return _block4(angles)
    if template == "block8":
        return _block4(angles[4:]) @ _block4(angles[:4])
    if template == "box2":
        return _ry(angles[0]) @ _rz(angles[1])
    if template == "cnot":
        return CNOT
    raise ValueError(f"unknown gate template {template!r}")


@dataclass(frozen=True)
class GateSpec:
    template: str
    targets: tuple[int, ...]
    slots: tuple[int, ...]


@dataclass(frozen=True)
class AnsatzDescriptor:
    family: str
    n: int
    layers: int
    gates: tuple[GateSpec, ...]
    doubled_blocks: bool = False

    @property
    def num_params(self) -> int:
        return max((s for g in self.gates for s in g.slots), default=-1) + 1

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "layers": self.layers,
            "doubled_blocks": self.doubled_blocks,
        }


def _tree_levels(n: int) -> int:
    k = int(round(np.log2(n)))
    if 2**k != n:
        raise ValueError(f"tree families need n to be a power of two, got {n}")
    return k


def build_ansatz(family: str, n: int, layers: int = 1, doubled_blocks: bool = False) -> AnsatzDescriptor:
    """Deterministic gate layout for the requested family."""
    family = family.lower()
    if family not in FAMILIES:
        raise ValueError(f"unknown ansatz family {family!r}; choose from {FAMILIES}")
    if n < 2:
        raise ValueError("need at least 2 qubits")
    if layers < 1:
        raise ValueError("need at least one layer")
    block = "block8" if doubled_blocks else "block4"
    arity = TEMPLATE_ARITY[block]
    gates: list[GateSpec] = []
    slot = 0

    def add(template, targets):
        nonlocal slot
        k = TEMPLATE_ARITY[template]
        gates.append(GateSpec(template, tuple(targets), tuple(range(slot, slot + k))))
        slot += k

    if family == "ala":
        for layer in range(layers):
            for q in range(layer % 2, n - 1, 2):
                add(block, (q, q + 1))
    elif family == "hea":
        if doubled_blocks:
            raise ValueError("the hardware-efficient family uses bare CNOTs; no doubled blocks")
        for _ in range(layers):
            for q in range(n):
                add("box2", (q,))
            for q in range(n - 1):
                add("cnot", (q, q + 1))
    elif family == "ttn":
        levels = _tree_levels(n)
        for _ in range(layers):
            for k in range(1, levels + 1):
                for i in range(n // 2**k):
                    a = i * 2**k + 2 ** (k - 1) - 1
                    b = i * 2**k + 2**k - 1
                    add(block, (a, b))
    else:  # mera
        levels = _tree_levels(n)
        for _ in range(layers):
            reps = list(range(n))
            for _k in range(1, levels + 1):
                for i in range(1, len(reps) - 1, 2):
                    add(block, (reps[i], reps[i + 1]))  # disentanglers between pairs
                for i in range(0, len(reps) - 1, 2):
                    add(block, (reps[i], reps[i + 1]))  # isometries on pairs
                reps = reps[1::2]
    desc = AnsatzDescriptor(family, n, layers, tuple(gates), doubled_blocks)
    assert desc.num_params == slot
    return desc


def gate_sequence(desc: AnsatzDescriptor, params: np.ndarray) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    """Dense matrices and targets, in application order."""
    params = np.asarray(params, dtype=float)
    if params.shape != (desc.num_params,):
        raise ValueError(f"expected {desc.num_params} parameters, got {params.shape}")
    return [(template_matrix(g.template, params[list(g.slots)]), g.targets) for g in desc.gates]


def apply_ansatz(
    desc: AnsatzDescriptor,
    params: np.ndarray,
    state: np.ndarray,
    adjoint: bool = False,
) -> np.ndarray:
    """Apply U(theta) (or its adjoint) gate by gate to a statevector."""
    seq = gate_sequence(desc, params)
    if adjoint:
        seq = [(m.conj().T, t) for m, t in reversed(seq)]
    out = np.asarray(state, dtype=complex)
    for mat, targets in seq:
        out = apply_gate(out, mat, targets)
    return out


def crossing_metric(desc: AnsatzDescriptor) -> int:
    """Max over wires of the number of gates touching or crossing the wire."""
    counts = np.zeros(desc.n, dtype=int)
    for g in desc.gates:
        lo, hi = min(g.targets), max(g.targets)
        counts[lo : hi + 1] += 1
    return int(counts.max()) if desc.gates else 0


def maximally_entangled_state(n: int) -> np.ndarray:
    """|Phi> on 2n qubits: uniform superposition of |i>|i>."""
    dim = 2**n
    vec = np.zeros(dim * dim, dtype=complex)
    vec[np.arange(dim) * dim + np.arange(dim)] = 1.0 / np.sqrt(dim)
    return vec


def vectorize_unitary(desc: AnsatzDescriptor, params: np.ndarray) -> np.ndarray:
    """(I (x) U(theta)) |Phi> on 2n qubits: the normalized column stack of U."""
    seq = gate_sequence(desc, params)
    out = maximally_entangled_state(desc.n)
    for mat, targets in seq:
        out = apply_gate(out, mat, tuple(t + desc.n for t in targets))
    return out


def random_parameters(desc: AnsatzDescriptor, rng: np.random.Generator) -> np.ndarray:
    """Angles drawn uniformly from [0, 2*pi), the default initialization."""
    return rng.uniform(0.0, 2.0 * np.pi, size=desc.num_params)
