"""Line-oriented text format for persisted shadow sets.

Layout (LF line endings, ASCII):

    SHADOWSTORE 1 n=<n> d=<d> layout=<descriptor> t1=<T1> t2=<T2> seed=<seed>
    <idx>,<idx>,...,<idx>;<bitstring>
    ... (exactly T1*T2 record lines)

Record indices are canonical 2-qubit Clifford indices in layer-major,
left-to-right block order; the bitstring is the measured outcome, qubit 0
first. Regenerating a store from the same config and seed is byte-identical.
"""
from __future__ import annotations

import numpy as np

from .brickwork import BrickworkLayout
from .clifford import CLIFFORD2_SIZE
from .linalg import index_to_bitstring
from .shadows import ShadowSet

FORMAT_VERSION = 1


class StoreFormatError(ValueError):
    pass


def write_store(path: str, shadow_set: ShadowSet, seed: int) -> None:
    layout = shadow_set.layout
    header = (
        f"SHADOWSTORE {FORMAT_VERSION} n={layout.n} d={layout.d} "
        f"layout={layout.descriptor()} t1={shadow_set.t1} t2={shadow_set.t2} seed={seed}"
    )
    lines = [header]
    for i in range(len(shadow_set)):
        idx = ",".join(str(int(b)) for b in shadow_set.block_indices[i])
        bits = index_to_bitstring(int(shadow_set.outcome_indices[i]), layout.n)
        lines.append(f"{idx};{bits}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_store(path: str) -> tuple[ShadowSet, int]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise StoreFormatError("empty store file")
    head = lines[0].split()
    if len(head) < 2 or head[0] != "SHADOWSTORE":
        raise StoreFormatError("missing SHADOWSTORE header")
    if int(head[1]) != FORMAT_VERSION:
        raise StoreFormatError(f"unsupported store version {head[1]}")
    fields = dict(part.split("=", 1) for part in head[2:])
    n, d = int(fields["n"]), int(fields["d"])
    t1, t2 = int(fields["t1"]), int(fields["t2"])
    seed = int(fields["seed"])
    layout = BrickworkLayout(n, d)
    expected = layout.descriptor()
    if fields.get("layout", expected) != expected:
        raise StoreFormatError(f"layout descriptor mismatch: {fields['layout']!r}")
    records = lines[1:]
    if len(records) != t1 * t2:
        raise StoreFormatError(f"expected {t1 * t2} records, found {len(records)}")
    blocks = np.empty((t1 * t2, layout.num_blocks), dtype=np.uint16)
    outcomes = np.empty(t1 * t2, dtype=np.int64)
    for i, line in enumerate(records):
        try:
            idx_part, bits = line.split(";")
            indices = [int(x) for x in idx_part.split(",")]
        except ValueError as err:
            raise StoreFormatError(f"malformed record on line {i + 2}") from err
        if len(indices) != layout.num_blocks:
            raise StoreFormatError(f"record {i} has {len(indices)} indices, expected {layout.num_blocks}")
        if any(ix < 0 or ix >= CLIFFORD2_SIZE for ix in indices):
            raise StoreFormatError(f"record {i} has a Clifford index out of range")
        if len(bits) != n or any(c not in "01" for c in bits):
            raise StoreFormatError(f"record {i} has a malformed outcome {bits!r}")
        blocks[i] = indices
        outcomes[i] = int(bits, 2)
    return ShadowSet(layout, t1, t2, blocks, outcomes), seed
