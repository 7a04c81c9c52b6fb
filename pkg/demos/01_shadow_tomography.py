"""Snapshot-by-snapshot state reconstruction with shallow brickwork shadows.

Acquire randomized-measurement snapshots of a 3-qubit state, materialize
their shadows, and watch the running average converge to the true density
matrix as the snapshot count grows.
"""
import numpy as np

from shadowopt.brickwork import BrickworkLayout
from shadowopt.channel import pattern_weights
from shadowopt.linalg import haar_random_state, outer
from shadowopt.shadows import acquire_shadow_set, materialize_dense

rng = np.random.default_rng(7)
n, depth = 3, 2
layout = BrickworkLayout(n, depth)
weights = pattern_weights(layout)

psi = haar_random_state(n, rng)
rho = outer(psi)

print(f"unknown state: {n} qubits; randomizing circuits: depth-{depth} brickwork")
print(f"{'snapshots':>10}  {'|mean - rho|_max':>18}")

sset = acquire_shadow_set(lambda: psi, layout, t1=1, t2=20_000, rng=rng)
running = np.zeros((2**n, 2**n), dtype=complex)
checkpoints = {100, 1_000, 5_000, 20_000}
for i in range(len(sset)):
    running += materialize_dense(sset.snapshot(i), weights)
    if (i + 1) in checkpoints:
        err = np.max(np.abs(running / (i + 1) - rho))
        print(f"{i + 1:>10}  {err:>18.4f}")

print("\neach shadow has unit trace but is not a state (eigenvalues exceed [0,1]);")
single = materialize_dense(sset.snapshot(0), weights)
print(f"first shadow: trace {np.trace(single).real:+.3f}, "
      f"eigenvalue range [{np.linalg.eigvalsh(single).min():+.2f}, "
      f"{np.linalg.eigvalsh(single).max():+.2f}]")
