"""One snapshot store, many ansatz searches.

Because snapshots are taken before any ansatz choice, a persisted store can
be replayed against every circuit family without touching the state source
again. This script acquires one store for a random 4-qubit state, then runs
a short optimization of each family against it and reports the copy ledger.
"""
import os
import tempfile

import numpy as np

from shadowopt.experiments import (
    ExperimentConfig,
    build_problem_ansatz,
    generate_shadow_set,
    run_experiment,
)
from shadowopt.store import read_store, write_store

base = ExperimentConfig(
    problem="vqsp", method="shadow", family="ala", n=4, layers=2,
    t1=4, t2=250, iterations=250, instances=1, seed=17, target_kind="haar",
)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "store.txt")
    write_store(path, generate_shadow_set(base, instance=0), base.seed)
    size = os.path.getsize(path)
    loaded, _ = read_store(path)
    print(f"store: {len(loaded)} snapshots, {size/1024:.0f} KiB on disk\n")
    print(f"{'family':>8} {'params':>7} {'final infidelity':>17} {'new copies':>11}")
    for family, layers in (("ala", 2), ("hea", 2), ("ttn", 1), ("mera", 1)):
        cfg = ExperimentConfig(**{**base.__dict__, "family": family, "layers": layers,
                                  "store": path})
        res = run_experiment(cfg, shadow_set=loaded, store_copies=len(loaded))
        inst = res.instances[0]
        extra = inst.copies - len(loaded)
        n_params = build_problem_ansatz(cfg).num_params
        print(f"{family:>8} {n_params:>7} {inst.final_cost:>17.4f} {extra:>11}")

print("\nevery family trained on the same 1000 copies; the best fit can be kept")
print("and the others discarded at no additional measurement cost.")
