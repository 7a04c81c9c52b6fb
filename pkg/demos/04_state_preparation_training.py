"""Variational state preparation: shadow training vs the shot baseline.

Both methods run the same stochastic-perturbation optimizer on the same
5-qubit problem instances. The shadow method freezes all measurements into
one small snapshot set up front; the baseline pays fresh copies for every
evaluation.
"""
import numpy as np

from shadowopt.experiments import ExperimentConfig, run_experiment

common = dict(
    problem="vqsp", family="ala", n=5, layers=2,
    iterations=600, instances=3, seed=2024,
)

shadow_cfg = ExperimentConfig(method="shadow", t1=5, t2=400, **common)
baseline_cfg = ExperimentConfig(method="baseline", budgets=[120_000], **common)

print("optimizing 3 instances of 5-qubit state preparation (600 iterations)\n")
results = {}
for label, cfg in (("shadow", shadow_cfg), ("baseline", baseline_cfg)):
    res = run_experiment(cfg)
    s = res.summary()
    results[label] = res
    per_instance = ", ".join(f"{r.final_cost:.4f}" for r in res.instances)
    copies = s["total_copies"] // cfg.instances
    print(f"{label:>9}: final infidelities [{per_instance}]")
    print(f"{'':>9}  copies per instance: {copies:,}"
          + (f"  ({res.shots_per_evaluation} per evaluation)" if label == "baseline" else "  (acquisition only)"))

ratio = (results["baseline"].summary()["total_copies"]
         / results["shadow"].summary()["total_copies"])
print(f"\nthe shadow runs used {ratio:.0f}x fewer copies.")
print("write curves with the run command and plot them with the frontend:")
print("  shadowopt run --method shadow --n 5 ... --out-dir runs/shadow")
print("  node frontend/dist/cli.js learning-curves --out fig.svg \\")
print("      --series shadow=runs/shadow/curves.csv --column true_cost")
