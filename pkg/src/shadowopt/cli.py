"""Command-line workbench.

Subcommands:

- generate-shadows: sample a shadow store for one problem instance.
- run:              optimize instances with the shadow or baseline method,
                    writing curves.csv and summary.json.
- plan:             print the group count/size needed for a target accuracy.
- verify-bounds:    Monte Carlo checks of the norm bound at the maximally
                    mixed state and of the norm-variance bound across states.
- sweep-budgets:    cost-vs-copies table across baseline budgets.

Every ExperimentConfig field can come from a JSON config file (--config) and
be overridden by the matching flag. Exit status: 0 on success, 1 on a failed
verification, 2 on bad configuration.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .brickwork import BrickworkLayout
from .budget import BudgetLedger
from .experiments import (
    ExperimentConfig,
    generate_shadow_set,
    run_experiment,
    sweep_budgets,
    write_curves_csv,
    write_sweep_csv,
)
from .linalg import basis_state, outer
from .shadows import (
    estimate_locally_scrambled_norm,
    plan_samples,
    verify_variance_bound,
)
from .store import read_store, write_store

_CONFIG_FIELDS = {
    "problem": str, "method": str, "family": str, "n": int, "layers": int,
    "depth": int, "t1": int, "t2": int, "optimizer": str, "iterations": int,
    "max_evaluations": int, "instances": int, "seed": int, "target_kind": str,
    "target_family": str, "target_layers": int, "store": str, "interval": int,
}


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file with ExperimentConfig fields")
    for name, typ in _CONFIG_FIELDS.items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=typ, dest=name)
    parser.add_argument("--budgets", type=str, help="comma-separated total-copy budgets")


def _build_config(args) -> ExperimentConfig:
    overrides = {k: v for k, v in vars(args).items() if k in _CONFIG_FIELDS and v is not None}
    if getattr(args, "budgets", None):
        overrides["budgets"] = [int(x) for x in args.budgets.split(",")]
    if args.config:
        return ExperimentConfig.from_file(args.config, overrides)
    return ExperimentConfig(**overrides)


def cmd_generate_shadows(args) -> int:
    config = _build_config(args)
    ledger = BudgetLedger()
    sset = generate_shadow_set(config, instance=args.instance, ledger=ledger)
    write_store(args.out, sset, config.seed)
    print(f"wrote {len(sset)} snapshots (t1={config.t1}, t2={config.t2}) to {args.out}")
    print(f"copies consumed: {ledger.copies_consumed}")
    return 0


def cmd_run(args) -> int:
    config = _build_config(args)
    shadow_set = None
    store_copies = None
    if config.method == "shadow" and config.store:
        shadow_set, _seed = read_store(config.store)
        store_copies = len(shadow_set)
    result = run_experiment(config, shadow_set=shadow_set, store_copies=store_copies)
    os.makedirs(args.out_dir, exist_ok=True)
    curves = os.path.join(args.out_dir, "curves.csv")
    summary = os.path.join(args.out_dir, "summary.json")
    write_curves_csv(curves, result)
    with open(summary, "w", newline="\n") as fh:
        json.dump(result.to_json_dict(), fh, indent=2)
        fh.write("\n")
    s = result.summary()
    print(f"wrote {curves} and {summary}")
    print(
        f"{config.method}/{config.problem}/{config.family}: "
        f"mean final cost {s['mean_final_cost']:.4f} +- {s['std_final_cost']:.4f} "
        f"({s['total_copies']} copies total)"
    )
    return 0


def cmd_plan(args) -> int:
    plan = plan_samples(args.delta, args.epsilon, args.m, args.evaluations, args.norm, args.design)
    print(f"t1 = {plan.t1}")
    print(f"t2 = {plan.t2}")
    print(f"total snapshots = {plan.total}")
    return 0


def cmd_verify_bounds(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.which == "norm":
        layout = BrickworkLayout(args.n, args.d)
        dim = 2**args.n
        observable = outer(basis_state(args.n)) - np.eye(dim) / dim
        fro_sq = float(np.trace(observable @ observable.conj().T).real)
        estimate, stderr = estimate_locally_scrambled_norm(layout, observable, args.samples, rng)
        bound = 4.0 * fro_sq
        passed = estimate - 3.0 * stderr <= bound
        print(f"squared shadow norm at the maximally mixed state, n={args.n} d={args.d}")
        print(f"estimate = {estimate:.6f} +- {stderr:.6f} (stderr, {args.samples} samples)")
        print(f"bound 4*||O||_F^2 = {bound:.6f}")
        print(f"pass (estimate - 3*stderr <= bound): {passed}")
        return 0 if passed else 1
    layout = BrickworkLayout(args.n, args.d)
    observable = outer(basis_state(args.n))
    report = verify_variance_bound(layout, observable, args.states, args.samples, rng)
    print(f"variance of the squared shadow norm across Haar states, n={args.n} d={args.d}")
    print(f"variance = {report.variance:.6f} (stderr {report.variance_stderr:.6f}, "
          f"{args.states} states x {args.samples} samples)")
    print(f"95% upper confidence = {report.upper_95:.6f}")
    print(f"bound 64*||O||_F^4 = {report.bound_fourth_power:.6f} "
          f"(squared-norm variant 64*||O||_F^2 = {report.bound_squared:.6f})")
    print(f"pass (upper confidence <= fourth-power bound): {report.passed}")
    return 0 if report.passed else 1


def cmd_sweep_budgets(args) -> int:
    config = _build_config(args)
    rows = sweep_budgets(config)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    write_sweep_csv(args.out, rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shadowopt", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate-shadows", help="sample and persist a shadow store")
    _add_config_flags(p)
    p.add_argument("--out", required=True, help="store file path")
    p.add_argument("--instance", type=int, default=0, help="problem instance index")
    p.set_defaults(func=cmd_generate_shadows)

    p = sub.add_parser("run", help="run a training experiment")
    _add_config_flags(p)
    p.add_argument("--out-dir", default="runs", help="output directory")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("plan", help="snapshot counts for a target accuracy")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--evaluations", type=float, required=True)
    p.add_argument("--norm", type=float, default=1.0, help="Frobenius norm of the observable")
    p.add_argument("--design", choices=("one-design", "two-design"), default="one-design")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify-bounds", help="Monte Carlo bound verification")
    p.add_argument("--which", choices=("norm", "variance"), required=True)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--states", type=int, default=200, help="Haar states (variance check)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_bounds)

    p = sub.add_parser("sweep-budgets", help="cost-vs-copies sweep")
    _add_config_flags(p)
    p.add_argument("--out", default="sweep.csv")
    p.set_defaults(func=cmd_sweep_budgets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
