"""Experiment orchestration: problem instances, training runs, budget sweeps.

Reproducibility contract: every random choice descends from the master seed
through a fixed numpy SeedSequence spawn tree,

    master -> instance i -> (target, shadows, init, optimizer, shots),

so a run with the same config and seed reproduces bit-identical curve rows,
and a shadow store regenerated with the same seed is byte-identical. Targets
depend only on (target kind/family/layers, n, master seed, instance), never
on the method, so shadow and baseline runs of one instance share the target.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .ansatz import AnsatzDescriptor, apply_ansatz, build_ansatz, random_parameters, vectorize_unitary
from .brickwork import BrickworkLayout
from .budget import BudgetLedger
from .costs import CostFunction, exact_cost, shadow_cost, shot_cost
from .linalg import basis_state, haar_random_state
from .optimize import (
    OptimizationBudgetExhausted,
    OptTrace,
    PowellConfig,
    SpsaConfig,
    interval_min_reduce,
    powell_minimize,
    spsa_minimize,
)
from .shadows import ShadowSet, acquire_shadow_set

DOUBLED_FAMILIES = ("ala", "mera", "ttn")  # gate synthesis doubles these blocks


@dataclass
class ExperimentConfig:
    problem: str = "vqsp"            # vqsp | vqcs
    method: str = "shadow"             # shadow | baseline
    family: str = "ala"
    n: int = 8                       # ansatz qubits (vqcs: gate qubits, states live on 2n)
    layers: int = 3
    depth: int = 3                   # shadow-circuit depth
    t1: int = 10
    t2: int = 1000
    budgets: list[int] = field(default_factory=lambda: [10**6])
    optimizer: str = "spsa"          # spsa | powell
    iterations: int = 5000           # spsa iterations (2 evaluations each)
    max_evaluations: int = 1000      # powell evaluation cap
    instances: int = 5
    seed: int = 0
    target_kind: str = "ansatz"      # ansatz | haar
    target_family: str | None = None # defaults to family
    target_layers: int | None = None # defaults to layers
    store: str | None = None         # path of a persisted shadow set (shadow method only)
    interval: int = 100              # interval-minimum reduction width

    def __post_init__(self):
        if self.problem not in ("vqsp", "vqcs"):
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.method not in ("shadow", "baseline"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.optimizer not in ("spsa", "powell"):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")
        if self.instances < 1 or self.t1 < 1 or self.t2 < 1:
            raise ValueError("instances, t1, t2 must be >= 1")
        if any(b < 1 for b in self.budgets):
            raise ValueError("budgets must be >= 1")
        if self.problem == "vqcs" and self.target_kind != "ansatz":
            raise ValueError("gate synthesis targets must be generated from an ansatz")
        if self.store is not None and self.instances != 1:
            raise ValueError("a shadow store pins one problem instance; set instances=1")

    @classmethod
    def from_file(cls, path: str, overrides: dict | None = None) -> "ExperimentConfig":
        with open(path) as fh:
            data = json.load(fh)
        data.update(overrides or {})
        return cls(**data)

    def resolved_target_family(self) -> str:
        return self.target_family or self.family

    def resolved_target_layers(self) -> int:
        return self.layers if self.target_layers is None else self.target_layers

    def planned_evaluations(self) -> int:
        return 2 * self.iterations if self.optimizer == "spsa" else self.max_evaluations

    def shots_per_evaluation(self, budget: int) -> int:
        return max(1, budget // self.planned_evaluations())


def instance_rngs(config: ExperimentConfig, instance: int) -> dict[str, np.random.Generator]:
    root = np.random.SeedSequence(config.seed)
    child = root.spawn(config.instances)[instance]
    names = ("target", "shadows", "init", "optimizer", "shots")
    return {name: np.random.default_rng(ss) for name, ss in zip(names, child.spawn(len(names)))}


def _doubled(problem: str, family: str) -> bool:
    return problem == "vqcs" and family in DOUBLED_FAMILIES


def build_problem_ansatz(config: ExperimentConfig) -> AnsatzDescriptor:
    return build_ansatz(
        config.family, config.n, config.layers, doubled_blocks=_doubled(config.problem, config.family)
    )


def make_target(config: ExperimentConfig, target_rng: np.random.Generator) -> np.ndarray:
    """The unknown state (or column-stacked unknown gate) of one instance."""
    family = config.resolved_target_family()
    layers = config.resolved_target_layers()
    if config.problem == "vqsp":
        if config.target_kind == "haar":
            return haar_random_state(config.n, target_rng)
        desc = build_ansatz(family, config.n, layers)
        theta = random_parameters(desc, target_rng)
        return apply_ansatz(desc, theta, basis_state(config.n), adjoint=True)
    desc = build_ansatz(family, config.n, layers, doubled_blocks=_doubled("vqcs", family))
    theta = random_parameters(desc, target_rng)
    return vectorize_unitary(desc, theta)


def shadow_layout(config: ExperimentConfig) -> BrickworkLayout:
    total = config.n if config.problem == "vqsp" else 2 * config.n
    return BrickworkLayout(total, config.depth)


def generate_shadow_set(
    config: ExperimentConfig, instance: int = 0, ledger: BudgetLedger | None = None
) -> ShadowSet:
    rngs = instance_rngs(config, instance)
    target = make_target(config, rngs["target"])
    return acquire_shadow_set(
        lambda: target, shadow_layout(config), config.t1, config.t2, rngs["shadows"], ledger=ledger
    )


@dataclass
class InstanceResult:
    instance: int
    trace: OptTrace
    true_costs: list[float]
    final_theta: np.ndarray
    final_cost: float
    final_estimator_cost: float
    copies: int
    copies_breakdown: dict[str, int]
    exhausted: bool
    interval_minima: list[float]


@dataclass
class RunResult:
    config: ExperimentConfig
    budget: int
    shots_per_evaluation: int | None
    instances: list[InstanceResult]
    wall_clock_seconds: float

    def summary(self) -> dict:
        finals = np.array([r.final_cost for r in self.instances])
        lowest = np.array([min(r.true_costs) if r.true_costs else np.nan for r in self.instances])
        estimator_finals = np.array([r.final_estimator_cost for r in self.instances])
        return {
            "mean_final_cost": float(finals.mean()),
            "std_final_cost": float(finals.std()),
            "median_final_cost": float(np.median(finals)),
            "mean_lowest_cost": float(lowest.mean()),
            "median_final_interval_min": (
                float(np.median([r.interval_minima[-1] for r in self.instances]))
                if all(r.interval_minima for r in self.instances)
                else float("nan")
            ),
            # estimator costs can leave [0, 1]; the clamped figure is reporting-only
            "mean_final_estimator_cost": float(estimator_finals.mean()),
            "mean_final_estimator_cost_clamped": float(np.clip(estimator_finals, 0.0, 1.0).mean()),
            "total_copies": int(sum(r.copies for r in self.instances)),
        }

    def to_json_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "budget": self.budget,
            "shots_per_evaluation": self.shots_per_evaluation,
            "seed_scheme": "SeedSequence(master).spawn(instances) -> (target, shadows, init, optimizer, shots)",
            "instances": [
                {
                    "instance": r.instance,
                    "final_cost": r.final_cost,
                    "final_estimator_cost": r.final_estimator_cost,
                    "evaluations": r.trace.num_evaluations,
                    "copies": r.copies,
                    "copies_breakdown": r.copies_breakdown,
                    "exhausted": r.exhausted,
                    "interval_minima": r.interval_minima,
                }
                for r in self.instances
            ],
            "summary": self.summary(),
            "wall_clock_seconds": self.wall_clock_seconds,
        }

    def curve_rows(self) -> list[tuple]:
        rows = []
        for r in self.instances:
            for (idx, _hash, cost, copies), true in zip(r.trace.records, r.true_costs):
                rows.append((r.instance, idx, cost, copies, true))
        return rows


CURVE_HEADER = ("instance", "evaluation", "cost", "cumulative_copies", "true_cost")


def write_curves_csv(path: str, result: RunResult) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(CURVE_HEADER) + "\n")
        for instance, idx, cost, copies, true in result.curve_rows():
            fh.write(f"{instance},{idx},{cost:.17g},{copies},{true:.17g}\n")


def run_experiment(
    config: ExperimentConfig,
    budget: int | None = None,
    shadow_set: ShadowSet | None = None,
    store_copies: int | None = None,
) -> RunResult:
    """Optimize ``instances`` independent problems and collect traces.

    For the shadow method, ``shadow_set`` (typically loaded from a store)
    may be passed for single-instance runs; otherwise sets are acquired
    inline. ``store_copies`` records the acquisition cost of a preloaded set.
    """
    t_start = time.time()
    if budget is None:
        budget = config.t1 * config.t2 if config.method == "shadow" else config.budgets[0]
    desc = build_problem_ansatz(config)
    shots = None if config.method == "shadow" else config.shots_per_evaluation(budget)
    results = []
    for instance in range(config.instances):
        rngs = instance_rngs(config, instance)
        target = make_target(config, rngs["target"])
        cost = CostFunction(config.problem, target, desc)
        theta0 = random_parameters(desc, rngs["init"])
        ledger = BudgetLedger(limit=None if config.method == "shadow" else budget)
        if config.method == "shadow":
            if shadow_set is not None:
                sset = shadow_set
                ledger.spend("shadow_acquisition", store_copies if store_copies is not None else len(sset))
            else:
                sset = acquire_shadow_set(
                    lambda: target, shadow_layout(config), config.t1, config.t2,
                    rngs["shadows"], ledger=ledger,
                )
            base_evaluator = lambda th: shadow_cost(cost, th, sset)
        else:
            shot_rng = rngs["shots"]
            base_evaluator = lambda th: shot_cost(cost, th, shots, shot_rng, ledger)

        true_costs: list[float] = []

        def evaluator(th):
            value = base_evaluator(th)
            true_costs.append(exact_cost(cost, th))
            return value

        copies_fn = lambda: ledger.copies_consumed
        exhausted = False
        opt_seed = int(rngs["optimizer"].integers(2**32))
        try:
            if config.optimizer == "spsa":
                theta, trace = spsa_minimize(
                    evaluator, theta0, SpsaConfig(iterations=config.iterations, seed=opt_seed), copies_fn
                )
            else:
                theta, trace = powell_minimize(
                    evaluator, theta0, PowellConfig(max_evaluations=config.max_evaluations), copies_fn
                )
        except OptimizationBudgetExhausted as err:
            theta, trace, exhausted = err.theta, err.trace, True
        minima = interval_min_reduce(np.array(true_costs), config.interval) if true_costs else np.array([])
        results.append(
            InstanceResult(
                instance=instance,
                trace=trace,
                true_costs=true_costs,
                final_theta=theta,
                final_cost=exact_cost(cost, theta),
                final_estimator_cost=float(base_evaluator(theta)) if config.method == "shadow"
                else (float(trace.records[-1][2]) if trace.records else float("nan")),
                copies=ledger.copies_consumed,
                copies_breakdown=dict(ledger.breakdown),
                exhausted=exhausted,
                interval_minima=[float(x) for x in minima],
            )
        )
    return RunResult(config, budget, shots, results, time.time() - t_start)


@dataclass
class SweepRow:
    method: str
    budget: int
    copies: int
    mean_lowest_cost: float
    mean_final_cost: float


def sweep_budgets(config: ExperimentConfig) -> list[SweepRow]:
    """One row per (method, budget): the shadow method at its store size plus
    the baseline at every configured budget."""
    rows = []
    shadow_cfg = _with(config, method="shadow")
    res = run_experiment(shadow_cfg)
    s = res.summary()
    rows.append(SweepRow("shadow", config.t1 * config.t2, s["total_copies"] // config.instances,
                         s["mean_lowest_cost"], s["mean_final_cost"]))
    for budget in config.budgets:
        res = run_experiment(_with(config, method="baseline"), budget=budget)
        s = res.summary()
        rows.append(SweepRow("baseline", budget, s["total_copies"] // config.instances,
                             s["mean_lowest_cost"], s["mean_final_cost"]))
    return rows


def write_sweep_csv(path: str, rows: list[SweepRow]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("method,budget,copies,mean_lowest_cost,mean_final_cost\n")
        for r in rows:
            fh.write(f"{r.method},{r.budget},{r.copies},{r.mean_lowest_cost:.17g},{r.mean_final_cost:.17g}\n")


def _with(config: ExperimentConfig, **kwargs) -> ExperimentConfig:
    data = asdict(config)
    data.update(kwargs)
    return ExperimentConfig(**data)
