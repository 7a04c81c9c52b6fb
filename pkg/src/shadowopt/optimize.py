"""Derivative-free optimizers with full evaluation traces and strict budgets.

Both optimizers record every evaluation (index, parameter hash, value,
cumulative copies) and never call the evaluator once their evaluation budget
or the copy budget is exhausted. Copy-budget exhaustion inside the evaluator
is surfaced as OptimizationBudgetExhausted carrying the partial result.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize as sciopt

from .budget import BudgetExhaustedError


@dataclass
class SpsaConfig:
    """Simultaneous-perturbation config: both gain sequences are r**-exponent
    and the perturbation is an independent +-1 per coordinate."""

    iterations: int = 5000
    gain_exponent: float = 0.4
    seed: int | None = None

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass
class PowellConfig:
    max_evaluations: int = 1000
    line_tolerance: float = 1e-6
    ftol: float = 1e-9
    restart_every: int | None = None  # default: parameter count


@dataclass
class OptTrace:
    """Per-evaluation log: (evaluation index, theta hash, cost, cumulative copies)."""

    records: list[tuple[int, str, float, int]] = field(default_factory=list)
    exhausted: bool = False

    def append(self, theta: np.ndarray, cost: float, copies: int) -> None:
        self.records.append((len(self.records), _theta_hash(theta), float(cost), int(copies)))

    @property
    def num_evaluations(self) -> int:
        return len(self.records)

    @property
    def costs(self) -> np.ndarray:
        return np.array([r[2] for r in self.records])


class OptimizationBudgetExhausted(RuntimeError):
    """The copy budget ran out mid-optimization; carries the partial result."""

    def __init__(self, theta: np.ndarray, trace: OptTrace):
        super().__init__("copy budget exhausted during optimization")
        self.theta = theta
        self.trace = trace


def _theta_hash(theta: np.ndarray) -> str:
    return hashlib.sha1(np.ascontiguousarray(theta, dtype=float).tobytes()).hexdigest()[:16]


def gain_sequence(r: int, exponent: float = 0.4) -> float:
    """a_r = c_r = r**-exponent for r = 1, 2, ..."""
    return float(r) ** (-exponent)


def spsa_minimize(cost_evaluator, theta0, config: SpsaConfig, copies_fn=None):
    """Two evaluations per iteration at theta +- c_r * Delta, then
    theta <- theta - a_r * ghat with ghat_i = (f+ - f-) / (2 c_r Delta_i)."""
    theta = np.array(theta0, dtype=float)
    rng = np.random.default_rng(config.seed)
    trace = OptTrace()
    copies = copies_fn or (lambda: 0)

    def evaluate(point):
        value = float(cost_evaluator(point))
        trace.append(point, value, copies())
        return value

    for r in range(1, config.iterations + 1):
        gain = gain_sequence(r, config.gain_exponent)
        delta = rng.integers(0, 2, size=theta.size) * 2.0 - 1.0
        try:
            f_plus = evaluate(theta + gain * delta)
            f_minus = evaluate(theta - gain * delta)
        except BudgetExhaustedError as err:
            trace.exhausted = True
            raise OptimizationBudgetExhausted(theta, trace) from err
        ghat = (f_plus - f_minus) / (2.0 * gain) * delta
        theta = theta - gain * ghat
    return theta, trace


class _EvaluationBudgetReached(Exception):
    pass


def powell_minimize(cost_evaluator, theta0, config: PowellConfig, copies_fn=None):
    """Conjugate-direction minimization with bracketing plus Brent line
    searches. The direction of largest decrease is replaced by the sweep
    displacement under the standard acceptance test, and the direction set is
    reset to the coordinate basis every ``restart_every`` sweeps."""
    theta = np.array(theta0, dtype=float)
    dim = theta.size
    restart = config.restart_every or dim
    trace = OptTrace()
    copies = copies_fn or (lambda: 0)
    best = {"theta": theta.copy(), "value": np.inf}

    def evaluate(point):
        if trace.num_evaluations >= config.max_evaluations:
            raise _EvaluationBudgetReached
        value = float(cost_evaluator(point))
        trace.append(point, value, copies())
        if value < best["value"]:
            best["value"] = value
            best["theta"] = np.array(point, dtype=float)
        return value

    def line_minimize(point, direction, f0):
        norm = np.linalg.norm(direction)
        if norm == 0:
            return point, f0, 0.0
        unit = direction / norm
        try:
            t_min = sciopt.brent(
                lambda t: evaluate(point + t * unit),
                brack=(0.0, 1.0),
                tol=max(config.line_tolerance, 1e-11),
                maxiter=60,
            )
        except BudgetExhaustedError:
            raise
        except RuntimeError:  # no valid bracket on a flat or noisy section
            return point, f0, 0.0
        f_min = evaluate(point + t_min * unit)
        if f_min > f0:  # keep the better endpoint under noisy or flat costs
            return point, f0, 0.0
        return point + t_min * unit, f_min, abs(t_min)

    directions = np.eye(dim)
    try:
        f_current = evaluate(theta)
        sweep = 0
        while True:
            sweep += 1
            if sweep % restart == 0:
                directions = np.eye(dim)
            theta_start, f_start = theta.copy(), f_current
            biggest_drop, drop_index = 0.0, 0
            for i in range(dim):
                f_before = f_current
                theta, f_current, _ = line_minimize(theta, directions[i], f_current)
                if f_before - f_current > biggest_drop:
                    biggest_drop, drop_index = f_before - f_current, i
            if 2.0 * (f_start - f_current) <= config.ftol * (abs(f_start) + abs(f_current)) + 1e-20:
                break
            displacement = theta - theta_start
            if np.linalg.norm(displacement) == 0:
                break
            f_extrapolated = evaluate(theta_start + 2.0 * displacement)
            if f_extrapolated < f_start:
                t = 2.0 * (f_start - 2.0 * f_current + f_extrapolated)
                t *= (f_start - f_current - biggest_drop) ** 2
                t -= biggest_drop * (f_start - f_extrapolated) ** 2
                if t < 0.0:
                    theta, f_current, moved = line_minimize(theta, displacement, f_current)
                    if moved > 0:
                        directions[drop_index] = directions[dim - 1]
                        directions[dim - 1] = displacement / np.linalg.norm(displacement)
    except _EvaluationBudgetReached:
        theta = best["theta"]
    except BudgetExhaustedError as err:
        trace.exhausted = True
        raise OptimizationBudgetExhausted(best["theta"], trace) from err
    return theta, trace


def interval_min_reduce(trace_or_values, interval: int) -> np.ndarray:
    """Per-interval minima of the cost series (a trailing partial interval is
    reduced too)."""
    if interval < 1:
        raise ValueError("interval must be >= 1")
    values = trace_or_values.costs if isinstance(trace_or_values, OptTrace) else np.asarray(trace_or_values, dtype=float)
    return np.array([values[lo : lo + interval].min() for lo in range(0, len(values), interval)])
