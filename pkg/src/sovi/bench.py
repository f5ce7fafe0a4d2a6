"""Benchmark harness: many seeded runs, per-iteration error curves, CSV/JSON
artifacts.

One experiment draws ``runs`` independent MDPs (run k is seeded with
``base_seed + k``), certifies the optimal value function of each via
long Q-value iteration followed by exact greedy-policy evaluation, then
runs every configured algorithm for exactly ``iters`` iterations from a
shared random initial Q-table. The error curve of an algorithm is the
per-iteration mean (over runs) of the max-norm gap between the certified
optimum and the greedy values of the iterate, with the standard error of
that mean alongside.

Artifacts are fully deterministic given the spec: identical specs produce
byte-identical CSV files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .generator import RNG_NAME, GeneratorConfig, MAX_SEED, random_mdp, random_q0
from .linalg import max_norm
from .mdp import greedy_policy, value_from_q
from .solvers import (
    RunTrace,
    SolverConfig,
    policy_evaluation,
    q_value_iteration,
    second_order_value_iteration,
    value_iteration,
)

# Residual at which the reference Q-value iteration is considered converged.
REFERENCE_TOLERANCE = 1e-12
_REFERENCE_MAX_ITERS = 1_000_000

CURVE_CSV_HEADER = "algorithm,iteration,mean_error,stderr"
TRACE_CSV_HEADER = "iteration,residual,error_vs_reference,wall_time_ns"

KINDS = ("vi", "qvi", "sovi")


@dataclass(frozen=True)
class AlgorithmSpec:
    """One benchmark entrant: a solver kind plus (for sovi) its sharpness."""

    kind: str
    sharpness: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown algorithm kind {self.kind!r}, expected {KINDS}")
        if self.kind == "sovi":
            if self.sharpness is None or not (float(self.sharpness) > 0):
                raise ValueError("sovi entries need a positive sharpness")
        elif self.sharpness is not None:
            raise ValueError(f"{self.kind} does not take a sharpness")

    @property
    def name(self) -> str:
        if self.kind == "sovi":
            return f"sovi_N{self.sharpness:g}"
        return self.kind


@dataclass(frozen=True)
class ExperimentSpec:
    runs: int
    generator: GeneratorConfig
    iters: int
    algorithms: tuple[AlgorithmSpec, ...]
    base_seed: int

    def __post_init__(self) -> None:
        if int(self.runs) < 1:
            raise ValueError("runs must be >= 1")
        if int(self.iters) < 1:
            raise ValueError("iters must be >= 1")
        if not self.algorithms:
            raise ValueError("need at least one algorithm")
        if len({a.name for a in self.algorithms}) != len(self.algorithms):
            raise ValueError("algorithm names must be unique")
        if not (0 <= int(self.base_seed) <= MAX_SEED):
            raise ValueError("base_seed must fit in an unsigned 64-bit integer")
        object.__setattr__(self, "algorithms", tuple(self.algorithms))


@dataclass(frozen=True)
class ErrorCurve:
    """Mean error and standard error per iteration for one algorithm."""

    algorithm: str
    mean_error: np.ndarray
    stderr: np.ndarray


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    curves: tuple[ErrorCurve, ...]

    def curve(self, algorithm: str) -> ErrorCurve:
        for c in self.curves:
            if c.algorithm == algorithm:
                return c
        raise KeyError(algorithm)

    def final_errors(self) -> dict[str, tuple[float, float]]:
        """Per algorithm: (mean error, standard error) at the last iteration."""
        return {
            c.algorithm: (float(c.mean_error[-1]), float(c.stderr[-1]))
            for c in self.curves
        }


def average_error(values_per_run: list[np.ndarray], references: list[np.ndarray]) -> float:
    """Mean over runs of the max-norm gap between reference and estimate."""
    if len(values_per_run) != len(references):
        raise ValueError(
            f"got {len(values_per_run)} value vectors but {len(references)} references"
        )
    if not values_per_run:
        raise ValueError("need at least one run")
    return float(
        np.mean([max_norm(ref - val) for val, ref in zip(values_per_run, references)])
    )


def certified_optimal_values(mdp, q0) -> np.ndarray:
    """Optimal state values, certified: converge Q-value iteration to a
    residual of ``REFERENCE_TOLERANCE``, then exactly evaluate its greedy
    policy."""
    trace = q_value_iteration(
        mdp, q0, SolverConfig(max_iters=_REFERENCE_MAX_ITERS, tolerance=REFERENCE_TOLERANCE)
    )
    if not trace.converged:
        raise RuntimeError("reference Q-value iteration failed to converge")
    return policy_evaluation(mdp, greedy_policy(trace.final))


def _run_algorithm(alg: AlgorithmSpec, mdp, q0, iters: int, reference) -> RunTrace:
    cfg = SolverConfig(max_iters=iters, tolerance=0.0, sharpness=alg.sharpness)
    if alg.kind == "vi":
        return value_iteration(mdp, value_from_q(q0), cfg, reference_values=reference)
    if alg.kind == "qvi":
        return q_value_iteration(mdp, q0, cfg, reference_values=reference)
    return second_order_value_iteration(mdp, q0, cfg, reference_values=reference)


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    errors = {
        alg.name: np.empty((spec.runs, spec.iters)) for alg in spec.algorithms
    }
    for k in range(spec.runs):
        seed = spec.base_seed + k
        gen_cfg = replace(spec.generator, seed=seed)
        mdp = random_mdp(gen_cfg)
        q0 = random_q0(gen_cfg.num_states, gen_cfg.num_actions, seed)
        reference = certified_optimal_values(mdp, q0)
        for alg in spec.algorithms:
            try:
                trace = _run_algorithm(alg, mdp, q0, spec.iters, reference)
            except Exception as exc:
                raise RuntimeError(
                    f"run {k} (seed {seed}), algorithm {alg.name}: {exc}"
                ) from exc
            errors[alg.name][k, :] = trace.errors
    curves = []
    for alg in spec.algorithms:
        per_iter = errors[alg.name]
        mean = per_iter.mean(axis=0)
        if spec.runs > 1:
            stderr = per_iter.std(axis=0, ddof=1) / np.sqrt(spec.runs)
        else:
            stderr = np.zeros(spec.iters)
        curves.append(ErrorCurve(algorithm=alg.name, mean_error=mean, stderr=stderr))
    return ExperimentResult(spec=spec, curves=tuple(curves))


def write_curves_csv(result: ExperimentResult, path: str | Path) -> None:
    """Curve CSV: one row per (algorithm, iteration), sorted, 10 significant
    digits, LF newlines. Byte-identical for identical specs."""
    lines = [CURVE_CSV_HEADER]
    for curve in sorted(result.curves, key=lambda c: c.algorithm):
        for i in range(len(curve.mean_error)):
            lines.append(
                f"{curve.algorithm},{i + 1},"
                f"{curve.mean_error[i]:.10g},{curve.stderr[i]:.10g}"
            )
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def summary_dict(result: ExperimentResult) -> dict:
    spec = result.spec
    return {
        "spec": {
            "runs": spec.runs,
            "iters": spec.iters,
            "base_seed": spec.base_seed,
            "generator": {
                "num_states": spec.generator.num_states,
                "num_actions": spec.generator.num_actions,
                "gamma": spec.generator.gamma,
                "reward_low": spec.generator.reward_low,
                "reward_high": spec.generator.reward_high,
            },
            "algorithms": [
                {"name": a.name, "kind": a.kind, "N": a.sharpness}
                for a in spec.algorithms
            ],
        },
        "rng": RNG_NAME,
        "error_definition": (
            "final_mean_error is the mean over runs of the max-norm gap between "
            "the certified optimal values and the greedy values of the final "
            "iterate; final_stderr is its standard error (sample std, ddof=1, "
            "divided by sqrt(runs))."
        ),
        "results": [
            {
                "algorithm": alg.name,
                "N": alg.sharpness,
                "final_mean_error": float(result.curve(alg.name).mean_error[-1]),
                "final_stderr": float(result.curve(alg.name).stderr[-1]),
            }
            for alg in spec.algorithms
        ],
    }


def write_summary_json(result: ExperimentResult, path: str | Path) -> None:
    Path(path).write_text(json.dumps(summary_dict(result), indent=2) + "\n", newline="\n")


def write_trace_csv(trace: RunTrace, path: str | Path) -> None:
    """Per-iteration trace of a single solver run."""
    lines = [TRACE_CSV_HEADER]
    for rec in trace.records:
        err = "" if rec.error is None else f"{rec.error:.10g}"
        lines.append(f"{rec.iteration},{rec.residual:.10g},{err},{rec.wall_time_ns}")
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")
