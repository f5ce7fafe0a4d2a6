"""Command-line interface: generate benchmark MDPs, solve a single instance,
run the full error-curve experiment, or verify the library's core properties
on random instances."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .generator import GeneratorConfig, random_mdp, random_q0
from .io import load_mdp, load_q_table, save_mdp, save_q_table
from .mdp import q_from_values, value_from_q
from .solvers import (
    SolverConfig,
    q_value_iteration,
    second_order_value_iteration,
    value_iteration,
)
from .verify import run_all


def _add_generator_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--states", type=int, default=10, help="number of states")
    parser.add_argument("--actions", type=int, default=5, help="number of actions")
    parser.add_argument("--gamma", type=float, default=0.9, help="discount factor")
    parser.add_argument("--reward-low", type=float, default=-1.0,
                        help="lower end of the uniform reward support")
    parser.add_argument("--reward-high", type=float, default=1.0,
                        help="upper end of the uniform reward support")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sovi",
        description="Solvers and benchmarks for finite discounted MDPs, "
        "including second-order (Newton) value iteration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a random MDP and write it as JSON")
    _add_generator_flags(gen)
    gen.add_argument("--seed", type=int, default=0, help="generator seed")
    gen.add_argument("--out", type=Path, required=True, help="output directory")

    solve = sub.add_parser("solve", help="run one algorithm on one saved MDP")
    solve.add_argument("--mdp", type=Path, required=True, help="MDP JSON file")
    solve.add_argument("--algo", choices=("vi", "qvi", "sovi"), required=True)
    solve.add_argument("--N", type=float, dest="sharpness", default=None,
                       help="smoothing sharpness (sovi only)")
    solve.add_argument("--iters", type=int, default=50, help="iteration budget")
    solve.add_argument("--tol", type=float, default=0.0,
                       help="early-stop residual tolerance (0 disables)")
    solve.add_argument("--seed", type=int, default=0,
                       help="seed for the random initial Q-table")
    solve.add_argument("--q0", type=Path, default=None,
                       help="initial Q-table JSON (overrides --seed)")
    solve.add_argument("--out", type=Path, required=True, help="output directory")

    run = sub.add_parser("bench", help="run the multi-MDP error-curve experiment")
    _add_generator_flags(run)
    run.add_argument("--runs", type=int, default=100, help="number of independent MDPs")
    run.add_argument("--iters", type=int, default=50, help="iterations per run")
    run.add_argument("--seed", type=int, default=0, help="base seed; run k uses seed+k")
    run.add_argument("--algo", choices=("vi", "qvi", "sovi"), action="append",
                     dest="algos", help="algorithm to benchmark (repeatable)")
    run.add_argument("--N", type=float, action="append", dest="sharpness_values",
                     help="sovi sharpness (repeatable; one sovi entrant per value)")
    run.add_argument("--out", type=Path, required=True, help="output directory")

    ver = sub.add_parser("verify", help="run the randomized property suites")
    ver.add_argument("--seed", type=int, default=0, help="suite seed")
    return parser


def _cmd_generate(args: argparse.Namespace) -> int:
    cfg = GeneratorConfig(
        num_states=args.states,
        num_actions=args.actions,
        gamma=args.gamma,
        seed=args.seed,
        reward_low=args.reward_low,
        reward_high=args.reward_high,
    )
    mdp = random_mdp(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / f"mdp_seed{args.seed}.json"
    save_mdp(mdp, path)
    print(path)
    return 0


def _cmd_solve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.algo == "sovi" and args.sharpness is None:
        parser.error("--algo sovi requires --N")
    mdp = load_mdp(args.mdp)
    if args.q0 is not None:
        q0 = load_q_table(args.q0)
        if q0.shape != (mdp.num_states, mdp.num_actions):
            raise ValueError(
                f"initial Q-table shape {q0.shape} does not match the MDP "
                f"({mdp.num_states}, {mdp.num_actions})"
            )
    else:
        q0 = random_q0(mdp.num_states, mdp.num_actions, args.seed)
    reference = bench.certified_optimal_values(mdp, q0)
    alg = bench.AlgorithmSpec(
        kind=args.algo, sharpness=args.sharpness if args.algo == "sovi" else None
    )
    cfg = SolverConfig(max_iters=args.iters, tolerance=args.tol, sharpness=alg.sharpness)
    trace = _solve_one(alg, mdp, q0, cfg, reference)
    args.out.mkdir(parents=True, exist_ok=True)
    bench.write_trace_csv(trace, args.out / "trace.csv")
    final_q = trace.final if trace.final.ndim == 2 else q_from_values(mdp, trace.final)
    save_q_table(final_q, args.out / "final_q.json")
    print(args.out / "trace.csv")
    print(args.out / "final_q.json")
    return 0


def _solve_one(alg, mdp, q0, cfg, reference):
    if alg.kind == "vi":
        return value_iteration(mdp, value_from_q(q0), cfg, reference_values=reference)
    if alg.kind == "qvi":
        return q_value_iteration(mdp, q0, cfg, reference_values=reference)
    return second_order_value_iteration(mdp, q0, cfg, reference_values=reference)


def _cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    algos = args.algos or ["vi"]
    entrants: list[bench.AlgorithmSpec] = []
    for kind in algos:
        if kind == "sovi":
            if not args.sharpness_values:
                parser.error("--algo sovi requires at least one --N")
            entrants.extend(
                bench.AlgorithmSpec(kind="sovi", sharpness=n)
                for n in args.sharpness_values
            )
        else:
            entrants.append(bench.AlgorithmSpec(kind=kind))
    spec = bench.ExperimentSpec(
        runs=args.runs,
        generator=GeneratorConfig(
            num_states=args.states,
            num_actions=args.actions,
            gamma=args.gamma,
            seed=args.seed,
            reward_low=args.reward_low,
            reward_high=args.reward_high,
        ),
        iters=args.iters,
        algorithms=tuple(entrants),
        base_seed=args.seed,
    )
    result = bench.run_experiment(spec)
    args.out.mkdir(parents=True, exist_ok=True)
    bench.write_curves_csv(result, args.out / "curves.csv")
    bench.write_summary_json(result, args.out / "summary.json")
    print(args.out / "curves.csv")
    print(args.out / "summary.json")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    outcomes = run_all(args.seed)
    failed = False
    for suite, violations in outcomes.items():
        if violations:
            failed = True
            print(f"{suite}: FAIL ({len(violations)} violations)")
            for message in violations[:5]:
                print(f"  {message}")
        else:
            print(f"{suite}: PASS")
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate":
        return _cmd_generate(args)
    if args.command == "solve":
        return _cmd_solve(args, parser)
    if args.command == "bench":
        return _cmd_bench(args, parser)
    return _cmd_verify(args)


def entry_point() -> None:
    try:
        sys.exit(main())
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
