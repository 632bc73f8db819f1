"""Command-line entry point: ``submodstream gen|run|bench|verify``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .acceptance import run_suite
from .experiment import (
    random_split,
    report_csv,
    report_json,
    run_dscg,
    run_experiment,
    run_multipass,
    run_single_pass,
    run_two_player,
)
from .generators import coverage_instance, cut_instance, hardness_instance
from .instances import build, load_instance, save_instance
from .orders import make_order

logger = logging.getLogger("submodstream")

# every input-validation error in the package derives from ValueError
INPUT_ERRORS = (ValueError, OSError)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_gen(args) -> int:
    if args.kind == "coverage":
        inst = coverage_instance(
            args.seed, ground_size=args.ground, universe=args.universe, density=args.density,
            n_blocks=args.blocks, max_rank=args.rank, matroid=args.matroid,
        )
    elif args.kind == "cut":
        inst = cut_instance(args.seed, n_vertices=args.ground, density=args.density, k=args.rank, matroid=args.matroid)
    else:
        inst = hardness_instance(args.p, args.n, args.graphs.split(","), args.seed, eps=args.eps)
    if args.output:
        save_instance(inst, args.output)
    else:
        print(inst.to_json())
    return 0


def _load(args):
    inst = load_instance(args.instance)
    _, f = build(inst)
    return inst, f


def cmd_run(args) -> int:
    inst, f = _load(args)
    common = {"seed": args.seed, "reference": not args.no_reference}
    if args.algorithm == "two-player":
        if args.split:
            data = json.loads(Path(args.split).read_text())
            alice = data["alice"] if isinstance(data, dict) else data
        else:
            alice = random_split(inst.ground_size, args.seed)
        report = run_two_player(inst, [int(e) for e in alice], h=args.h, **common)
    else:
        order = make_order(args.order, f)
        if args.algorithm == "single-pass":
            report = run_single_pass(
                inst, order, epsilon=args.epsilon, mode=args.mode, exact_oracle=args.exact_oracle,
                samples=args.samples, round_trials=args.round_trials, **common,
            )
        elif args.algorithm == "multipass":
            report = run_multipass(inst, order, delta=args.delta, **common)
        else:
            report = run_dscg(
                inst, order, epsilon=args.epsilon, exact_oracle=args.exact_oracle,
                samples=args.samples, round_trials=args.round_trials, **common,
            )
    _emit(json.dumps(report.to_dict(), indent=1, sort_keys=True), args.output)
    return 0


def cmd_bench(args) -> int:
    rows = run_experiment(args.plan, timings=args.timings)
    text = report_json(rows) if args.json else report_csv(rows, timings=args.timings)
    _emit(text.rstrip("\n"), args.output)
    failed = sum(1 for r in rows if r["status"] != "ok")
    if failed:
        logger.warning("%d of %d runs failed; see the status column", failed, len(rows))
    return 0


def cmd_verify(args) -> int:
    numbers = [int(k) for k in args.only.split(",")] if args.only else None
    results = list(run_suite(numbers, log=print))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed" + (f"; failed: {failed}" if failed else ""))
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="submodstream", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a random instance file")
    gen.add_argument("kind", choices=["coverage", "cut", "hardness"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--ground", type=int, default=12, help="elements (coverage) or vertices (cut)")
    gen.add_argument("--universe", type=int, default=20)
    gen.add_argument("--density", type=float, default=0.25)
    gen.add_argument("--blocks", type=int, default=3)
    gen.add_argument("--rank", type=int, default=4)
    gen.add_argument("--matroid", choices=["partition", "uniform", "graphic"], default="partition")
    gen.add_argument("--p", type=int, default=2)
    gen.add_argument("--n", type=int, default=3)
    gen.add_argument("--graphs", default="path:3", help="comma-separated graph specs, one per layer or one for all")
    gen.add_argument("--eps", type=float, default=0.1)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    run = sub.add_parser("run", help="run one algorithm on an instance file")
    run.add_argument("algorithm", choices=["single-pass", "multipass", "dscg", "two-player"])
    run.add_argument("--instance", required=True)
    run.add_argument("--order", default="identity",
                     help="JSON file, random:SEED, adversarial-id-descending, by-singleton-value-descending")
    run.add_argument("--epsilon", type=float, default=0.1)
    run.add_argument("--mode", choices=["monotone", "nonmonotone", "non_monotone"], default="monotone")
    oracle = run.add_mutually_exclusive_group()
    oracle.add_argument("--samples", type=int, default=None)
    oracle.add_argument("--exact-oracle", action="store_true")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--round-trials", type=int, default=32)
    run.add_argument("--delta", type=float, default=0.1)
    run.add_argument("--split", help="JSON file listing Alice's element ids")
    run.add_argument("--h", type=int, default=125)
    run.add_argument("--no-reference", action="store_true", help="skip the brute-force optimum")
    run.add_argument("-o", "--output")
    run.set_defaults(func=cmd_run)

    bench = sub.add_parser("bench", help="run an experiment plan")
    bench.add_argument("--plan", required=True)
    bench.add_argument("-o", "--output")
    bench.add_argument("--json", action="store_true", help="JSON rows instead of CSV")
    bench.add_argument("--timings", action="store_true", help="add wall-clock times (breaks byte-identical reports)")
    bench.set_defaults(func=cmd_bench)

    verify = sub.add_parser("verify", help="run the acceptance suite")
    verify.add_argument("--only", help="comma-separated criterion numbers")
    verify.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
