"""Run single algorithms on instance files and batch them from a plan."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from ..continuous_greedy import DSCGConfig, dscg
from ..local_search import multi_pass_local_search
from ..multilinear import EstimatorConfig, Multilinear, make_multilinear
from ..objective import SubmodularFunction
from ..single_pass import SinglePassConfig, single_pass
from ..two_player import DEFAULT_H, TwoPlayerInstance, run_protocol
from .baselines import DEFAULT_CAP, brute_force_opt
from .instances import InstanceFile, build, build_objective, load_instance
from ..numerics import make_rng
from .orders import make_order

ALGORITHMS = ("single-pass", "multipass", "dscg", "two-player")
CSV_COLUMNS = [
    "index", "instance", "algorithm", "order", "seed", "config", "status", "solution",
    "value", "reference", "ratio", "max_stored", "passes", "oracle_calls",
]


class ExperimentError(ValueError):
    pass


@dataclass
class RunReport:
    algorithm: str
    config: dict
    solution: list[int]
    value: float
    reference: float | None = None
    ratio: float | None = None
    max_stored: int | None = None
    passes: int | None = None
    oracle_calls: int = 0
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        out = asdict(self)
        out["ratio_vs_reference"] = out.pop("ratio")
        if not timings:
            out.pop("elapsed_ms")
        return out


def make_oracle(f: SubmodularFunction, *, exact: bool, samples: int | None, seed: int) -> Multilinear:
    return make_multilinear(f, exact, EstimatorConfig(samples or 2000, seed))


def _finish(inst: InstanceFile, algorithm: str, config: dict, solution, *, reference: bool, cap: int, **kw) -> RunReport:
    # Re-validate against fresh objects so nothing cached inside the run leaks into the report.
    m, _ = build(inst)
    f = build_objective(inst.objective)
    solution = frozenset(solution)
    if not m.is_independent(solution):
        raise AssertionError(f"{algorithm} returned a dependent set {sorted(solution)}")
    value = f.value(solution)
    ref = ratio = None
    if reference and inst.ground_size <= cap:
        _, ref = brute_force_opt(m, f, cap)
        ratio = value / ref if ref > 0 else 1.0
    return RunReport(algorithm, config, sorted(solution), value, ref, ratio, **kw)


def run_single_pass(
    inst: InstanceFile,
    order: list[int],
    *,
    epsilon: float,
    mode: str = "monotone",
    exact_oracle: bool = False,
    samples: int | None = None,
    seed: int = 0,
    round_trials: int = 32,
    reference: bool = True,
    cap: int = DEFAULT_CAP,
) -> RunReport:
    mode = "non_monotone" if mode in ("nonmonotone", "non-monotone", "non_monotone") else mode
    m, f = build(inst)
    cfg = SinglePassConfig(epsilon, mode)
    oracle = make_oracle(f, exact=exact_oracle, samples=samples, seed=seed)
    out = single_pass(cfg, m, f, oracle, order, round_trials=round_trials, seed=seed)
    config = {"epsilon": epsilon, "mode": mode, "exact_oracle": exact_oracle, "samples": None if exact_oracle else (samples or 2000), "round_trials": round_trials}
    return _finish(
        inst, "single-pass", config, out.solution, reference=reference, cap=cap,
        max_stored=out.max_stored, passes=1, oracle_calls=out.oracle_calls, elapsed_ms=out.elapsed_ms,
    )


def run_multipass(
    inst: InstanceFile, order: list[int], *, delta: float, seed: int = 0, reference: bool = True, cap: int = DEFAULT_CAP
) -> RunReport:
    m, f = build(inst)
    t0 = time.perf_counter()
    res = multi_pass_local_search(m, f, order, delta)
    config = {"delta": delta}
    pass_values = [res.records[0].start_value] + [r.end_value for r in res.records]
    return _finish(
        inst, "multipass", config, res.solution, reference=reference, cap=cap,
        passes=res.passes, oracle_calls=f.calls, elapsed_ms=(time.perf_counter() - t0) * 1e3,
        extra={"pass_values": pass_values},
    )


def run_dscg(
    inst: InstanceFile,
    order: list[int],
    *,
    epsilon: float,
    exact_oracle: bool = False,
    samples: int | None = None,
    seed: int = 0,
    round_trials: int = 32,
    reference: bool = True,
    cap: int = DEFAULT_CAP,
) -> RunReport:
    m, f = build(inst)
    oracle = make_oracle(f, exact=exact_oracle, samples=samples, seed=seed)
    res = dscg(DSCGConfig(epsilon), m, oracle, order, round_trials=round_trials, seed=seed)
    config = {"epsilon": epsilon, "exact_oracle": exact_oracle, "samples": None if exact_oracle else (samples or 2000), "round_trials": round_trials}
    return _finish(
        inst, "dscg", config, res.solution, reference=reference, cap=cap,
        passes=res.passes, oracle_calls=res.oracle_calls, elapsed_ms=res.elapsed_ms,
        extra={"rounds": len(res.rounds), "pass_constant": res.passes * epsilon**3},
    )


def run_two_player(
    inst: InstanceFile, alice: list[int], *, h: int = DEFAULT_H, seed: int = 0, reference: bool = True, cap: int = DEFAULT_CAP
) -> RunReport:
    m, f = build(inst)
    t0 = time.perf_counter()
    msg, r = run_protocol(TwoPlayerInstance.split(m, f, alice), h)
    return _finish(
        inst, "two-player", {"h": h, "alice": sorted(alice)}, r, reference=reference, cap=cap,
        oracle_calls=f.calls, elapsed_ms=(time.perf_counter() - t0) * 1e3,
        extra={"message_size": len(msg.elements)},
    )


def random_split(ground_size: int, seed: int) -> list[int]:
    """Alice's half of a uniformly random split (each element with probability 1/2)."""
    rng = make_rng(seed)
    return [e for e in range(ground_size) if rng.random() < 0.5]


# -- plans ---------------------------------------------------------------

class PlanRun(BaseModel):
    model_config = ConfigDict(extra="forbid")
    instance: str
    algorithm: str
    order: str = "identity"
    config: dict = Field(default_factory=dict)
    seeds: list[int] = Field(default_factory=lambda: [0])


class Plan(BaseModel):
    model_config = ConfigDict(extra="forbid")
    runs: list[PlanRun] = Field(default_factory=list)
    workers: int = 1


def _execute(run: PlanRun, seed: int, base: Path) -> RunReport:
    if run.algorithm not in ALGORITHMS:
        raise ExperimentError(f"unknown algorithm {run.algorithm!r}")
    inst = load_instance(base / run.instance)
    m, f = build(inst)
    order_spec = run.order.replace("{seed}", str(seed))
    if not order_spec.startswith("random:") and (base / order_spec).exists():
        order_spec = str(base / order_spec)
    order = make_order(order_spec, f)
    cfg = dict(run.config)
    if run.algorithm == "single-pass":
        return run_single_pass(inst, order, seed=seed, **cfg)
    if run.algorithm == "multipass":
        return run_multipass(inst, order, seed=seed, **cfg)
    if run.algorithm == "dscg":
        return run_dscg(inst, order, seed=seed, **cfg)
    alice = cfg.pop("alice", None)
    if alice is None:
        alice = random_split(inst.ground_size, seed)
    return run_two_player(inst, list(alice), seed=seed, **cfg)


def _row(index: int, run: PlanRun, seed: int, report: RunReport | None, error: str | None) -> dict:
    row = {
        "index": index, "instance": run.instance, "algorithm": run.algorithm, "order": run.order,
        "seed": seed, "config": json.dumps(run.config, sort_keys=True),
    }
    if report is None:
        row.update(status=f"error: {error}")
        return row
    row.update(
        status="ok",
        solution=" ".join(map(str, report.solution)),
        value=repr(report.value),
        reference="" if report.reference is None else repr(report.reference),
        ratio="" if report.ratio is None else repr(report.ratio),
        max_stored="" if report.max_stored is None else report.max_stored,
        passes="" if report.passes is None else report.passes,
        oracle_calls=report.oracle_calls,
        elapsed_ms=f"{report.elapsed_ms:.3f}",
    )
    return row


def run_experiment(plan: Plan | str | Path, *, base_dir: str | Path | None = None, timings: bool = False) -> list[dict]:
    """One row per (run, seed), ordered by plan index; errors are captured per row."""
    if not isinstance(plan, Plan):
        path = Path(plan)
        base_dir = base_dir or path.parent
        plan = Plan.model_validate_json(path.read_text())
    base = Path(base_dir or ".")
    jobs = [(run, seed) for run in plan.runs for seed in run.seeds]

    def work(job):
        run, seed = job
        try:
            return _execute(run, seed, base), None
        except Exception as exc:  # recorded in the row; the batch continues
            return None, f"{type(exc).__name__}: {exc}"

    with ThreadPoolExecutor(max_workers=max(1, plan.workers)) as pool:
        results = list(pool.map(work, jobs))  # map preserves plan order
    rows = [_row(k, run, seed, *res) for k, ((run, seed), res) in enumerate(zip(jobs, results))]
    if not timings:
        for r in rows:
            r.pop("elapsed_ms", None)
    return rows


def report_csv(rows: list[dict], timings: bool = False) -> str:
    cols = CSV_COLUMNS + (["elapsed_ms"] if timings else [])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", restval="")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def report_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=1, sort_keys=True)

