"""Desk-scale acceptance suite.

Every criterion compares an algorithm against an independent reference: the
exhaustive optimum, the closed-form multilinear extension of coverage
functions, or brute-force enumeration of small matroids.  ``run_suite`` yields
one :class:`CriterionResult` per criterion; the CLI ``verify`` command and the
test suite both consume it.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..continuous_greedy import DSCGConfig, dscg
from ..hardness import Layer, LayeredFunction, make_layered, max_bipartite_matching, parse_graph_spec, verify_family_properties
from ..local_search import (
    LocalSearchFailure,
    greedy_base,
    local_search_pass,
    multi_pass_local_search,
    prop_single_pass_gap,
)
from ..matroid import GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid, iter_bases
from ..multilinear import EstimatorConfig, ExactCoverage, MonteCarlo
from ..numerics import make_rng
from ..objective import CoverageFunction, SubmodularFunction, check_submodular
from ..rounding import ConvexCombination, swap_round
from ..single_pass import SinglePassConfig, memory_bound, single_pass
from ..two_player import TwoPlayerInstance, message_bound, run_protocol
from .baselines import brute_force_opt
from .experiment import random_split
from .generators import coverage_instance, cut_instance
from .instances import InstanceFile, build
from .orders import make_order

ONE_MINUS_INV_E = 1.0 - 1.0 / math.e


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.number:>2} {self.title}: {self.detail} ({self.seconds:.1f}s)"


@dataclass
class Case:
    inst: InstanceFile
    matroid: Matroid
    f: SubmodularFunction
    opt: frozenset[int]
    opt_value: float


def make_case(inst: InstanceFile) -> Case:
    m, f = build(inst)
    opt, val = brute_force_opt(m, f)
    return Case(inst, m, f, opt, val)


def mono_instance(seed: int, max_ground: int = 16) -> InstanceFile:
    """Coverage objective over a partition matroid; ground 8..max_ground, rank <= 5."""
    return coverage_instance(
        seed,
        ground_size=8 + seed % (max_ground - 7),
        universe=20 + seed % 11,
        density=0.2,
        n_blocks=2 + seed % 3,
        max_rank=2 + seed % 4,
    )


def extend_to_base(m: Matroid, s) -> frozenset[int]:
    out = list(s)
    for e in range(m.ground_size):
        if e not in out and m.is_independent(out + [e]):
            out.append(e)
    return frozenset(out)


def random_base(m: Matroid, rng) -> frozenset[int]:
    return greedy_base(m, (int(e) for e in rng.permutation(m.ground_size)))


def coverage_F_batch(f: CoverageFunction, y: np.ndarray) -> np.ndarray:
    """Closed-form multilinear extension at each row of ``y``."""
    miss = np.ones((len(y), f.incidence.shape[1]))
    for e in range(f.ground_size):
        miss *= np.where(f.incidence[e][None, :], (1.0 - y[:, e])[:, None], 1.0)
    return (1.0 - miss) @ f.weights


def surrogate_opt_gain(m: Matroid, f: CoverageFunction, x: np.ndarray, step: float) -> float:
    """max over bases B of F(x + step 1_B) - F(x), by enumeration."""
    bases = list(iter_bases(m))
    y = np.repeat(x[None, :], len(bases), axis=0)
    for r, b in enumerate(bases):
        y[r, list(b)] = np.minimum(1.0, y[r, list(b)] + step)
    return float(coverage_F_batch(f, y).max() - coverage_F_batch(f, x[None, :])[0])


def _tol(scale: float) -> float:
    return 1e-9 * max(1.0, abs(scale))


class AcceptanceSuite:
    """Lazily shared run sets; criteria reuse each other's runs where stated."""

    def __init__(self, log: Callable[[str], None] | None = None):
        self.log = log or (lambda msg: None)

    # -- shared run sets -------------------------------------------------
    @cached_property
    def single_pass_runs(self) -> list[dict]:
        cfg = SinglePassConfig(0.05)
        runs = []
        for seed in range(200):
            case = make_case(mono_instance(seed))
            for spec in (f"random:{seed}", "adversarial-id-descending", "by-singleton-value-descending"):
                order = make_order(spec, case.f)
                row = {"seed": seed, "order": spec, "opt": case.opt_value, "rank": case.matroid.rank_total, "cfg": cfg}
                try:
                    out = single_pass(cfg, case.matroid, case.f, ExactCoverage(case.f), order, seed=seed)
                    row.update(value=case.f.value(out.solution), max_stored=out.max_stored,
                               independent=case.matroid.is_independent(out.solution))
                except Exception as exc:
                    row.update(error=f"{type(exc).__name__}: {exc}")
                runs.append(row)
        return runs

    @cached_property
    def non_monotone_runs(self) -> list[dict]:
        cfg = SinglePassConfig(0.05, "non_monotone")
        runs = []
        for seed in range(100):
            inst = cut_instance(
                seed, n_vertices=6 + seed % 7, density=0.4, k=2 + seed % 4,
                matroid="uniform" if seed % 2 == 0 else "partition",
            )
            case = make_case(inst)
            order = make_order(f"random:{seed}", case.f)
            row = {"seed": seed, "opt": case.opt_value, "rank": case.matroid.rank_total, "cfg": cfg}
            try:
                oracle = MonteCarlo(case.f, EstimatorConfig(20000, seed))
                out = single_pass(cfg, case.matroid, case.f, oracle, order, round_trials=64, seed=seed)
                row.update(value=case.f.value(out.solution), max_stored=out.max_stored,
                           independent=case.matroid.is_independent(out.solution))
            except Exception as exc:
                row.update(error=f"{type(exc).__name__}: {exc}")
            runs.append(row)
        return runs

    @cached_property
    def dscg_runs(self) -> list[dict]:
        cfg = DSCGConfig(0.2)
        runs = []
        for seed in range(100):
            case = make_case(mono_instance(seed))
            order = make_order(f"random:{seed}", case.f)
            row = {"seed": seed, "case": case}
            try:
                row["result"] = dscg(cfg, case.matroid, ExactCoverage(case.f), order, round_trials=64, seed=seed)
            except Exception as exc:
                row["error"] = f"{type(exc).__name__}: {exc}"
            runs.append(row)
        return runs

    # -- criteria --------------------------------------------------------
    def c1(self) -> CriterionResult:
        bound = 1.0 / (SinglePassConfig(0.05).alpha + 2.0) - 0.05 - 1e-9
        bad, worst = [], math.inf
        for r in self.single_pass_runs:
            if "error" in r or not r["independent"]:
                bad.append(f"seed {r['seed']} {r['order']}: {r.get('error', 'dependent output')}")
                continue
            ratio = r["value"] / r["opt"] if r["opt"] > 0 else 1.0
            worst = min(worst, ratio)
            if ratio < bound:
                bad.append(f"seed {r['seed']} {r['order']}: ratio {ratio:.4f}")
        n = len(self.single_pass_runs)
        return CriterionResult(1, "single-pass monotone ratio", not bad,
                               f"{n - len(bad)}/{n} runs >= {bound:.4f}, worst {worst:.4f}",
                               {"worst_ratio": worst, "bound": bound, "failures": bad[:10]})

    def c2(self) -> CriterionResult:
        soft, hard = 0.1921 - 0.05 - 0.02, 0.10
        ratios, errors = [], []
        for r in self.non_monotone_runs:
            if "error" in r or not r["independent"]:
                errors.append(f"seed {r['seed']}: {r.get('error', 'dependent output')}")
                continue
            ratios.append(r["value"] / r["opt"] if r["opt"] > 0 else 1.0)
        n = len(self.non_monotone_runs)
        frac = sum(x >= soft for x in ratios) / n
        ok = not errors and frac >= 0.95 and all(x >= hard for x in ratios)
        worst = min(ratios, default=math.nan)
        return CriterionResult(2, "single-pass non-monotone ratio", ok,
                               f"{frac:.0%} of {n} runs >= {soft:.4f}, worst {worst:.4f} (floor {hard})",
                               {"fraction": frac, "worst_ratio": worst, "errors": errors[:10]})

    def c3(self) -> CriterionResult:
        eps = 0.2
        bound = ONE_MINUS_INV_E - eps - 0.02
        bad, worst, consts = [], math.inf, []
        for r in self.dscg_runs:
            if "error" in r:
                bad.append(f"seed {r['seed']}: {r['error']}")
                continue
            res, case = r["result"], r["case"]
            if not case.matroid.is_independent(res.solution):
                bad.append(f"seed {r['seed']}: dependent output")
            ratio = res.value / case.opt_value if case.opt_value > 0 else 1.0
            worst = min(worst, ratio)
            consts.append(res.passes * eps**3)
            if ratio < bound:
                bad.append(f"seed {r['seed']}: ratio {ratio:.4f}")
        c_max = max(consts, default=math.nan)
        return CriterionResult(3, "multi-pass continuous greedy ratio", not bad,
                               f"worst {worst:.4f} >= {bound:.4f}; passes <= C/eps^3 with C = {c_max:.3f}",
                               {"worst_ratio": worst, "pass_constant": c_max, "failures": bad[:10]})

    def c4(self) -> CriterionResult:
        eps = 0.2
        bad, checked, slack = [], 0, math.inf
        for r in self.dscg_runs:
            if "error" in r:
                bad.append(f"seed {r['seed']}: {r['error']}")
                continue
            case = r["case"]
            exact = ExactCoverage(case.f)
            for k, rd in enumerate(r["result"].rounds):
                fx, fx2 = exact.F(rd.x_before), exact.F(rd.x_after)
                gap = (fx2 - fx) - eps * ((1 - 3 * eps) * case.opt_value - fx2)
                slack = min(slack, gap)
                checked += 1
                if gap < -_tol(case.opt_value):
                    bad.append(f"seed {r['seed']} round {k}: short by {-gap:.3g}")
        return CriterionResult(4, "per-round progress of the direction step", not bad,
                               f"{checked} rounds checked, min slack {slack:.4g}", {"violations": bad[:10]})

    def c5(self) -> CriterionResult:
        bad, checked, peak = [], 0, 0.0
        for r in self.single_pass_runs + self.non_monotone_runs:
            if "max_stored" not in r:
                bad.append(f"seed {r['seed']}: {r.get('error')}")
                continue
            b = memory_bound(r["cfg"], r["rank"])
            peak = max(peak, r["max_stored"] / b)
            checked += 1
            if r["max_stored"] > b:
                bad.append(f"seed {r['seed']}: stored {r['max_stored']} > {b}")
        return CriterionResult(5, "single-pass memory bound", not bad,
                               f"{checked} runs, peak at {peak:.1%} of (L+3)*rank + L", {"violations": bad[:10]})

    @cached_property
    def standalone_cases(self) -> list[Case]:
        return [make_case(mono_instance(1000 + k)) for k in range(50)]

    def c6(self) -> CriterionResult:
        bad, checked, slack = [], 0, math.inf
        # passes inside the continuous greedy runs, comparison base = OPT extended to a base
        for r in self.dscg_runs:
            if "error" in r:
                bad.append(f"seed {r['seed']}: {r['error']}")
                continue
            case = r["case"]
            b = extend_to_base(case.matroid, case.opt)
            for rd in r["result"].rounds:
                for rec in rd.search.records:
                    gap = prop_single_pass_gap(rd.surrogate, rec, b)
                    slack = min(slack, gap)
                    checked += 1
                    if gap < -_tol(case.opt_value):
                        bad.append(f"dscg seed {r['seed']}: gap {gap:.3g}")
        # standalone passes from random starting bases
        rng = make_rng(6)
        for j in range(500):
            case = self.standalone_cases[j % len(self.standalone_cases)]
            m, f = case.matroid, case.f
            s0 = random_base(m, rng)
            c = 2.0 if j % 2 == 0 else 1.1
            order = [int(e) for e in rng.permutation(m.ground_size)]
            rec = local_search_pass(m, f, s0, c, order)
            for b in [extend_to_base(m, case.opt)] + [random_base(m, rng) for _ in range(20)]:
                gap = prop_single_pass_gap(f, rec, b)
                slack = min(slack, gap)
                checked += 1
                if gap < -_tol(case.opt_value):
                    bad.append(f"standalone pass {j}: gap {gap:.3g}")
        return CriterionResult(6, "single local-search pass progress inequality", not bad,
                               f"{checked} (pass, base) pairs, min slack {slack:.4g}", {"violations": bad[:10]})

    def c7(self) -> CriterionResult:
        bad, checked, worst = [], 0, math.inf
        for r in self.dscg_runs:
            if "error" in r:
                bad.append(f"seed {r['seed']}: {r['error']}")
                continue
            case = r["case"]
            for rd in r["result"].rounds:
                g = rd.surrogate
                opt_gain = surrogate_opt_gain(case.matroid, case.f, rd.x_before, g.step)
                gain = rd.search.value - g.value(())
                checked += 1
                if opt_gain > 0:
                    worst = min(worst, gain / opt_gain)
                if gain < opt_gain / 5 - _tol(opt_gain):
                    bad.append(f"dscg seed {r['seed']}: gain {gain:.4g} < {opt_gain / 5:.4g}")
        rng = make_rng(7)
        for k, case in enumerate(self.standalone_cases):
            order = [int(e) for e in rng.permutation(case.matroid.ground_size)]
            try:
                res = multi_pass_local_search(case.matroid, case.f, order, 0.1)
            except LocalSearchFailure as exc:
                bad.append(f"standalone {k}: {exc}")
                continue
            opt_gain = case.opt_value - case.f.value(())
            gain = res.value - case.f.value(())
            checked += 1
            if opt_gain > 0:
                worst = min(worst, gain / opt_gain)
            if gain < opt_gain / 5 - _tol(opt_gain):
                bad.append(f"standalone {k}: gain {gain:.4g} < {opt_gain / 5:.4g}")
        return CriterionResult(7, "multi-pass search never fails, keeps 1/5 of OPT", not bad,
                               f"{checked} runs, worst gain ratio {worst:.4f}", {"violations": bad[:10]})

    def c8(self) -> CriterionResult:
        h = 125
        bad, worst, biggest = [], math.inf, 0.0
        for k in range(50):
            seed = 2000 + k
            case = make_case(mono_instance(seed, max_ground=14))
            alice = random_split(case.matroid.ground_size, seed)
            try:
                msg, r = run_protocol(TwoPlayerInstance.split(case.matroid, case.f, alice), h)
            except Exception as exc:
                bad.append(f"seed {seed}: {type(exc).__name__}: {exc}")
                continue
            ratio = case.f.value(r) / case.opt_value if case.opt_value > 0 else 1.0
            worst = min(worst, ratio)
            size_bound = message_bound(h, case.matroid.rank_total)
            biggest = max(biggest, len(msg.elements) / size_bound)
            if ratio < 0.505 - 1e-9 or len(msg.elements) > size_bound or not case.matroid.is_independent(r):
                bad.append(f"seed {seed}: ratio {ratio:.4f}, message {len(msg.elements)}/{size_bound}")
        return CriterionResult(8, "two-player protocol", not bad,
                               f"worst ratio {worst:.4f} >= 0.505, largest message {biggest:.1%} of (h+2)*rank",
                               {"worst_ratio": worst, "failures": bad[:10]})

    def c9(self) -> CriterionResult:
        trials = 10_000
        bad, worst_z = [], 0.0
        for k in range(20):
            case = make_case(mono_instance(3000 + k, max_ground=10))
            m, f = case.matroid, case.f
            rng = make_rng(3000 + k)
            count = 2 + k % 3
            sets = [random_base(m, rng) for _ in range(count)]
            if k % 4 == 3:  # include a non-base independent set
                sets[-1] = frozenset(list(sets[-1])[:-1])
            w = rng.dirichlet(np.ones(count)) * (1.0 if k % 2 == 0 else 0.8)
            comb = ConvexCombination(zip(sets, w))
            x = comb.point().dense(m.ground_size)
            exact = ExactCoverage(f).F(x)
            hits = np.zeros((trials, m.ground_size), dtype=bool)
            for t in range(trials):
                hits[t, list(swap_round(m, comb, rng=rng))] = True
            vals = f.value_batch(hits)
            se = vals.std(ddof=1) / math.sqrt(trials)
            if vals.mean() < exact - 3 * se:
                bad.append(f"combination {k}: mean {vals.mean():.5f} < F {exact:.5f} - 3 SE")
            freq = hits.mean(axis=0)
            se_e = np.sqrt(freq * (1 - freq) / trials)
            dev = np.abs(freq - x)
            over = dev > 3 * se_e + 1e-12
            if over.any():
                bad.append(f"combination {k}: marginals of {np.flatnonzero(over).tolist()} off by more than 3 SE")
            with np.errstate(divide="ignore", invalid="ignore"):
                z = np.where(se_e > 0, dev / se_e, 0.0)
            worst_z = max(worst_z, float(z.max()))
        return CriterionResult(9, "swap rounding is lossless in expectation", not bad,
                               f"20 combinations x {trials} trials, largest marginal z-score {worst_z:.2f}",
                               {"failures": bad})

    def c10(self) -> CriterionResult:
        points = []
        for k in range(20):
            _, f = build(mono_instance(4000 + k, max_ground=12))
            rng = make_rng(4000 + k)
            x = rng.random(f.ground_size) * (rng.random(f.ground_size) < 0.8)
            points.append((f, x, ExactCoverage(f).F(x)))
        inside = total = 0
        for f, x, exact in points:
            for seed in range(100):
                est, se = MonteCarlo(f, EstimatorConfig(10_000, seed)).F_with_stderr(x)
                inside += abs(est - exact) <= 3 * se
                total += 1
        frac = inside / total
        counts = [100, 400, 1600, 6400]
        rms = []
        for n in counts:
            errs = [MonteCarlo(f, EstimatorConfig(n, 10_000 + seed)).F(x) - exact
                    for f, x, exact in points for seed in range(30)]
            rms.append(math.sqrt(np.mean(np.square(errs))))
        slope = float(np.polyfit(np.log(counts), np.log(rms), 1)[0])
        ok = frac >= 0.99 and abs(slope + 0.5) <= 0.15
        return CriterionResult(10, "Monte-Carlo estimator accuracy", ok,
                               f"{frac:.2%} of {total} estimates within 3 SE; log-log error slope {slope:.3f}",
                               {"fraction": frac, "slope": slope, "rms": rms})

    def c11(self) -> CriterionResult:
        bad, checks, exhaustive = [], 0, 0
        graphs = ["path:5", "complete:2:3", "star:3"]
        for p in (1, 2, 3):
            for n in (2, 3):
                for g_idx, spec in enumerate(graphs):
                    for alpha in (0.5, 0.9):
                        fn = make_layered([parse_graph_spec(spec)] * p, n, eps=0.1, seed=100 * p + 10 * n + g_idx)
                        rep = verify_family_properties(fn, alpha=alpha, eps=0.1, trials=10_000, seed=p * n)
                        checks += 1
                        if not rep.ok:
                            bad.append(f"p={p} n={n} {spec} alpha={alpha}: {rep.violations[:2]}")
            # exact yes case with matching bounds equal to the true matching sizes
            edges = parse_graph_spec("path:4")
            exact_fn = LayeredFunction([Layer(tuple(edges), max_bipartite_matching(edges), 1)] * p, 2)
            matched = [exact_fn.element(i, k, 1) for i in range(p) for k in (0, 2)]
            if abs(exact_fn.value(matched) - p) > 1e-12:
                bad.append(f"p={p}: exact yes case gives {exact_fn.value(matched)}")
        # exhaustive monotonicity and submodularity on <= 10 elements
        small = [
            (1, 2, ["path:5"]), (2, 2, ["path:2", "star:2"]), (3, 3, ["matching:1"]),
            (2, 3, ["matching:1", "path:2"]), (3, 2, ["matching:1", "star:2", "matching:1"]),
        ]
        for p, n, specs in small:
            for seed in range(4):
                fn = make_layered([parse_graph_spec(s) for s in specs], n, seed=seed)
                if fn.ground_size > 10:
                    raise AssertionError("exhaustive instance larger than 10 elements")
                problems = check_submodular(fn)
                exhaustive += 1
                if problems:
                    bad.append(f"p={p} n={n} {specs}: {problems[:2]}")
        return CriterionResult(11, "layered hard family properties", not bad,
                               f"{checks} generated instances, {exhaustive} exhaustive submodularity checks",
                               {"violations": bad[:10]})

    def c12(self) -> CriterionResult:
        rng = make_rng(12)
        bad, checked = [], 0
        for kind in ("uniform", "partition", "graphic"):
            for k in range(50):
                m = _random_matroid(kind, rng)
                problems = matroid_axiom_violations(m, rng)
                checked += 1
                if problems:
                    bad.append(f"{kind} #{k}: {problems[:2]}")
        return CriterionResult(12, "matroid axioms and oracle consistency", not bad,
                               f"{checked} random matroids checked exhaustively", {"violations": bad[:10]})

    CRITERIA = ("c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10", "c11", "c12")

    def run(self, number: int) -> CriterionResult:
        t0 = time.perf_counter()
        try:
            res = getattr(self, f"c{number}")()
        except Exception as exc:
            res = CriterionResult(number, f"criterion {number}", False, f"crashed: {type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - t0
        self.log(res.line())
        return res


def _random_matroid(kind: str, rng) -> Matroid:
    n = int(rng.integers(6, 9))
    if kind == "uniform":
        return UniformMatroid(n, int(rng.integers(1, n + 1)))
    if kind == "partition":
        n_blocks = int(rng.integers(1, 5))
        return PartitionMatroid([int(b) for b in rng.integers(0, n_blocks, size=n)],
                                [int(c) for c in rng.integers(1, 4, size=n_blocks)])
    v = int(rng.integers(3, 6))
    edges = []
    while len(edges) < n:
        a, b = (int(t) for t in rng.choice(v, size=2, replace=False))
        edges.append((a, b))
    return GraphicMatroid(v, edges)


def matroid_axiom_violations(m: Matroid, rng=None, exchange_samples: int = 150) -> list[str]:
    """Exhaustive independence axioms plus rank, circuit and exchange cross-checks."""
    n = m.ground_size
    full = 1 << n
    members = [frozenset(e for e in range(n) if mask >> e & 1) for mask in range(full)]
    indep = np.array([m.is_independent(s) for s in members])
    size = np.array([len(s) for s in members])
    problems = []
    if not indep[0]:
        problems.append("empty set is dependent")
    for mask in range(full):
        if indep[mask]:
            for e in range(n):
                if mask >> e & 1 and not indep[mask & ~(1 << e)]:
                    problems.append(f"not downward closed at {sorted(members[mask])}")
    # augmentation: |A| < |B| independent => some e in B - A with A + e independent
    ext = np.zeros(full, dtype=np.int64)
    for mask in range(full):
        for e in range(n):
            if not mask >> e & 1 and indep[mask | 1 << e]:
                ext[mask] |= 1 << e
    ind_masks = np.flatnonzero(indep)
    a, b = np.meshgrid(ind_masks, ind_masks, indexing="ij")
    need = size[a] < size[b]
    fails = need & ((ext[a] & b) == 0)
    if fails.any():
        i, j = np.argwhere(fails)[0]
        problems.append(f"augmentation fails for {sorted(members[a[i, j]])}, {sorted(members[b[i, j]])}")
    # rank against the largest independent subset
    best = np.zeros(full, dtype=np.int64)
    for mask in range(full):
        sub = mask
        r = 0
        while True:
            if indep[sub]:
                r = max(r, size[sub])
            if sub == 0:
                break
            sub = (sub - 1) & mask
        best[mask] = r
    for mask in range(0, full, max(1, full // 64)):
        if m.rank(members[mask]) != best[mask]:
            problems.append(f"rank mismatch at {sorted(members[mask])}")
    if m.rank_total != best[full - 1]:
        problems.append("rank_total mismatch")
    # circuits against the unique minimal dependent subset
    rng = rng if rng is not None else make_rng(0)
    pairs = [(mask, e) for mask in ind_masks for e in range(n) if not mask >> e & 1 and not indep[mask | 1 << e]]
    for idx in rng.permutation(len(pairs))[:exchange_samples]:
        mask, e = pairs[idx]
        su = int(mask) | 1 << e
        minimal = []
        sub = su
        while sub:
            if not indep[sub] and all(indep[sub & ~(1 << w)] for w in range(n) if sub >> w & 1):
                minimal.append(sub)
            sub = (sub - 1) & su
        circuit = m.circuit_of(members[mask], e)
        if len(minimal) != 1 or sum(1 << w for w in circuit) != minimal[0]:
            problems.append(f"circuit of {sorted(members[mask])} + {e} disagrees with enumeration")
    # strong basis exchange between sampled pairs of bases
    bases = [members[k] for k in ind_masks if size[k] == best[full - 1]]
    for _ in range(min(exchange_samples, len(bases) ** 2)):
        b1 = bases[int(rng.integers(len(bases)))]
        b2 = bases[int(rng.integers(len(bases)))]
        for u in sorted(b1 - b2):
            v = m.basis_exchange(b1, b2, u)
            if not (m.is_independent(b1 - {u} | {v}) and m.is_independent(b2 - {v} | {u})):
                problems.append(f"exchange {u} -> {v} invalid")
    return problems


def run_suite(numbers=None, log: Callable[[str], None] | None = None) -> Iterator[CriterionResult]:
    suite = AcceptanceSuite(log)
    for k in numbers or range(1, 13):
        yield suite.run(k)
