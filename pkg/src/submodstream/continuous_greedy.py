"""Continuous greedy with a streaming direction-finding step, and the discretised
greedy used by the two-player protocol.

``dscg`` runs ``floor(1/eps)`` rounds.  In each round the surrogate
``g(S) = F(x + eps * 1_S)`` is handed to the multi-pass local search, whose base
``D`` moves the point to ``x + eps * 1_D``.  The point is kept as the list of
bases so the final rounding has an explicit decomposition.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .local_search import MultiPassResult, multi_pass_local_search
from .matroid import Matroid
from .multilinear import Multilinear
from .numerics import TAU_CMP
from .objective import SubmodularFunction
from .rounding import ConvexCombination, round_best_of


class GreedyConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DSCGConfig:
    epsilon: float

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0 - 1.0 / math.e):
            raise GreedyConfigError(f"epsilon must lie in (0, 1 - 1/e), got {self.epsilon}")

    @property
    def delta(self) -> float:
        return 3.0 * self.epsilon / 25.0

    @property
    def rounds(self) -> int:
        # Guard against 1/eps landing just under an integer in floating point.
        return int(math.floor(1.0 / self.epsilon + 1e-12))


class Surrogate(SubmodularFunction):
    """g(S) = F(x + step * 1_S) for a fixed base point x."""

    is_monotone = True

    def __init__(self, oracle: Multilinear, x: np.ndarray, step: float):
        super().__init__(oracle.f.ground_size)
        if np.any(x + step > 1.0 + 1e-12):
            raise GreedyConfigError("x + step * 1_S would leave the unit cube")
        self.oracle = oracle
        self.x = np.array(x, dtype=float)  # private copy; callers keep moving their point
        self.step = step
        self.is_monotone = oracle.f.is_monotone

    def _value(self, s):
        y = self.x.copy()
        for e in s:
            y[e] = min(1.0, y[e] + self.step)
        return self.oracle.F(y)


def acg_procedure(
    x: np.ndarray,
    epsilon: float,
    matroid: Matroid,
    oracle: Multilinear,
    stream: Sequence[int] | Callable[[], Iterable[int]],
    *,
    x_weight: float | None = None,
) -> tuple[frozenset[int], MultiPassResult, Surrogate]:
    """Direction-finding step: local search on the surrogate with delta = 3 eps / 25.

    ``x_weight`` is the total weight of the decomposition of ``x`` into independent
    sets; membership in (1 - eps) P_M is checked through it.
    """
    if x_weight is not None and x_weight > 1.0 - epsilon + TAU_CMP:
        raise GreedyConfigError(f"x has decomposition weight {x_weight} > 1 - eps")
    if np.any(x > 1.0 - epsilon + TAU_CMP):
        raise GreedyConfigError("x has a coordinate above 1 - eps")
    g = Surrogate(oracle, x, epsilon)
    result = multi_pass_local_search(matroid, g, stream, 3.0 * epsilon / 25.0)
    if not matroid.is_base(result.solution):
        raise AssertionError("procedure returned a non-base")
    return result.solution, result, g


@dataclass
class RoundRecord:
    x_before: np.ndarray
    base: frozenset[int]
    x_after: np.ndarray
    search: MultiPassResult
    surrogate: Surrogate


@dataclass
class DSCGResult:
    solution: frozenset[int]
    value: float
    bases: list[frozenset[int]]
    passes: int
    rounds: list[RoundRecord] = field(default_factory=list)
    oracle_calls: int = 0
    elapsed_ms: float = 0.0


def dscg(
    cfg: DSCGConfig,
    matroid: Matroid,
    oracle: Multilinear,
    stream: Sequence[int] | Callable[[], Iterable[int]],
    *,
    round_trials: int = 32,
    seed: int = 0,
) -> DSCGResult:
    f = oracle.f
    if not f.is_monotone:
        raise GreedyConfigError("the multi-pass algorithm needs a monotone objective")
    t0 = time.perf_counter()
    calls0 = f.calls
    eps = cfg.epsilon
    x = np.zeros(f.ground_size)
    bases: list[frozenset[int]] = []
    records: list[RoundRecord] = []
    passes = 0
    for t in range(cfg.rounds):
        before = x.copy()
        base, search, g = acg_procedure(x, eps, matroid, oracle, stream, x_weight=t * eps)
        passes += search.passes
        for e in base:
            x[e] += eps
        bases.append(base)
        records.append(RoundRecord(before, base, x.copy(), search, g))
        if np.any(x > (t + 1) * eps + TAU_CMP):
            raise AssertionError("point outgrew its decomposition")
    comb = ConvexCombination((b, eps) for b in bases)
    solution = round_best_of(matroid, comb, f, trials=round_trials, seed=seed)
    return DSCGResult(
        solution=solution,
        value=f.value(solution),
        bases=bases,
        passes=passes,
        rounds=records,
        oracle_calls=f.calls - calls0,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def discretized_continuous_greedy(
    matroid: Matroid,
    subset: Iterable[int],
    h: int,
    oracle: Multilinear,
) -> list[frozenset[int]]:
    """h greedy steps of size 1/h, each building a maximal independent C_i within ``subset``.

    Inside a step the next element maximises F(x + (1/h) 1_{C_i + e}); ties go to
    the smallest id.
    """
    if h < 1:
        raise GreedyConfigError("h must be >= 1")
    elems = sorted(set(subset))
    target_rank = matroid.rank(elems)
    n = oracle.f.ground_size
    x = np.zeros(n)
    steps: list[frozenset[int]] = []
    for _ in range(h):
        chosen: list[int] = []
        y = x.copy()
        while len(chosen) < target_rank:
            best, best_val = None, -math.inf
            for e in elems:
                if e in chosen or not matroid.is_independent(chosen + [e]):
                    continue
                z = y.copy()
                z[e] = min(1.0, z[e] + 1.0 / h)
                val = oracle.F(z)
                if val > best_val:
                    best, best_val = e, val
            if best is None:
                raise AssertionError("no extension found below the target rank")
            chosen.append(best)
            y[best] = min(1.0, y[best] + 1.0 / h)
        x = y
        steps.append(frozenset(chosen))
    return steps
