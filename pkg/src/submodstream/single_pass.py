"""Single-pass semi-streaming maximisation under a matroid constraint.

Each arriving element ``u`` with positive derivative ``d = dF/dx_u(a)`` gets a
level ``i(u) = floor(log_c d)`` and is offered to the bucket sets ``A_i`` for
``i`` in a window ending at ``i(u)``.  Every acceptance into ``A_i`` bumps the
bucket vector ``a_i`` at ``u`` by ``c**i / (m * d)``.  Buckets more than ``L``
levels under the highest level whose suffix already holds a full basis' worth
of elements are discarded.  At the end the buckets are dealt round-robin (by
level mod m) into ``m`` independent sets whose average is rounded.

The non-monotone mode uses a different ``alpha`` and caps the per-arrival
increase of a coordinate at ``p``.
"""

from __future__ import annotations

import math
import time
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .matroid import Matroid
from .multilinear import Multilinear
from .objective import SubmodularFunction
from .rounding import ConvexCombination, round_best_of

ALPHA_MONOTONE = 1.1462
ALPHA_NON_MONOTONE = 1.9532


class ConfigError(ValueError):
    pass


class StreamError(ValueError):
    pass


@dataclass(frozen=True)
class SinglePassConfig:
    epsilon: float
    mode: str = "monotone"
    alpha: float = field(init=False)
    m: int = field(init=False)
    c: float = field(init=False)
    L: int = field(init=False)
    p: float | None = field(init=False)

    def __post_init__(self):
        eps = self.epsilon
        if not (0.0 < eps <= 1.0):
            raise ConfigError(f"epsilon must lie in (0, 1], got {eps}")
        if self.mode not in ("monotone", "non_monotone"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        alpha = ALPHA_MONOTONE if self.mode == "monotone" else ALPHA_NON_MONOTONE
        m = math.ceil(3 * alpha / eps)
        c = m / (m - alpha)
        L = math.ceil(math.log(2 * c / (eps * (c - 1))) / math.log(c))
        p = 1.0 / (m * (c - 1) + 1) if self.mode == "non_monotone" else None
        for name, val in (("alpha", alpha), ("m", m), ("c", c), ("L", L), ("p", p)):
            object.__setattr__(self, name, val)


@dataclass
class SinglePassOutput:
    candidates: list[frozenset[int]]
    point: dict[int, float]
    solution: frozenset[int]
    value: float
    max_stored: int
    oracle_calls: int
    elapsed_ms: float = 0.0


class SinglePass:
    """Streaming state; feed elements with :meth:`process`, then :meth:`finalize`."""

    def __init__(
        self,
        cfg: SinglePassConfig,
        matroid: Matroid,
        f: SubmodularFunction,
        oracle: Multilinear,
        *,
        round_trials: int = 32,
        seed: int = 0,
        record_trace: bool = False,
    ):
        if cfg.mode == "monotone" and not f.is_monotone:
            raise ConfigError("monotone mode needs a monotone objective; use mode='non_monotone'")
        self.cfg = cfg
        self.matroid = matroid
        self.f = f
        self.oracle = oracle
        self.rank = matroid.rank_total
        self.round_trials = round_trials
        self.seed = seed
        self.buckets: dict[int, list[int]] = {}  # A_i in insertion order
        self.bucket_vectors: dict[int, dict[int, float]] = {}  # a_i
        self.a: dict[int, float] = {}
        self.b: int | None = None  # None is the -infinity sentinel
        self.processed: set[int] = set()
        self.max_stored = 0
        self.f_scale = 0.0
        self.trace: list[dict] | None = [] if record_trace else None
        self._t0 = time.perf_counter()
        self._calls0 = f.calls

    # -- helpers ---------------------------------------------------------
    def cpow(self, i: int) -> float:
        return self.cfg.c ** i

    def level(self, d: float) -> int:
        """Largest integer i with c**i <= d."""
        i = math.floor(math.log(d) / math.log(self.cfg.c))
        while self.cpow(i) > d:
            i -= 1
        while self.cpow(i + 1) <= d:
            i += 1
        return i

    def stored(self) -> int:
        return sum(len(s) for s in self.buckets.values())

    def _positivity_margin(self, u: int) -> float:
        if self.oracle.exact:
            return 0.0
        self.f_scale = max(self.f_scale, self.f.value((u,)))
        return 1e-12 * self.f_scale

    def _dense_a(self) -> np.ndarray:
        x = np.zeros(self.f.ground_size)
        for e, v in self.a.items():
            x[e] = v
        return x

    # -- main loop -------------------------------------------------------
    def process(self, u: int) -> None:
        if u in self.processed:
            raise StreamError(f"element {u} arrived twice")
        if not (0 <= u < self.f.ground_size):
            raise StreamError(f"element {u} outside ground set")
        self.processed.add(u)
        margin = self._positivity_margin(u)
        d = self.oracle.partial(self._dense_a(), u)
        if not d > margin:
            if self.trace is not None:
                self.trace.append({"u": u, "d": d, "level": None, "added": []})
            return
        cfg = self.cfg
        top = self.level(d)
        lo = top - self.rank - cfg.L
        if self.b is not None:
            lo = max(lo, self.b)
        added = []
        increment = 0.0
        for i in range(lo, top + 1):
            members = self.buckets.get(i, [])
            if cfg.p is not None and increment > cfg.p:
                continue
            if self.matroid.is_independent(members + [u]):
                delta = self.cpow(i) / (cfg.m * d)
                self.buckets.setdefault(i, members).append(u)
                vec = self.bucket_vectors.setdefault(i, {})
                vec[u] = vec.get(u, 0.0) + delta
                increment += delta
                added.append(i)
        self.max_stored = max(self.max_stored, self.stored())

        # b <- h - L, h the largest level whose suffix holds >= rank elements
        running = 0
        for i in sorted(self.buckets, reverse=True):
            running += len(self.buckets[i])
            if running >= self.rank:
                self.b = i - cfg.L
                break
        if self.b is not None:
            for i in [i for i in self.buckets if i < self.b]:
                del self.buckets[i]
                self.bucket_vectors.pop(i, None)
        a: dict[int, float] = {}
        for vec in self.bucket_vectors.values():
            for e, v in vec.items():
                a[e] = a.get(e, 0.0) + v
        self.a = a
        if any(v > 1.0 + 1e-12 or v < 0.0 for v in a.values()):
            raise AssertionError("accumulated vector left the unit box")
        if self.trace is not None:
            self.trace.append({"u": u, "d": d, "level": top, "added": added, "b": self.b})

    def process_stream(self, order: Iterable[int]) -> None:
        for u in order:
            self.process(u)

    def nonempty_levels(self) -> list[int]:
        return sorted((i for i, s in self.buckets.items() if s), reverse=True)

    def build_candidates(self) -> list[frozenset[int]]:
        """Deal buckets from the top level down to b into S_{i mod m}."""
        m = self.cfg.m
        sets: list[list[int]] = [[] for _ in range(m)]
        levels = self.nonempty_levels()
        if not levels:
            return [frozenset() for _ in range(m)]
        q = levels[0]
        bottom = self.b if self.b is not None else levels[-1]
        for i in range(q, bottom - 1, -1):
            target = sets[i % m]
            for u in self.buckets.get(i, ()):
                if u not in target and self.matroid.is_independent(target + [u]):
                    target.append(u)
        return [frozenset(s) for s in sets]

    def finalize(self) -> SinglePassOutput:
        candidates = self.build_candidates()
        comb = ConvexCombination.uniform(candidates)
        point = dict(comb.point())
        if not any(candidates):
            solution = frozenset()
        else:
            solution = round_best_of(self.matroid, comb, self.f, trials=self.round_trials, seed=self.seed)
        value = self.f.value(solution)
        return SinglePassOutput(
            candidates=candidates,
            point=point,
            solution=solution,
            value=value,
            max_stored=self.max_stored,
            oracle_calls=self.f.calls - self._calls0,
            elapsed_ms=(time.perf_counter() - self._t0) * 1e3,
        )


def memory_bound(cfg: SinglePassConfig, rank: int) -> int:
    """Peak stored elements allowed: (L+3) * rank + L."""
    return (cfg.L + 3) * rank + cfg.L


def single_pass(
    cfg: SinglePassConfig,
    matroid: Matroid,
    f: SubmodularFunction,
    oracle: Multilinear,
    order: Iterable[int],
    *,
    round_trials: int = 32,
    seed: int = 0,
) -> SinglePassOutput:
    run = SinglePass(cfg, matroid, f, oracle, round_trials=round_trials, seed=seed)
    run.process_stream(order)
    out = run.finalize()
    if out.max_stored > memory_bound(cfg, run.rank):
        raise AssertionError(f"stored {out.max_stored} elements, bound is {memory_bound(cfg, run.rank)}")
    return out
