"""Two-player one-way protocol: Alice summarises her half of the ground set in
O(rank) elements, Bob picks the best independent set among those plus his half.

Both players use exhaustive search, so this is for small ground sets only.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .continuous_greedy import discretized_continuous_greedy
from .matroid import Matroid, iter_independent_sets
from .multilinear import ExactCoverage, Multilinear
from .objective import SubmodularFunction

DEFAULT_H = 125
DEFAULT_CAP = 16


class ScaleError(ValueError):
    pass


@dataclass(frozen=True)
class TwoPlayerInstance:
    matroid: Matroid
    f: SubmodularFunction
    alice: frozenset[int]
    bob: frozenset[int]
    cap: int = DEFAULT_CAP

    @classmethod
    def split(cls, matroid: Matroid, f: SubmodularFunction, alice: Iterable[int], cap: int = DEFAULT_CAP):
        alice = frozenset(alice)
        everything = frozenset(range(matroid.ground_size))
        if not alice <= everything:
            raise ValueError("Alice's elements must come from the ground set")
        return cls(matroid, f, alice, everything - alice, cap)


@dataclass(frozen=True)
class AliceMessage:
    opt_alice: frozenset[int]
    w: frozenset[int]
    steps: tuple[frozenset[int], ...]

    @property
    def elements(self) -> frozenset[int]:
        out = set(self.opt_alice) | set(self.w)
        for c in self.steps:
            out |= c
        return frozenset(out)


def best_independent_subset(
    matroid: Matroid, score, elements: Iterable[int], cap: int
) -> tuple[frozenset[int], float]:
    """Exhaustive argmax of ``score`` over independent subsets; ties keep the first
    set in (size, lexicographic) order."""
    elements = sorted(set(elements))
    if len(elements) > cap:
        raise ScaleError(f"{len(elements)} elements exceed the exhaustive-search cap of {cap}")
    best, best_val = (), -np.inf
    for s in iter_independent_sets(matroid, elements):
        v = score(s)
        if v > best_val:
            best, best_val = s, v
    return frozenset(best), float(best_val)


def alice(inst: TwoPlayerInstance, h: int = DEFAULT_H, oracle: Multilinear | None = None) -> AliceMessage:
    if len(inst.alice) > inst.cap:
        raise ScaleError(f"Alice holds {len(inst.alice)} elements; the cap is {inst.cap}")
    oracle = oracle or ExactCoverage(inst.f)
    if not oracle.exact:
        raise ValueError("the protocol needs an exact multilinear oracle")
    opt_a, _ = best_independent_subset(inst.matroid, inst.f.value, inst.alice, inst.cap)
    steps = discretized_continuous_greedy(inst.matroid, inst.alice, h, oracle)
    x = np.zeros(inst.f.ground_size)
    for c in steps:
        for e in c:
            x[e] += 1.0 / h
    x = np.minimum(x, 1.0)

    def lifted(hset):
        y = x.copy()
        y[list(hset)] = 1.0
        return oracle.F(y)

    w, _ = best_independent_subset(inst.matroid, lifted, inst.alice, inst.cap)
    return AliceMessage(opt_a, w, tuple(steps))


def bob(msg: AliceMessage, inst: TwoPlayerInstance) -> frozenset[int]:
    pool = msg.elements | inst.bob
    if len(pool) > inst.cap:
        raise ScaleError(f"Bob would search {len(pool)} elements; the cap is {inst.cap}")
    r, _ = best_independent_subset(inst.matroid, inst.f.value, pool, inst.cap)
    return r


def message_bound(h: int, rank: int) -> int:
    return (h + 2) * rank


def run_protocol(inst: TwoPlayerInstance, h: int = DEFAULT_H) -> tuple[AliceMessage, frozenset[int]]:
    msg = alice(inst, h)
    if len(msg.elements) > message_bound(h, inst.matroid.rank_total):
        raise AssertionError("Alice's message is larger than (h + 2) * rank")
    return msg, bob(msg, inst)
