"""Randomised swap rounding of an explicit convex combination of independent sets.

Sets of different sizes are padded with free coloops (ids past the real ground
set) so that they all become bases of one truncation; the coloops are removed
from the result.  Any weight deficit below 1 becomes an all-coloop set, i.e.
the empty set once stripped.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .matroid import Matroid, MatroidConsistencyError, PaddedMatroid
from .multilinear import FractionalPoint
from .numerics import TAU_CMP, make_rng
from .objective import SubmodularFunction


class RoundingError(ValueError):
    pass


@dataclass(frozen=True)
class ConvexCombination:
    """Independent sets with positive weights summing to at most 1."""

    sets: tuple[frozenset[int], ...]
    weights: tuple[float, ...]

    def __init__(self, items: Iterable[tuple[Iterable[int], float]]):
        sets, weights = [], []
        for s, w in items:
            w = float(w)
            if not w > 0.0:
                raise RoundingError(f"weights must be positive, got {w}")
            sets.append(frozenset(int(e) for e in s))
            weights.append(w)
        if sum(weights) > 1.0 + TAU_CMP:
            raise RoundingError(f"weights sum to {sum(weights)} > 1")
        object.__setattr__(self, "sets", tuple(sets))
        object.__setattr__(self, "weights", tuple(weights))

    @classmethod
    def uniform(cls, sets: Sequence[Iterable[int]]) -> ConvexCombination:
        return cls((s, 1.0 / len(sets)) for s in sets)

    def point(self) -> FractionalPoint:
        x: dict[int, float] = {}
        for s, w in zip(self.sets, self.weights):
            for e in s:
                x[e] = x.get(e, 0.0) + w
        return FractionalPoint({e: min(v, 1.0) for e, v in x.items()})

    def merged(self) -> ConvexCombination:
        """Identical sets collapsed into one entry (same point, fewer merges)."""
        acc: dict[frozenset[int], float] = {}
        for s, w in zip(self.sets, self.weights):
            acc[s] = acc.get(s, 0.0) + w
        return ConvexCombination(acc.items())

    def validate(self, m: Matroid) -> None:
        for s in self.sets:
            if not m.is_independent(s):
                raise RoundingError(f"set {sorted(s)} in the combination is dependent")


def _merge_pair(m: Matroid, c1: set[int], w1: float, c2: set[int], w2: float, rng) -> set[int]:
    c1, c2 = set(c1), set(c2)
    while True:
        diff = c1 - c2
        if not diff:
            return c1
        u = min(diff)
        v = m.basis_exchange(c1, c2, u)
        if rng.random() * (w1 + w2) < w1:
            c2.discard(v)
            c2.add(u)
        else:
            c1.discard(u)
            c1.add(v)


def swap_round(m: Matroid, comb: ConvexCombination, seed: int = 0, rng: np.random.Generator | None = None) -> frozenset[int]:
    """One randomised swap rounding of ``comb``; the result is independent in ``m``."""
    comb.validate(m)
    if not comb.sets:
        return frozenset()
    rng = rng if rng is not None else make_rng(seed)
    size = max(len(s) for s in comb.sets)
    n = m.ground_size
    padded_m = PaddedMatroid(m, size)
    free = list(range(n, n + size))
    sets = [set(s) | set(free[: size - len(s)]) for s in comb.sets]
    weights = list(comb.weights)
    deficit = 1.0 - sum(weights)
    if deficit > TAU_CMP:
        sets.append(set(free))
        weights.append(deficit)
    current, acc = sets[0], weights[0]
    for s, w in zip(sets[1:], weights[1:]):
        current = _merge_pair(padded_m, current, acc, s, w, rng)
        acc += w
    result = frozenset(e for e in current if e < n)
    if not m.is_independent(result):
        raise MatroidConsistencyError("swap rounding produced a dependent set")
    return result


def round_best_of(
    m: Matroid,
    comb: ConvexCombination,
    f: SubmodularFunction,
    trials: int = 32,
    seed: int = 0,
) -> frozenset[int]:
    """Best of ``trials`` swap roundings and of the listed sets themselves."""
    if trials < 1:
        raise RoundingError("trials must be >= 1")
    comb.validate(m)
    comb = comb.merged()
    rng = make_rng(seed)
    candidates = list(comb.sets)
    if len(comb.sets) == 1 and comb.weights[0] >= 1.0 - TAU_CMP:
        trials = 1
    for _ in range(trials):
        candidates.append(swap_round(m, comb, rng=rng))
    best, best_val = None, float("-inf")
    for c in candidates:
        v = f.value(c)
        if v > best_val:
            best, best_val = c, v
    return best if best is not None else frozenset()

