"""Reference solvers: exhaustive optimum and offline greedy."""

from __future__ import annotations

import numpy as np

from ..matroid import Matroid, iter_independent_sets
from ..objective import SubmodularFunction

DEFAULT_CAP = 18


class ScaleError(ValueError):
    pass


def brute_force_opt(m: Matroid, f: SubmodularFunction, cap: int = DEFAULT_CAP) -> tuple[frozenset[int], float]:
    """Exact max of f over independent sets; ties keep the first set in
    (size, lexicographic) order."""
    if m.ground_size > cap:
        raise ScaleError(f"ground size {m.ground_size} exceeds the brute-force cap {cap}")
    sets = list(iter_independent_sets(m))
    rows = np.zeros((len(sets), m.ground_size), dtype=bool)
    for r, s in enumerate(sets):
        rows[r, list(s)] = True
    vals = f.value_batch(rows)
    best = int(np.argmax(vals))
    return frozenset(sets[best]), float(vals[best])


def offline_greedy(m: Matroid, f: SubmodularFunction) -> frozenset[int]:
    """Add the feasible element of largest positive marginal until none remains."""
    s: set[int] = set()
    value = f.value(s)
    while True:
        best, best_gain = None, 0.0
        for e in range(m.ground_size):
            if e in s or not m.is_independent(s | {e}):
                continue
            gain = f.value(s | {e}) - value
            if gain > best_gain:
                best, best_gain = e, gain
        if best is None:
            return frozenset(s)
        s.add(best)
        value += best_gain
