"""Non-negative submodular value oracles.

Each oracle counts its set evaluations in ``calls``.  ``value_batch`` evaluates
many sets given as rows of a boolean membership matrix; coverage and cut
override it with vectorised versions, which is what makes Monte-Carlo
estimation of the multilinear extension affordable.
"""

from __future__ import annotations

import itertools
import threading
from collections.abc import Iterable, Mapping, Sequence

import numpy as np


class ObjectiveError(ValueError):
    pass


class SubmodularFunction:
    ground_size: int
    is_monotone: bool = False

    def __init__(self, ground_size: int):
        self.ground_size = ground_size
        self.calls = 0
        self._lock = threading.Lock()

    def _count(self, k: int = 1) -> None:
        with self._lock:
            self.calls += k

    def _check(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        for e in s:
            if not (0 <= e < self.ground_size):
                raise ObjectiveError(f"element {e} outside ground set of size {self.ground_size}")
        return s

    def _value(self, s: frozenset[int]) -> float:
        raise NotImplementedError

    def value(self, s: Iterable[int]) -> float:
        s = self._check(s)
        self._count()
        return float(self._value(s))

    __call__ = value

    def marginal(self, u: int, s: Iterable[int]) -> float:
        """f(u | S) = f(S + u) - f(S)."""
        s = self._check(s)
        self._check((u,))
        if u in s:
            return 0.0
        return self.value(s | {u}) - self.value(s)

    def ordered_marginal(self, u: int, t: Iterable[int], order: Mapping[int, int]) -> float:
        """Marginal of ``u`` against the members of ``t`` that arrived before it."""
        t = self._check(t)
        missing = [e for e in t | {u} if e not in order]
        if missing:
            raise ObjectiveError(f"no arrival index for elements {sorted(missing)}")
        before = frozenset(v for v in t if order[v] < order[u])
        return self.marginal(u, before)

    def value_batch(self, members: np.ndarray) -> np.ndarray:
        """Values of the sets given as rows of a (k, ground_size) boolean matrix."""
        members = np.asarray(members, dtype=bool)
        self._count(len(members))
        out = np.empty(len(members))
        for r, row in enumerate(members):
            out[r] = self._value(frozenset(np.flatnonzero(row).tolist()))
        return out


class CoverageFunction(SubmodularFunction):
    """f(S) = total weight of the union of the universes covered by S."""

    is_monotone = True

    def __init__(self, covers: Sequence[Iterable[int]], weights: Sequence[float]):
        super().__init__(len(covers))
        self.weights = np.asarray(weights, dtype=float)
        if self.weights.ndim != 1 or np.any(self.weights < 0):
            raise ObjectiveError("weights must be a non-negative vector")
        self.covers = tuple(tuple(sorted(set(int(v) for v in c))) for c in covers)
        n_points = len(self.weights)
        self.incidence = np.zeros((self.ground_size, n_points), dtype=bool)
        for e, cover in enumerate(self.covers):
            for v in cover:
                if not (0 <= v < n_points):
                    raise ObjectiveError(f"element {e} covers unknown point {v}")
                self.incidence[e, v] = True

    def _value(self, s):
        if not s:
            return 0.0
        hit = self.incidence[sorted(s)].any(axis=0)
        return float(self.weights[hit].sum())

    def value_batch(self, members):
        members = np.asarray(members, dtype=bool)
        self._count(len(members))
        hit = (members.astype(np.int32) @ self.incidence.astype(np.int32)) > 0
        return hit.astype(float) @ self.weights


class CutFunction(SubmodularFunction):
    """Weight of the edges crossing (S, V \\ S); elements are the vertices."""

    is_monotone = False

    def __init__(self, n_vertices: int, edges: Sequence[tuple[int, int, float]]):
        super().__init__(n_vertices)
        self.edges = tuple((int(a), int(b), float(w)) for a, b, w in edges)
        for a, b, w in self.edges:
            if not (0 <= a < n_vertices and 0 <= b < n_vertices) or a == b:
                raise ObjectiveError(f"bad edge ({a}, {b})")
            if w < 0:
                raise ObjectiveError("edge weights must be non-negative")
        self._a = np.array([e[0] for e in self.edges], dtype=np.int64)
        self._b = np.array([e[1] for e in self.edges], dtype=np.int64)
        self._w = np.array([e[2] for e in self.edges], dtype=float)

    def _value(self, s):
        return sum(w for a, b, w in self.edges if (a in s) != (b in s))

    def value_batch(self, members):
        members = np.asarray(members, dtype=bool)
        self._count(len(members))
        if not self.edges:
            return np.zeros(len(members))
        crossing = members[:, self._a] != members[:, self._b]
        return crossing.astype(float) @ self._w


class ModularFunction(SubmodularFunction):
    """Additive f(S) = sum of non-negative weights."""

    is_monotone = True

    def __init__(self, weights: Sequence[float]):
        super().__init__(len(weights))
        self.weights = np.asarray(weights, dtype=float)
        if np.any(self.weights < 0):
            raise ObjectiveError("weights must be non-negative")

    def _value(self, s):
        return float(sum(self.weights[e] for e in s))

    def value_batch(self, members):
        members = np.asarray(members, dtype=bool)
        self._count(len(members))
        return members.astype(float) @ self.weights


def check_submodular(f: SubmodularFunction, tol: float = 1e-9) -> list[str]:
    """Exhaustive diminishing-returns / monotonicity / non-negativity check.

    Returns a list of human-readable violations (empty when all hold).  Uses the
    equivalent local form f(u|S) >= f(u|S+w), which is exhaustive over all
    (S, u, w) triples and so covers every S <= T pair by chaining.
    """
    n = f.ground_size
    vals = {}
    for r in range(n + 1):
        for s in itertools.combinations(range(n), r):
            vals[frozenset(s)] = f.value(s)
    problems = []
    for s, v in vals.items():
        if v < -tol:
            problems.append(f"negative value {v} at {sorted(s)}")
        for u in range(n):
            if u in s:
                continue
            gain = vals[s | {u}] - v
            if f.is_monotone and gain < -tol:
                problems.append(f"not monotone: f({u}|{sorted(s)}) = {gain}")
            for w in range(n):
                if w in s or w == u:
                    continue
                later = vals[s | {u, w}] - vals[s | {w}]
                if later > gain + tol:
                    problems.append(f"not submodular at S={sorted(s)}, u={u}, w={w}")
    return problems
