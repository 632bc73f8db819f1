"""Layered hard instances over parallel copies of bipartite-graph edges.

Layer ``i`` holds ``n`` copies ``(e, j)`` of every edge ``e`` of the bipartite
graph ``G_i``.  With ``s(i) = |S cap N_i| / m_i`` and ``s(i, not o_i)`` the same
count restricted to copies other than the secret index ``o_i``, the value is
folded from the last layer up::

    f_p = min(1, s(p))
    f_i = min(p + 1 - i, s(i) + (1 - s(i, not o_i) / (p + 1 - i)) * f_{i+1})

Copy indices and secret indices are 1-based.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .numerics import make_rng
from .objective import ObjectiveError, SubmodularFunction


def max_bipartite_matching(edges: Sequence[tuple[int, int]]) -> int:
    """Size of a maximum matching; left and right vertex ids are separate namespaces."""
    return len(maximum_matching(edges))


def matching_bound(size: int, eps: float) -> float:
    """Smallest power of (1 + eps) that is >= size (1 for an empty graph)."""
    if size <= 1:
        return 1.0
    k = math.ceil(math.log(size) / math.log1p(eps) - 1e-12)
    while (1 + eps) ** k < size:
        k += 1
    return (1 + eps) ** k


@dataclass(frozen=True)
class Layer:
    edges: tuple[tuple[int, int], ...]
    m: float
    o: int


class LayeredFunction(SubmodularFunction):
    """The layered family as a set function over element ids.

    Element ids enumerate (layer, edge, copy) lexicographically; see :meth:`element`.
    """

    is_monotone = True

    def __init__(self, layers: Sequence[Layer], n: int):
        self.layers = tuple(layers)
        self.p = len(self.layers)
        self.n = n
        if self.p < 1 or n < 1:
            raise ObjectiveError("need at least one layer and one copy")
        self._index: list[tuple[int, int, int]] = []
        for i, layer in enumerate(self.layers):
            if not (1 <= layer.o <= n):
                raise ObjectiveError(f"secret index {layer.o} outside 1..{n}")
            if layer.m <= 0 or layer.m < max_bipartite_matching(layer.edges):
                raise ObjectiveError(f"layer {i}: bound m={layer.m} is below the maximum matching size")
            for k in range(len(layer.edges)):
                for j in range(1, n + 1):
                    self._index.append((i, k, j))
        self._id = {t: e for e, t in enumerate(self._index)}
        super().__init__(len(self._index))
        self._layer_of = np.array([t[0] for t in self._index], dtype=np.int64)
        self._secret = np.array([t[2] == self.layers[t[0]].o for t in self._index], dtype=bool)

    def element(self, layer: int, edge: int, copy: int) -> int:
        try:
            return self._id[(layer, edge, copy)]
        except KeyError:
            raise ObjectiveError(f"no element (layer={layer}, edge={edge}, copy={copy})") from None

    def describe(self, e: int) -> tuple[int, int, int]:
        return self._index[e]

    def layer_elements(self, layer: int) -> list[int]:
        return [e for e, t in enumerate(self._index) if t[0] == layer]

    def counters(self, s: Iterable[int]) -> list[tuple[int, int]]:
        """(|S cap N_i|, |S cap N_i off the secret index|) per layer."""
        counts = [[0, 0] for _ in range(self.p)]
        for e in s:
            i, _, j = self._index[e]
            counts[i][0] += 1
            if j != self.layers[i].o:
                counts[i][1] += 1
        return [tuple(c) for c in counts]

    def value_from_counters(self, counts: Sequence[tuple[int, int]]) -> float:
        p = self.p
        val = 0.0
        for i in range(p - 1, -1, -1):
            total, off = counts[i]
            s_i = total / self.layers[i].m
            if i == p - 1:
                val = min(1.0, s_i)
            else:
                room = p - i  # p + 1 - i with 1-based layers
                val = min(float(room), s_i + (1.0 - (off / self.layers[i].m) / room) * val)
        return val

    def _value(self, s):
        return self.value_from_counters(self.counters(s))

    def with_secrets(self, secrets: Sequence[int]) -> LayeredFunction:
        layers = [Layer(l.edges, l.m, o) for l, o in zip(self.layers, secrets)]
        return LayeredFunction(layers, self.n)


def layered_value(fn: LayeredFunction, pairs: Iterable[tuple[int, int, int]]) -> float:
    """Value of a set given as (layer, edge index, copy) triples."""
    return fn.value(fn.element(*t) for t in pairs)


def make_layered(
    graphs: Sequence[Sequence[tuple[int, int]]],
    n: int,
    *,
    secrets: Sequence[int] | None = None,
    bounds: Sequence[float] | None = None,
    eps: float = 0.1,
    seed: int = 0,
) -> LayeredFunction:
    """Build an instance; matching bounds default to the (1+eps)-power rounding of
    the true maximum matching, secrets default to uniform draws from 1..n."""
    rng = make_rng(seed)
    if secrets is None:
        secrets = [int(rng.integers(1, n + 1)) for _ in graphs]
    if bounds is None:
        bounds = [matching_bound(max_bipartite_matching(g), eps) for g in graphs]
    layers = [Layer(tuple((int(a), int(b)) for a, b in g), float(m), int(o)) for g, m, o in zip(graphs, bounds, secrets)]
    return LayeredFunction(layers, n)


def parse_graph_spec(spec: str) -> list[tuple[int, int]]:
    """``path:K`` (K edges), ``star:K``, ``matching:K``, ``complete:A:B``."""
    kind, *args = spec.split(":")
    nums = [int(a) for a in args]
    if kind == "path":
        (k,) = nums
        # alternate left/right vertices along the path
        return [((i + 1) // 2, i // 2) if i % 2 else (i // 2, i // 2) for i in range(k)]
    if kind == "star":
        (k,) = nums
        return [(0, j) for j in range(k)]
    if kind == "matching":
        (k,) = nums
        return [(j, j) for j in range(k)]
    if kind == "complete":
        a, b = nums
        return [(i, j) for i in range(a) for j in range(b)]
    raise ValueError(f"unknown graph spec {spec!r}")


@dataclass
class PropertyReport:
    restriction_checks: int = 0
    spot_checks: int = 0
    yes_case_value: float = 0.0
    yes_case_bound: float = 0.0
    no_case_samples: int = 0
    no_case_max: float = 0.0
    no_case_bound: float = 0.0
    violations: list[str] | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_family_properties(
    fn: LayeredFunction, *, alpha: float = 0.5, eps: float = 0.1, trials: int = 1000, seed: int = 0
) -> PropertyReport:
    """Check indistinguishability on prefixes, the matched-copies lower bound, the
    strict upper bound for small sets avoiding all secret copies, and spot checks
    of monotonicity and diminishing returns."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    rng = make_rng(seed)
    rep = PropertyReport(violations=[])
    p, n = fn.p, fn.n

    # prefix agreement: same secrets before layer i => same values on N_{<= i}
    for i in range(p):
        prefix = [e for e in range(fn.ground_size) if fn.describe(e)[0] <= i]
        for _ in range(max(1, trials // (10 * p))):
            secrets = [l.o for l in fn.layers]
            other = secrets[:i] + [int(rng.integers(1, n + 1)) for _ in range(p - i)]
            g = fn.with_secrets(other)
            s = [e for e in prefix if rng.random() < 0.5]
            if fn.value(s) != g.value(s):
                rep.violations.append(f"prefix {i}: values differ on {s}")
            rep.restriction_checks += 1

    # yes case: copies of maximum matchings at the secret indices
    chosen = []
    for i, layer in enumerate(fn.layers):
        matched = maximum_matching(layer.edges)
        chosen += [fn.element(i, k, layer.o) for k in matched]
    rep.yes_case_value = fn.value(chosen)
    rep.yes_case_bound = p / (1 + eps)
    if rep.yes_case_value < rep.yes_case_bound - 1e-12:
        rep.violations.append(f"yes case {rep.yes_case_value} < {rep.yes_case_bound}")

    # no case: avoid secret copies and keep |S cap N_i| <= alpha m_i
    rep.no_case_bound = 1 + alpha / (alpha + 1) * p
    pools = [
        [e for e in fn.layer_elements(i) if fn.describe(e)[2] != layer.o] for i, layer in enumerate(fn.layers)
    ]
    for _ in range(trials):
        s = []
        for layer, pool in zip(fn.layers, pools):
            limit = min(len(pool), int(math.floor(alpha * layer.m + 1e-12)))
            # full-size sets are the adversarial ones; take them half the time
            k = limit if rng.random() < 0.5 else int(rng.integers(0, limit + 1))
            s += [pool[t] for t in rng.choice(len(pool), size=k, replace=False)] if k else []
        v = fn.value(s)
        rep.no_case_samples += 1
        rep.no_case_max = max(rep.no_case_max, v)
        if not v < rep.no_case_bound:
            rep.violations.append(f"no case value {v} >= {rep.no_case_bound}")

    # S subset of T, u outside T: 0 <= f(u | T) <= f(u | S)
    ground = fn.ground_size
    for _ in range(max(1, trials // 10)):
        t = [e for e in range(ground) if rng.random() < 0.5]
        s = [e for e in t if rng.random() < 0.5]
        rest = [e for e in range(ground) if e not in set(t)]
        if not rest:
            continue
        u = rest[int(rng.integers(len(rest)))]
        gain_t, gain_s = fn.marginal(u, t), fn.marginal(u, s)
        if gain_t < -1e-12 or gain_t > gain_s + 1e-12:
            rep.violations.append(f"spot check failed: u={u}, S={s}, T={t}")
        rep.spot_checks += 1
    return rep


def maximum_matching(edges: Sequence[tuple[int, int]]) -> list[int]:
    """Edge indices of one maximum matching (augmenting paths)."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for k, (a, b) in enumerate(edges):
        adj.setdefault(a, []).append((b, k))
    match_right: dict[int, tuple[int, int]] = {}

    def augment(a, seen):
        for b, k in adj.get(a, ()):
            if b in seen:
                continue
            seen.add(b)
            if b not in match_right or augment(match_right[b][0], seen):
                match_right[b] = (a, k)
                return True
        return False

    for a in adj:
        augment(a, set())
    return sorted(k for _, k in match_right.values())
