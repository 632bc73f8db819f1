"""Streaming local search over bases of a matroid.

``local_search_pass`` makes one pass: every arriving element closes a unique
circuit with the current base and replaces the circuit member of smallest
*ordered* marginal (its marginal against the base elements that arrived before
it) when its own marginal is at least ``c`` times that.  ``multi_pass_local_search``
repeats passes until one of them gains little, which leaves an approximate
local optimum.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .matroid import Matroid
from .numerics import approx_ge, approx_le
from .objective import SubmodularFunction


class LocalSearchError(ValueError):
    pass


class LocalSearchFailure(RuntimeError):
    """The pass budget ran out; provably impossible for monotone f, so a bug."""


@dataclass
class PassRecord:
    start: frozenset[int]
    end: frozenset[int]
    c: float
    start_value: float
    end_value: float
    swaps: int


def local_search_pass(
    matroid: Matroid,
    f: SubmodularFunction,
    start: Iterable[int],
    c: float,
    stream: Iterable[int],
) -> PassRecord:
    """One pass starting from the base ``start``; ``stream`` lists every other element once.

    Elements of ``start`` found in ``stream`` are skipped, so the full stream order
    may be passed in.
    """
    if not c > 1.0:
        raise LocalSearchError(f"swap ratio c must exceed 1, got {c}")
    s0 = frozenset(start)
    if not matroid.is_base(s0):
        raise LocalSearchError(f"starting set {sorted(s0)} is not a base")
    current = set(s0)
    order = {e: k for k, e in enumerate(sorted(s0), start=1 - len(s0))}
    value = f.value(current)
    start_value = value
    swaps = 0
    seen = set()
    idx = 0
    for u in stream:
        if u in s0:
            continue
        if u in seen:
            raise LocalSearchError(f"element {u} arrived twice")
        seen.add(u)
        idx += 1
        order[u] = idx
        circuit = matroid.circuit_of(current, u)
        best, best_val = None, math.inf
        for w in sorted(circuit - {u}, key=order.__getitem__):
            before = [v for v in current if order[v] < order[w]]
            val = f.marginal(w, before)
            if val < best_val:
                best, best_val = w, val
        gain = f.value(current | {u}) - value
        # swap at equality, except the 0 = c * 0 tie, which would churn the base for nothing
        zero_tie = approx_le(abs(gain), 0.0) and approx_le(abs(best_val), 0.0)
        if approx_ge(gain, c * best_val) and not zero_tie:
            current.remove(best)
            current.add(u)
            new_value = f.value(current)
            if f.is_monotone and not approx_ge(new_value, value):
                raise AssertionError(f"swap lowered the value from {value} to {new_value}")
            value = new_value
            swaps += 1
        if len(current) != len(s0):
            raise AssertionError("local search lost its base")
    return PassRecord(s0, frozenset(current), c, start_value, value, swaps)


def greedy_base(matroid: Matroid, stream: Iterable[int]) -> frozenset[int]:
    """Keep every arriving element that preserves independence."""
    base: list[int] = []
    for u in stream:
        if matroid.is_independent(base + [u]):
            base.append(u)
    return frozenset(base)


@dataclass
class MultiPassResult:
    solution: frozenset[int]
    value: float
    passes: int  # including the greedy pass that builds T_0
    records: list[PassRecord] = field(default_factory=list)
    first_gain: float = 0.0  # f(T_1 | empty)


def pass_budget(delta: float) -> int:
    """Number of (1+delta)-passes allowed after T_1: 1 + ceil(4 / delta^2)."""
    return 1 + math.ceil(4.0 / delta**2)


def multi_pass_local_search(
    matroid: Matroid,
    f: SubmodularFunction,
    stream: Sequence[int] | Callable[[], Iterable[int]],
    delta: float,
) -> MultiPassResult:
    """Repeat local-search passes until one improves by at most delta^2 * f(T_1 | empty).

    ``stream`` is either a replayable sequence or a zero-argument callable
    returning a fresh iterator for each pass.
    """
    if not (0.0 < delta < 1.0):
        raise LocalSearchError(f"delta must lie in (0, 1), got {delta}")
    replay = stream if callable(stream) else (lambda: iter(stream))
    t_prev = greedy_base(matroid, replay())
    passes = 1
    rec = local_search_pass(matroid, f, t_prev, 2.0, replay())
    passes += 1
    records = [rec]
    empty = f.value(())
    first_gain = rec.end_value - empty
    threshold = delta**2 * first_gain
    t_prev, v_prev = rec.end, rec.end_value
    for _ in range(pass_budget(delta)):
        rec = local_search_pass(matroid, f, t_prev, 1.0 + delta, replay())
        passes += 1
        records.append(rec)
        if f.is_monotone and not approx_ge(rec.end_value, v_prev):
            raise AssertionError("a local search pass decreased the value")
        if approx_le(rec.end_value - v_prev, threshold):
            return MultiPassResult(t_prev, v_prev, passes, records, first_gain)
        t_prev, v_prev = rec.end, rec.end_value
    raise LocalSearchFailure(
        f"no converged pass within {pass_budget(delta)} passes (delta={delta}); this contradicts the analysis"
    )


def prop_single_pass_gap(f: SubmodularFunction, rec: PassRecord, base: Iterable[int]) -> float:
    """LHS - RHS of the per-pass progress inequality for comparison base ``base``.

    (c-1) f(S_n|{}) + (3c-2)/(c-1) [f(S_n) - f(S_0)]  >=  f(B | S_0 \\ B) - f(S_0 | {})
    Non-negative when the inequality holds.
    """
    c = rec.c
    b = frozenset(base)
    empty = f.value(())
    lhs = (c - 1) * (rec.end_value - empty) + (3 * c - 2) / (c - 1) * (rec.end_value - rec.start_value)
    rest = rec.start - b
    rhs = (f.value(rest | b) - f.value(rest)) - (rec.start_value - empty)
    return lhs - rhs
