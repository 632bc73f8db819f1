"""Stream orders: explicit permutations or named generators."""

from __future__ import annotations

import json
from pathlib import Path

from ..numerics import make_rng
from ..objective import SubmodularFunction


class OrderError(ValueError):
    pass


def validate_order(order: list[int], ground_size: int) -> list[int]:
    if sorted(order) != list(range(ground_size)):
        raise OrderError(f"order is not a permutation of 0..{ground_size - 1}")
    return order


def make_order(spec: str, f: SubmodularFunction) -> list[int]:
    """``random:SEED``, ``adversarial-id-descending``, ``by-singleton-value-descending``,
    ``identity``, or a path to a JSON list of ids."""
    n = f.ground_size
    if spec.startswith("random:"):
        seed = int(spec.split(":", 1)[1])
        return [int(e) for e in make_rng(seed).permutation(n)]
    if spec == "identity":
        return list(range(n))
    if spec == "adversarial-id-descending":
        return list(range(n - 1, -1, -1))
    if spec == "by-singleton-value-descending":
        vals = [f.value((e,)) for e in range(n)]
        return sorted(range(n), key=lambda e: (-vals[e], e))
    path = Path(spec)
    if not path.exists():
        raise OrderError(f"unknown order spec {spec!r}")
    data = json.loads(path.read_text())
    if isinstance(data, dict):
        data = data.get("order")
    if not isinstance(data, list):
        raise OrderError(f"{spec}: expected a JSON list of element ids")
    return validate_order([int(e) for e in data], n)
