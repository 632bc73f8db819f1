"""Seeded random instance generators."""

from __future__ import annotations

from collections.abc import Sequence

from ..hardness import make_layered, parse_graph_spec
from ..numerics import make_rng
from .instances import InstanceFile


def random_coverage(rng, n_sets: int, universe: int, density: float) -> dict:
    sets = []
    for _ in range(n_sets):
        cover = [int(j) for j in range(universe) if rng.random() < density]
        if not cover:
            cover = [int(rng.integers(universe))]
        sets.append(cover)
    weights = [round(float(w), 6) for w in rng.uniform(0.1, 1.0, size=universe)]
    return {"type": "coverage", "sets": sets, "weights": weights}


def random_partition(rng, ground_size: int, n_blocks: int, max_rank: int) -> dict:
    blocks = [int(b) for b in rng.integers(0, n_blocks, size=ground_size)]
    caps = [1] * n_blocks
    # spread the remaining rank over random blocks, never above block size
    sizes = [blocks.count(b) for b in range(n_blocks)]
    for _ in range(max(0, max_rank - n_blocks)):
        b = int(rng.integers(n_blocks))
        if caps[b] < max(1, sizes[b]):
            caps[b] += 1
    return {"type": "partition", "blocks": blocks, "capacities": caps}


def random_graphic(rng, n_vertices: int, n_edges: int) -> dict:
    edges = []
    while len(edges) < n_edges:
        a, b = (int(v) for v in rng.choice(n_vertices, size=2, replace=False))
        edges.append((min(a, b), max(a, b)))
    return {"type": "graphic", "n_vertices": n_vertices, "edges": edges}


def random_cut(rng, n_vertices: int, density: float) -> dict:
    edges = []
    for a in range(n_vertices):
        for b in range(a + 1, n_vertices):
            if rng.random() < density:
                edges.append((a, b, round(float(rng.uniform(0.1, 1.0)), 6)))
    return {"type": "cut", "n_vertices": n_vertices, "edges": edges}


def coverage_instance(
    seed: int,
    *,
    ground_size: int = 12,
    universe: int = 20,
    density: float = 0.25,
    n_blocks: int = 3,
    max_rank: int = 4,
    matroid: str = "partition",
) -> InstanceFile:
    rng = make_rng(seed)
    obj = random_coverage(rng, ground_size, universe, density)
    if matroid == "partition":
        mat = random_partition(rng, ground_size, n_blocks, max_rank)
    elif matroid == "uniform":
        mat = {"type": "uniform", "k": max_rank}
    elif matroid == "graphic":
        # ground_size edges on max_rank + 1 vertices keeps the rank at most max_rank
        mat = random_graphic(rng, max_rank + 1, ground_size)
    else:
        raise ValueError(f"unknown matroid kind {matroid!r}")
    return InstanceFile(
        ground_size=ground_size, matroid=mat, objective=obj, name=f"coverage-{matroid}-{seed}", seed=seed
    )


def cut_instance(seed: int, *, n_vertices: int = 10, density: float = 0.4, k: int = 4, matroid: str = "uniform") -> InstanceFile:
    rng = make_rng(seed)
    obj = random_cut(rng, n_vertices, density)
    if matroid == "uniform":
        mat = {"type": "uniform", "k": k}
    else:
        mat = random_partition(rng, n_vertices, max(1, k - 1), k)
    return InstanceFile(ground_size=n_vertices, matroid=mat, objective=obj, name=f"cut-{matroid}-{seed}", seed=seed)


def hardness_instance(p: int, n: int, graphs: Sequence[str], seed: int, eps: float = 0.1) -> InstanceFile:
    """Layered family with G_i given by graph specs (one spec reused for all layers
    if only one is given); matching bounds rounded up to powers of 1 + eps."""
    specs = list(graphs) if len(graphs) > 1 else list(graphs) * p
    if len(specs) != p:
        raise ValueError(f"need 1 or {p} graph specs, got {len(specs)}")
    fn = make_layered([parse_graph_spec(s) for s in specs], n, eps=eps, seed=seed)
    layers = [{"edges": [list(e) for e in l.edges], "m": l.m, "o": l.o} for l in fn.layers]
    # one partition block per (layer, left vertex) keeps feasible sets matching-like
    blocks, keys = [], {}
    for e in range(fn.ground_size):
        i, k, _ = fn.describe(e)
        key = (i, fn.layers[i].edges[k][0])
        blocks.append(keys.setdefault(key, len(keys)))
    mat = {"type": "partition", "blocks": blocks, "capacities": [1] * len(keys)}
    return InstanceFile(
        ground_size=fn.ground_size,
        matroid=mat,
        objective={"type": "hardness-family", "p": p, "n": n, "layers": layers},
        name=f"hardness-p{p}-n{n}-{seed}",
        seed=seed,
    )
