"""Matroids given by an independence oracle, plus the generic queries built on it.

Every query here only talks to ``is_independent``; the concrete classes merely
decide independence.  Element sets are any iterable of ints in
``range(ground_size)``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Sequence


class MatroidError(ValueError):
    """Bad input to a matroid query (out-of-range id, violated precondition)."""


class MatroidConsistencyError(RuntimeError):
    """An oracle answered in a way no matroid can (a bug, not bad input)."""


class Matroid:
    """Base class. Subclasses implement :meth:`_independent` on a frozenset."""

    ground_size: int

    def __init__(self, ground_size: int):
        if ground_size < 0:
            raise MatroidError("ground_size must be non-negative")
        self.ground_size = ground_size
        self._rank_total: int | None = None

    # subclasses ---------------------------------------------------------
    def _independent(self, s: frozenset[int]) -> bool:
        raise NotImplementedError

    # oracle -------------------------------------------------------------
    def _check(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        for e in s:
            if not (0 <= e < self.ground_size):
                raise MatroidError(f"element {e} outside ground set of size {self.ground_size}")
        return s

    def is_independent(self, s: Iterable[int]) -> bool:
        return self._independent(self._check(s))

    @property
    def rank_total(self) -> int:
        if self._rank_total is None:
            self._rank_total = self.rank(range(self.ground_size))
        return self._rank_total

    def rank(self, s: Iterable[int]) -> int:
        """Greedy insertion; exact for matroids."""
        return len(self.maximal_independent(s))

    def maximal_independent(self, s: Iterable[int]) -> list[int]:
        s = self._check(s)
        basis: list[int] = []
        for e in sorted(s):
            if self._independent(frozenset(basis) | {e}):
                basis.append(e)
        return basis

    def spans(self, s: Iterable[int], u: int) -> bool:
        s = self._check(s)
        self._check((u,))
        return self.rank(s) == self.rank(s | {u})

    def is_base(self, s: Iterable[int]) -> bool:
        s = self._check(s)
        return len(s) == self.rank_total and self._independent(s)

    def circuit_of(self, s: Iterable[int], u: int, check: bool = True) -> frozenset[int]:
        """The unique circuit of ``s + u`` for independent ``s`` and dependent ``s + u``.

        An element belongs to the circuit exactly when dropping it restores
        independence.
        """
        s = self._check(s)
        self._check((u,))
        if u in s:
            raise MatroidError("u must not be in S")
        if not self._independent(s):
            raise MatroidError("S must be independent")
        su = s | {u}
        if self._independent(su):
            raise MatroidError("S + u is independent; there is no circuit")
        circuit = frozenset(w for w in su if self._independent(su - {w}))
        if check:
            if u not in circuit or self._independent(circuit):
                raise MatroidConsistencyError(f"bad circuit {sorted(circuit)}")
            for w in circuit:
                if not self._independent(circuit - {w}):
                    raise MatroidConsistencyError(f"circuit {sorted(circuit)} is not minimal")
        return circuit

    def basis_exchange(self, b1: Iterable[int], b2: Iterable[int], u: int, check: bool = True) -> int:
        """Strong exchange: some ``v`` in ``b2 - b1`` with both swaps independent.

        ``b1`` and ``b2`` must be independent sets of equal size (bases of a
        common truncation).
        """
        b1 = self._check(b1)
        b2 = self._check(b2)
        if u not in b1 or u in b2:
            raise MatroidError("u must lie in B1 \\ B2")
        if len(b1) != len(b2):
            raise MatroidError("B1 and B2 must have equal size")
        b1_u = b1 - {u}
        b2_u = b2 | {u}
        for v in sorted(b2 - b1):
            if self._independent(b1_u | {v}) and self._independent(b2_u - {v}):
                if check and not (self.is_independent(b1_u | {v}) and self.is_independent(b2_u - {v})):
                    raise MatroidConsistencyError("independence oracle is not deterministic")
                return v
        raise MatroidConsistencyError(
            f"no strong exchange partner for {u} between {sorted(b1)} and {sorted(b2)}"
        )

    def exchange_partition(
        self, i: Iterable[int], i1: Iterable[int], j: Iterable[int], max_size: int = 20
    ) -> tuple[frozenset[int], frozenset[int]]:
        """Split ``j`` into (J1, J2) with ``I1 | J2`` and ``I2 | J1`` independent.

        Exhaustive over the 2**|J| splits, so ``|J|`` is capped.
        """
        i = self._check(i)
        i1 = self._check(i1)
        j = self._check(j)
        if not i1 <= i:
            raise MatroidError("I1 must be a subset of I")
        if not (self._independent(i) and self._independent(j)):
            raise MatroidError("I and J must be independent")
        if len(j) > max_size:
            raise MatroidError(f"|J| = {len(j)} exceeds the exhaustive-search cap of {max_size}")
        i2 = i - i1
        elems = sorted(j)
        for mask in range(1 << len(elems)):
            j1 = frozenset(e for k, e in enumerate(elems) if mask >> k & 1)
            j2 = j - j1
            if self._independent(i1 | j2) and self._independent(i2 | j1):
                return j1, j2
        raise MatroidConsistencyError("block exchange failed; oracle is not a matroid")


class UniformMatroid(Matroid):
    def __init__(self, ground_size: int, k: int):
        super().__init__(ground_size)
        if k < 1:
            raise MatroidError("uniform capacity must be >= 1 (no self-loops)")
        self.k = k

    def _independent(self, s):
        return len(s) <= self.k

    def __repr__(self):
        return f"UniformMatroid(n={self.ground_size}, k={self.k})"


class PartitionMatroid(Matroid):
    def __init__(self, blocks: Sequence[int], capacities: Sequence[int]):
        super().__init__(len(blocks))
        self.blocks = tuple(int(b) for b in blocks)
        self.capacities = tuple(int(c) for c in capacities)
        for b in self.blocks:
            if not (0 <= b < len(self.capacities)):
                raise MatroidError(f"block id {b} has no capacity")
        if any(self.capacities[b] < 1 for b in self.blocks):
            raise MatroidError("a used block with capacity 0 would make its elements self-loops")

    def _independent(self, s):
        counts: dict[int, int] = {}
        for e in s:
            b = self.blocks[e]
            counts[b] = counts.get(b, 0) + 1
            if counts[b] > self.capacities[b]:
                return False
        return True

    def __repr__(self):
        return f"PartitionMatroid(n={self.ground_size}, blocks={len(self.capacities)})"


class GraphicMatroid(Matroid):
    """Edges of a multigraph; a set is independent iff it is a forest."""

    def __init__(self, n_vertices: int, edges: Sequence[tuple[int, int]]):
        super().__init__(len(edges))
        self.n_vertices = n_vertices
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        for a, b in self.edges:
            if not (0 <= a < n_vertices and 0 <= b < n_vertices):
                raise MatroidError(f"edge ({a}, {b}) has an endpoint outside the vertex set")
            if a == b:
                raise MatroidError(f"edge ({a}, {b}) is a self-loop")

    def _independent(self, s):
        parent: dict[int, int] = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for e in s:
            a, b = self.edges[e]
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def __repr__(self):
        return f"GraphicMatroid(V={self.n_vertices}, E={self.ground_size})"


class PaddedMatroid(Matroid):
    """``base`` plus ``n_free`` coloops with ids ``base.ground_size ..``."""

    def __init__(self, base: Matroid, n_free: int):
        super().__init__(base.ground_size + n_free)
        self.base = base
        self.n_free = n_free

    def _independent(self, s):
        n = self.base.ground_size
        return self.base._independent(frozenset(e for e in s if e < n))


def iter_independent_sets(m: Matroid, elements: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Independent subsets of ``elements`` by increasing size, then lexicographically.

    Dependent sets are never extended (downward closure), which keeps this usable
    for ground sets of a couple of dozen elements with small rank.
    """
    elems = sorted(set(range(m.ground_size) if elements is None else elements))
    m._check(elems)
    level: list[tuple[int, ...]] = [()]
    yield ()
    pos = {e: k for k, e in enumerate(elems)}
    while level:
        nxt = []
        for s in level:
            start = pos[s[-1]] + 1 if s else 0
            base = frozenset(s)
            for e in elems[start:]:
                if m._independent(base | {e}):
                    nxt.append(s + (e,))
        yield from nxt
        level = nxt


def iter_bases(m: Matroid) -> Iterator[tuple[int, ...]]:
    r = m.rank_total
    for s in itertools.combinations(range(m.ground_size), r):
        if m._independent(frozenset(s)):
            yield s
