"""Multilinear extension F(x) = E[f(R(x))] and its single-coordinate derivatives.

Three evaluators share one interface (``F`` and ``partial``):

* :class:`ExactCoverage` uses the closed form for coverage functions.
* :class:`ExactEnumeration` sums over all subsets of the support; any oracle,
  small supports only.  Used as an independent check for the other two.
* :class:`MonteCarlo` averages f over counter-seeded samples.  The same sample
  matrix is reused for every query (common random numbers), so derivative
  estimates are coupled: both endpoints see identical draws for every
  coordinate except the one being differentiated.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .numerics import sample_uniforms
from .objective import CoverageFunction, SubmodularFunction

DEFAULT_SAMPLES = 2000


class MultilinearError(ValueError):
    pass


class FractionalPoint(dict):
    """Sparse point of [0, 1]^N: element id -> coordinate; absent ids are 0."""

    def __init__(self, coords: Mapping[int, float] | Iterable[tuple[int, float]] = (), ground_size: int | None = None):
        super().__init__()
        items = coords.items() if isinstance(coords, Mapping) else coords
        for e, v in items:
            e, v = int(e), float(v)
            if not (0.0 <= v <= 1.0) or np.isnan(v):
                raise MultilinearError(f"coordinate {e} = {v} outside [0, 1]")
            if e < 0 or (ground_size is not None and e >= ground_size):
                raise MultilinearError(f"element {e} outside ground set")
            if v > 0.0:
                self[e] = v

    @classmethod
    def indicator(cls, s: Iterable[int], weight: float = 1.0) -> FractionalPoint:
        return cls({e: weight for e in s})

    def dense(self, n: int) -> np.ndarray:
        x = np.zeros(n)
        for e, v in self.items():
            if e >= n:
                raise MultilinearError(f"element {e} outside ground set of size {n}")
            x[e] = v
        return x

    def support(self) -> frozenset[int]:
        return frozenset(self)


def as_dense(x, n: int) -> np.ndarray:
    """Accept a FractionalPoint / mapping / array and return a validated dense vector."""
    if isinstance(x, np.ndarray):
        arr = np.asarray(x, dtype=float)
        if arr.shape != (n,):
            raise MultilinearError(f"expected shape ({n},), got {arr.shape}")
    else:
        arr = FractionalPoint(x).dense(n)
    if np.any(arr < 0.0) or np.any(arr > 1.0) or np.any(np.isnan(arr)):
        raise MultilinearError("coordinates must lie in [0, 1]")
    return arr


@dataclass(frozen=True)
class EstimatorConfig:
    sample_count: int = DEFAULT_SAMPLES
    base_seed: int = 0

    def __post_init__(self):
        if self.sample_count < 1:
            raise MultilinearError("sample_count must be >= 1")


def exact_F_coverage(c: CoverageFunction, x) -> float:
    """sum_v w_v * (1 - prod_{e covers v} (1 - x_e))."""
    xd = as_dense(x, c.ground_size)
    c._count()
    return _coverage_F(c, xd)


def _coverage_F(c: CoverageFunction, xd: np.ndarray) -> float:
    miss = np.where(c.incidence, (1.0 - xd)[:, None], 1.0).prod(axis=0)
    return float(c.weights @ (1.0 - miss))


def exact_F_enumerate(f: SubmodularFunction, x, max_support: int = 20) -> float:
    """Direct sum over the subsets of supp(x); exponential in the support size."""
    xd = as_dense(x, f.ground_size)
    supp = np.flatnonzero(xd > 0.0)
    if len(supp) > max_support:
        raise MultilinearError(f"support {len(supp)} too large for enumeration (cap {max_support})")
    total = 0.0
    for bits in itertools.product((0, 1), repeat=len(supp)):
        prob = 1.0
        s = []
        for e, bit in zip(supp, bits):
            if bit:
                prob *= xd[e]
                s.append(int(e))
            else:
                prob *= 1.0 - xd[e]
        if prob > 0.0:
            total += prob * f.value(s)
    return total


def estimate_F(f: SubmodularFunction, x, cfg: EstimatorConfig) -> float:
    return MonteCarlo(f, cfg).F(x)


def partial_derivative(f: SubmodularFunction, x, u: int, cfg: EstimatorConfig | None = None) -> float:
    """dF/dx_u = F(x with x_u = 1) - F(x with x_u = 0).

    Exact for coverage functions when ``cfg`` is None, otherwise a coupled
    Monte-Carlo estimate.
    """
    if cfg is None:
        if not isinstance(f, CoverageFunction):
            raise MultilinearError("exact derivatives need a coverage function; pass an EstimatorConfig")
        return ExactCoverage(f).partial(x, u)
    return MonteCarlo(f, cfg).partial(x, u)


class Multilinear:
    """Interface: ``F(x)`` and ``partial(x, u)`` for the extension of ``self.f``."""

    f: SubmodularFunction
    exact: bool

    def F(self, x) -> float:
        raise NotImplementedError

    def partial(self, x, u: int) -> float:
        xd = as_dense(x, self.f.ground_size).copy()
        xd[u] = 1.0
        hi = self.F(xd)
        xd[u] = 0.0
        return hi - self.F(xd)


class ExactCoverage(Multilinear):
    exact = True

    def __init__(self, f: CoverageFunction):
        if not isinstance(f, CoverageFunction):
            raise MultilinearError("the exact oracle only supports coverage objectives")
        self.f = f

    def F(self, x):
        return exact_F_coverage(self.f, x)

    def partial(self, x, u):
        xd = as_dense(x, self.f.ground_size)
        if not (0 <= u < self.f.ground_size):
            raise MultilinearError(f"element {u} outside ground set")
        self.f._count(2)
        # Points covered by u gain w_v * prod_{e != u}(1 - x_e).
        others = xd.copy()
        others[u] = 0.0
        miss = np.where(self.f.incidence, (1.0 - others)[:, None], 1.0).prod(axis=0)
        return float(self.f.weights[self.f.incidence[u]] @ miss[self.f.incidence[u]])


class ExactEnumeration(Multilinear):
    exact = True

    def __init__(self, f: SubmodularFunction, max_support: int = 16):
        self.f = f
        self.max_support = max_support

    def F(self, x):
        return exact_F_enumerate(self.f, x, self.max_support)


class MonteCarlo(Multilinear):
    exact = False

    def __init__(self, f: SubmodularFunction, cfg: EstimatorConfig | None = None):
        self.f = f
        self.cfg = cfg or EstimatorConfig()
        self._uniforms: np.ndarray | None = None

    @property
    def uniforms(self) -> np.ndarray:
        if self._uniforms is None:
            self._uniforms = sample_uniforms(self.cfg.base_seed, self.cfg.sample_count, self.f.ground_size)
        return self._uniforms

    def samples(self, x) -> np.ndarray:
        """Boolean (sample_count, n) matrix; row i is R(x) under sample i's draws."""
        xd = as_dense(x, self.f.ground_size)
        return self.uniforms < xd[None, :]

    def F(self, x):
        return float(np.mean(self.f.value_batch(self.samples(x))))

    def F_with_stderr(self, x) -> tuple[float, float]:
        vals = self.f.value_batch(self.samples(x))
        if len(vals) < 2:
            return float(vals.mean()), float("inf")
        return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(len(vals)))

    def partial(self, x, u):
        if not (0 <= u < self.f.ground_size):
            raise MultilinearError(f"element {u} outside ground set")
        draws = self.samples(x)
        draws[:, u] = True
        hi = self.f.value_batch(draws)
        draws[:, u] = False
        lo = self.f.value_batch(draws)
        return float(np.mean(hi - lo))


def make_multilinear(f: SubmodularFunction, exact: bool = False, cfg: EstimatorConfig | None = None) -> Multilinear:
    """Exact closed form when requested (coverage only), otherwise Monte-Carlo."""
    if exact:
        if not isinstance(f, CoverageFunction):
            raise MultilinearError("--exact-oracle requires a coverage objective")
        return ExactCoverage(f)
    return MonteCarlo(f, cfg)
