"""Shared numeric tolerances and the counter-based randomness used everywhere."""

from __future__ import annotations

import numpy as np

# Relative tolerance for comparing real values that would be exact over the reals.
TAU_CMP = 1e-9

_MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def approx_ge(a: float, b: float, tol: float = TAU_CMP) -> bool:
    """``a >= b`` up to a relative slack of ``tol``."""
    return a >= b - tol * max(abs(a), abs(b), 1.0)


def approx_le(a: float, b: float, tol: float = TAU_CMP) -> bool:
    return approx_ge(b, a, tol)


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & _MASK64
    z = ((z ^ (z >> 27)) * _M2) & _MASK64
    return z ^ (z >> 31)


def mix64(a: int, b: int) -> int:
    """SplitMix64 finalizer applied to ``a + GOLDEN_GAMMA * (b + 1)`` (mod 2**64).

    Constants are the published SplitMix64 ones (Steele, Lea, Flood 2014), so the
    derived streams are identical on every platform.
    """
    return _finalize((a + GOLDEN_GAMMA * (b + 1)) & _MASK64)


def mix64_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorised :func:`mix64` over broadcastable uint64 arrays."""
    with np.errstate(over="ignore"):
        z = np.asarray(a, dtype=np.uint64) + np.uint64(GOLDEN_GAMMA) * (
            np.asarray(b, dtype=np.uint64) + np.uint64(1)
        )
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
        return z ^ (z >> np.uint64(31))


def sample_uniforms(base_seed: int, sample_count: int, width: int) -> np.ndarray:
    """Uniforms in [0, 1) of shape (sample_count, width).

    Row ``i`` depends only on ``mix64(base_seed, i)``, so any subset of rows can be
    regenerated independently and in any order.
    """
    rows = mix64_array(np.uint64(base_seed & _MASK64), np.arange(sample_count, dtype=np.uint64))
    bits = mix64_array(rows[:, None], np.arange(width, dtype=np.uint64)[None, :])
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def make_rng(seed: int) -> np.random.Generator:
    """Philox (counter-based) generator; the one generator family used for instance data."""
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))
