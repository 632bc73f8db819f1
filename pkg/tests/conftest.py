import numpy as np
import pytest

from submodstream.matroid import PartitionMatroid
from submodstream.objective import CoverageFunction


def random_coverage(seed, n=8, universe=12, density=0.3):
    rng = np.random.default_rng(seed)
    covers = [list(np.flatnonzero(rng.random(universe) < density)) for _ in range(n)]
    return CoverageFunction(covers, rng.uniform(0.1, 1.0, size=universe))


def random_partition(seed, n=8, blocks=3):
    rng = np.random.default_rng(seed + 10_000)
    return PartitionMatroid(rng.integers(0, blocks, size=n).tolist(), rng.integers(1, 3, size=blocks).tolist())


@pytest.fixture
def small_instance():
    return random_partition(0), random_coverage(0)
