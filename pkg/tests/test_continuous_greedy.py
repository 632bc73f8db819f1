import math

import numpy as np
import pytest

from submodstream.continuous_greedy import (
    DSCGConfig,
    GreedyConfigError,
    Surrogate,
    acg_procedure,
    discretized_continuous_greedy,
    dscg,
)
from submodstream.harness.baselines import brute_force_opt
from submodstream.matroid import UniformMatroid
from submodstream.multilinear import ExactCoverage, exact_F_enumerate
from submodstream.objective import CutFunction

from conftest import random_coverage, random_partition


def test_config():
    cfg = DSCGConfig(0.2)
    assert cfg.rounds == 5
    assert cfg.delta == pytest.approx(0.024)
    assert DSCGConfig(0.1).rounds == 10
    for bad in (0.0, 1 - 1 / math.e, 0.7):
        with pytest.raises(GreedyConfigError):
            DSCGConfig(bad)


def test_surrogate_matches_enumeration_and_copies_point():
    f = random_coverage(4)
    x = np.linspace(0.0, 0.5, f.ground_size)
    g = Surrogate(ExactCoverage(f), x, 0.3)
    x[:] = 0.0
    y = np.linspace(0.0, 0.5, f.ground_size)
    y[[1, 3]] += 0.3
    assert g.value({1, 3}) == pytest.approx(exact_F_enumerate(f, y), abs=1e-12)
    with pytest.raises(GreedyConfigError):
        Surrogate(ExactCoverage(f), np.full(f.ground_size, 0.9), 0.3)


def test_acg_rejects_points_outside_shrunk_polytope():
    f = random_coverage(4)
    m = random_partition(4)
    with pytest.raises(GreedyConfigError):
        acg_procedure(np.zeros(8), 0.2, m, ExactCoverage(f), range(8), x_weight=0.9)


@pytest.mark.parametrize("seed", range(4))
def test_dscg_ratio_and_decomposition(seed):
    m, f = random_partition(seed), random_coverage(seed)
    cfg = DSCGConfig(0.2)
    res = dscg(cfg, m, ExactCoverage(f), list(range(8)), round_trials=16, seed=seed)
    assert len(res.bases) == cfg.rounds
    assert all(m.is_base(b) for b in res.bases)
    assert m.is_independent(res.solution)
    _, opt = brute_force_opt(m, f)
    assert res.value >= (1 - 1 / math.e - cfg.epsilon) * opt - 1e-9


def test_dscg_rejects_non_monotone():
    f = CutFunction(3, [(0, 1, 1.0), (1, 2, 1.0)])
    with pytest.raises(GreedyConfigError):
        dscg(DSCGConfig(0.2), UniformMatroid(3, 1), _cut_oracle(f), range(3))


def _cut_oracle(f):
    from submodstream.multilinear import ExactEnumeration

    return ExactEnumeration(f)


def test_discretized_greedy_steps_are_maximal():
    m, f = random_partition(2), random_coverage(2)
    alice = [0, 2, 4, 6]
    steps = discretized_continuous_greedy(m, alice, 5, ExactCoverage(f))
    assert len(steps) == 5
    for s in steps:
        assert s <= set(alice)
        assert m.is_independent(s) and len(s) == m.rank(alice)
    with pytest.raises(GreedyConfigError):
        discretized_continuous_greedy(m, alice, 0, ExactCoverage(f))
