import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from submodstream.matroid import GraphicMatroid, UniformMatroid, iter_bases
from submodstream.multilinear import ExactCoverage
from submodstream.objective import ModularFunction
from submodstream.rounding import ConvexCombination, RoundingError, round_best_of, swap_round

from conftest import random_coverage, random_partition


def test_single_set_is_returned():
    m = UniformMatroid(4, 2)
    comb = ConvexCombination([({0, 3}, 1.0)])
    for seed in range(5):
        assert swap_round(m, comb, seed=seed) == {0, 3}


def test_deficit_rounds_to_subset_of_support():
    m = UniformMatroid(4, 2)
    comb = ConvexCombination([({0, 1}, 0.5)])
    rng = np.random.default_rng(1)
    outs = [swap_round(m, comb, rng=rng) for _ in range(2000)]
    assert all(o <= {0, 1} for o in outs)
    for e in (0, 1):
        freq = sum(e in o for o in outs) / len(outs)
        assert abs(freq - 0.5) <= 4 * np.sqrt(0.25 / len(outs))


def test_combination_validation():
    with pytest.raises(RoundingError):
        ConvexCombination([({0}, 0.7), ({1}, 0.6)])
    with pytest.raises(RoundingError):
        ConvexCombination([({0}, 0.0)])
    with pytest.raises(RoundingError):
        swap_round(UniformMatroid(3, 1), ConvexCombination([({0, 1}, 1.0)]))


def test_point_and_merge():
    comb = ConvexCombination([({0, 1}, 0.25), ({0, 1}, 0.25), ({2}, 0.5)])
    assert dict(comb.point()) == {0: 0.5, 1: 0.5, 2: 0.5}
    merged = comb.merged()
    assert len(merged.sets) == 2 and dict(merged.point()) == dict(comb.point())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_output_is_independent(seed):
    m = random_partition(seed)
    rng = np.random.default_rng(seed)
    bases = list(iter_bases(m))
    picks = [bases[int(i)] for i in rng.integers(len(bases), size=3)]
    # one non-base set to exercise padding
    picks[0] = picks[0][:-1]
    comb = ConvexCombination(zip(picks, rng.dirichlet(np.ones(3)) * 0.9))
    out = swap_round(m, comb, seed=seed)
    assert m.is_independent(out)
    assert out <= comb.point().support()


def test_marginals_match_coordinates():
    # triangle plus pendant edge: a graphic matroid with non-trivial exchanges
    m = GraphicMatroid(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    comb = ConvexCombination([({0, 1, 3}, 0.5), ({1, 2, 3}, 0.3), ({0, 2}, 0.2)])
    x = comb.point().dense(4)
    rng = np.random.default_rng(0)
    trials = 4000
    hits = np.zeros(4)
    for _ in range(trials):
        hits[list(swap_round(m, comb, rng=rng))] += 1
    freq = hits / trials
    se = np.sqrt(x * (1 - x) / trials)
    assert np.all(np.abs(freq - x) <= 4 * se + 1e-12)


def test_round_best_of_beats_listed_sets():
    m = UniformMatroid(5, 2)
    f = ModularFunction([1.0, 5.0, 2.0, 4.0, 0.5])
    comb = ConvexCombination([({0, 2}, 0.5), ({1, 3}, 0.5)])
    assert round_best_of(m, comb, f, trials=4) == {1, 3}


def test_round_best_of_at_least_F_on_average():
    m = random_partition(3)
    f = random_coverage(3)
    bases = list(iter_bases(m))[:4]
    comb = ConvexCombination.uniform(bases)
    best = round_best_of(m, comb, f, trials=16, seed=1)
    assert f.value(best) >= ExactCoverage(f).F(comb.point().dense(f.ground_size)) - 1e-9
