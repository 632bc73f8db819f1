import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from submodstream.multilinear import (
    EstimatorConfig,
    ExactCoverage,
    ExactEnumeration,
    FractionalPoint,
    MonteCarlo,
    MultilinearError,
    estimate_F,
    exact_F_coverage,
    exact_F_enumerate,
    make_multilinear,
    partial_derivative,
)
from submodstream.numerics import mix64, mix64_array, sample_uniforms
from submodstream.objective import CoverageFunction, CutFunction

from conftest import random_coverage

TWO_SETS = CoverageFunction([[0], [0]], [1.0])


def test_zero_point():
    f = random_coverage(3)
    assert exact_F_coverage(f, {}) == 0.0
    assert estimate_F(f, {}, EstimatorConfig(50, 1)) == 0.0


def test_indicator_point():
    f = random_coverage(3)
    s = [0, 2, 5]
    assert exact_F_coverage(f, FractionalPoint.indicator(s)) == pytest.approx(f.value(s))
    # integral points are exact for every seed
    for seed in range(3):
        assert estimate_F(f, FractionalPoint.indicator(s), EstimatorConfig(10, seed)) == pytest.approx(f.value(s))


def test_shared_point_example():
    assert exact_F_coverage(TWO_SETS, {0: 0.5, 1: 0.5}) == pytest.approx(0.75)


def test_partial_examples():
    assert partial_derivative(TWO_SETS, {1: 0.5}, 0) == pytest.approx(0.5)
    f = random_coverage(4)
    for u in range(f.ground_size):
        assert partial_derivative(f, {}, u) == pytest.approx(f.value([u]))


def test_point_validation():
    with pytest.raises(MultilinearError):
        FractionalPoint({0: 1.5})
    with pytest.raises(MultilinearError):
        exact_F_coverage(TWO_SETS, np.array([0.2, -0.1]))
    with pytest.raises(MultilinearError):
        EstimatorConfig(0)
    with pytest.raises(MultilinearError):
        make_multilinear(CutFunction(2, [(0, 1, 1.0)]), exact=True)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_closed_form_matches_enumeration(seed):
    f = random_coverage(seed, n=7)
    x = np.random.default_rng(seed).random(7)
    assert exact_F_coverage(f, x) == pytest.approx(exact_F_enumerate(f, x), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_multilinear_in_each_coordinate(seed):
    f = random_coverage(seed)
    rng = np.random.default_rng(seed)
    x = rng.random(f.ground_size)
    u, lam = int(rng.integers(f.ground_size)), float(rng.random())
    lo, hi, mid = x.copy(), x.copy(), x.copy()
    lo[u], hi[u], mid[u] = 0.0, 1.0, lam
    F = ExactCoverage(f).F
    assert F(mid) == pytest.approx((1 - lam) * F(lo) + lam * F(hi), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_monotone_and_concave_along_nonnegative_directions(seed):
    f = random_coverage(seed)
    rng = np.random.default_rng(seed)
    x = rng.random(f.ground_size) * 0.5
    d = rng.random(f.ground_size) * 0.5
    F = ExactCoverage(f).F
    vals = [F(np.minimum(1.0, x + t * d)) for t in np.linspace(0, 1, 11)]
    slopes = np.diff(vals)
    assert np.all(slopes >= -1e-12)
    assert np.all(np.diff(slopes) <= 1e-9)


def test_exact_partial_matches_endpoint_difference():
    f = random_coverage(5)
    x = np.random.default_rng(5).random(f.ground_size)
    oracle = ExactCoverage(f)
    for u in range(f.ground_size):
        hi, lo = x.copy(), x.copy()
        hi[u], lo[u] = 1.0, 0.0
        assert oracle.partial(x, u) == pytest.approx(oracle.F(hi) - oracle.F(lo), abs=1e-12)


def test_monte_carlo_close_to_exact():
    f = random_coverage(6)
    x = np.random.default_rng(6).random(f.ground_size)
    est, se = MonteCarlo(f, EstimatorConfig(20_000, 3)).F_with_stderr(x)
    assert abs(est - exact_F_coverage(f, x)) <= 4 * se


def test_coupled_partial_is_exact_on_sample_sets():
    # with coupled draws the derivative estimate is the mean marginal over the same samples
    f = random_coverage(7)
    x = np.random.default_rng(7).random(f.ground_size)
    mc = MonteCarlo(f, EstimatorConfig(500, 2))
    draws = mc.samples(x)
    u = 3
    manual = np.mean([f.marginal(u, [e for e in np.flatnonzero(row) if e != u]) for row in draws])
    assert mc.partial(x, u) == pytest.approx(manual, abs=1e-12)


def test_monte_carlo_non_coverage_against_enumeration():
    f = CutFunction(5, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 1.5), (0, 4, 1.0)])
    x = np.array([0.2, 0.7, 0.5, 0.1, 0.9])
    est, se = MonteCarlo(f, EstimatorConfig(20_000, 0)).F_with_stderr(x)
    assert abs(est - ExactEnumeration(f).F(x)) <= 4 * se


def test_mix64_matches_splitmix64_reference():
    # first output of the SplitMix64 generator seeded with 0
    assert mix64(0, 0) == 0xE220A8397B1DCDAF
    a = np.array([0, 1, 2**63 + 5], dtype=np.uint64)
    b = np.array([0, 7, 3], dtype=np.uint64)
    assert [int(v) for v in mix64_array(a, b)] == [mix64(int(x), int(y)) for x, y in zip(a, b)]


def test_sample_rows_are_independent_of_count():
    big = sample_uniforms(42, 100, 5)
    small = sample_uniforms(42, 10, 5)
    assert np.array_equal(big[:10], small)
    assert big.min() >= 0.0 and big.max() < 1.0
    assert not np.array_equal(sample_uniforms(43, 10, 5), small)


def test_estimates_are_reproducible():
    f = random_coverage(8)
    x = {0: 0.3, 1: 0.6, 4: 0.9}
    cfg = EstimatorConfig(300, 11)
    assert estimate_F(f, x, cfg) == estimate_F(f, x, cfg)
