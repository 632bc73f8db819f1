import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from submodstream.objective import (
    CoverageFunction,
    CutFunction,
    ModularFunction,
    ObjectiveError,
    SubmodularFunction,
    check_submodular,
)

from conftest import random_coverage


def test_coverage_values():
    f = CoverageFunction([[0, 1], [1, 2], []], [1.0, 2.0, 4.0])
    assert f.value([]) == 0.0
    assert f.value([0]) == 3.0
    assert f.value([0, 1]) == 7.0
    assert f.value([2]) == 0.0
    assert f.marginal(1, [0]) == 4.0


def test_cut_values():
    f = CutFunction(3, [(0, 1, 1.0), (1, 2, 2.0)])
    assert f.value([1]) == 3.0
    assert f.value([0, 1, 2]) == 0.0
    assert f.value([0, 2]) == 3.0
    assert not f.is_monotone


def test_modular_values():
    f = ModularFunction([3.0, 1.0, 2.0])
    assert f.value([0, 2]) == 5.0


def test_input_errors():
    with pytest.raises(ObjectiveError):
        CoverageFunction([[5]], [1.0])
    with pytest.raises(ObjectiveError):
        CoverageFunction([[0]], [-1.0])
    f = ModularFunction([1.0])
    with pytest.raises(ObjectiveError):
        f.value([1])


def test_call_counter():
    f = ModularFunction([1.0, 2.0])
    f.value([0])
    f.value_batch(np.ones((3, 2), dtype=bool))
    assert f.calls == 4


def test_ordered_marginal():
    f = CoverageFunction([[0], [0, 1], [1]], [1.0, 1.0])
    order = {0: 1, 1: 2, 2: 3}
    # only element 0 precedes 1 among {0, 2}
    assert f.ordered_marginal(1, [0, 2], order) == 1.0
    with pytest.raises(ObjectiveError):
        f.ordered_marginal(1, [0], {1: 1})


@pytest.mark.parametrize("f", [
    random_coverage(1),
    CutFunction(5, [(a, b, 1.0 + a + b) for a in range(5) for b in range(a + 1, 5) if (a + b) % 2]),
    ModularFunction([0.5, 1.5, 0.0, 2.0]),
])
def test_check_submodular_accepts(f):
    assert check_submodular(f) == []


def test_check_submodular_rejects_supermodular():
    class Square(SubmodularFunction):
        is_monotone = True

        def _value(self, s):
            return float(len(s) ** 2)

    assert check_submodular(Square(3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_batch_matches_scalar(seed):
    f = random_coverage(seed)
    rows = np.random.default_rng(seed).random((6, f.ground_size)) < 0.5
    batch = f.value_batch(rows)
    for row, v in zip(rows, batch):
        assert v == pytest.approx(f.value(np.flatnonzero(row).tolist()), abs=1e-12)


def test_cut_batch_matches_scalar():
    f = CutFunction(4, [(0, 1, 1.0), (1, 2, 0.5), (0, 3, 2.0)])
    rows = np.array(list(itertools.product([False, True], repeat=4)))
    for row, v in zip(rows, f.value_batch(rows)):
        assert v == pytest.approx(f.value(np.flatnonzero(row).tolist()))
