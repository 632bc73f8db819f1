import pytest

from submodstream.harness.baselines import brute_force_opt
from submodstream.harness.generators import coverage_instance
from submodstream.harness.instances import build
from submodstream.matroid import UniformMatroid
from submodstream.multilinear import EstimatorConfig, MonteCarlo
from submodstream.objective import CoverageFunction
from submodstream.two_player import (
    ScaleError,
    TwoPlayerInstance,
    alice,
    best_independent_subset,
    bob,
    message_bound,
    run_protocol,
)

from conftest import random_coverage, random_partition


def two_sets():
    # coverage with singleton values 1 and 2, uniform rank 1
    return CoverageFunction([[0], [1, 2]], [1.0, 1.0, 1.0]), UniformMatroid(2, 1)


def test_empty_alice_sends_nothing():
    f, m = two_sets()
    msg = alice(TwoPlayerInstance.split(m, f, []), h=5)
    assert msg.elements == frozenset()


def test_alice_small_example():
    f, m = two_sets()
    msg = alice(TwoPlayerInstance.split(m, f, [0, 1]), h=5)
    assert msg.opt_alice == frozenset({1})
    assert all(c == frozenset({1}) for c in msg.steps)
    assert msg.elements <= {0, 1}


def test_bob_cases():
    f, m = two_sets()
    inst = TwoPlayerInstance.split(m, f, [0, 1])
    msg = alice(inst, h=3)
    assert bob(msg, inst) == best_independent_subset(m, f.value, msg.elements, 16)[0]
    inst = TwoPlayerInstance.split(m, f, [])
    assert bob(alice(inst, h=3), inst) == frozenset({1})


def test_scale_and_oracle_errors():
    f, m = random_coverage(0, n=8), random_partition(0, n=8)
    inst = TwoPlayerInstance.split(m, f, range(8), cap=4)
    with pytest.raises(ScaleError, match="cap"):
        alice(inst, h=2)
    inst = TwoPlayerInstance.split(m, f, range(4))
    with pytest.raises(ValueError):
        alice(inst, h=2, oracle=MonteCarlo(f, EstimatorConfig(100, 0)))
    with pytest.raises(ValueError):
        TwoPlayerInstance.split(m, f, [99])


@pytest.mark.parametrize("seed", range(3))
def test_protocol_on_random_coverage(seed):
    m, f = build(coverage_instance(seed, ground_size=12))
    inst = TwoPlayerInstance.split(m, f, range(0, 12, 2))
    msg, r = run_protocol(inst)
    assert msg.elements <= inst.alice
    assert len(msg.elements) <= message_bound(125, m.rank_total)
    assert m.is_independent(msg.opt_alice) and m.is_independent(msg.w)
    assert all(m.is_independent(c) for c in msg.steps)
    assert m.is_independent(r)
    assert f.value(r) >= f.value(msg.opt_alice) - 1e-12
    _, opt = brute_force_opt(m, f)
    assert f.value(r) >= 0.505 * opt - 1e-9
