"""Acceptance suite: one test per criterion, each at its stated exact
tolerance, printing one pass/fail line (run with -s or check the captured
output). All comparisons are exact rational unless a tolerance is part of
the criterion itself."""
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from kserverlab.algorithms import (
    OnlineAlgorithm,
    WorkFunctionAlgorithm,
    compute_bounds,
    simulate,
    wrap_resetting,
)
from kserverlab.game import opt_det_ratio
from kserverlab.lp import build_lp, expected_cost, lp_feasible, opt_rand_ratio
from kserverlab.metric import line_metric, uniform_metric
from kserverlab.offline import opt_cost
from oracles import brute_force_det_value, brute_force_opt, random_metric

TOL = Fraction(1, 1024)


@pytest.fixture(autouse=True)
def announce(request, capsys):
    failed = True
    try:
        yield
        failed = False
    finally:
        name = request.node.name
        with capsys.disabled():
            print(f"ACCEPTANCE {name}: {'FAIL' if failed else 'PASS'}")


@pytest.fixture(scope="module")
def uniform3():
    return uniform_metric(3, ["a", "b", "c"])


@pytest.fixture(scope="module")
def line3():
    return line_metric([0, 1, 3], ["a", "b", "c"])


def test_1_exact_deterministic_value(uniform3):
    start = time.perf_counter()
    oracle = brute_force_det_value(uniform3, 2, (0, 1), 2)
    assert time.perf_counter() - start < 1.0
    assert oracle == 2
    assert opt_det_ratio(uniform3, 2, (0, 1), 2).value == 2
    assert opt_det_ratio(uniform3, 2, (0, 1), 1).value == 1


def test_2_exact_randomized_value(uniform3):
    start = time.perf_counter()
    lo, hi, _ = opt_rand_ratio(uniform3, 2, (0, 1), 2, TOL)
    assert hi - lo <= TOL
    assert lo <= Fraction(3, 2) <= hi
    ok, _ = lp_feasible(build_lp(uniform3, 2, (0, 1), 2, Fraction(3, 2)))
    assert ok
    ok, _ = lp_feasible(build_lp(uniform3, 2, (0, 1), 2, Fraction(3, 2) - TOL))
    assert not ok
    assert time.perf_counter() - start < 60.0


def test_3_k1_collapse():
    rng = random.Random(101)
    for i in range(5):
        n = rng.choice([3, 4])
        m = random_metric(rng, n)
        T = rng.choice([1, 2, 3])
        assert opt_det_ratio(m, 1, (0,), T).value == 1
        lo, hi, _ = opt_rand_ratio(m, 1, (0,), T, TOL)
        assert lo == hi == 1


def test_4_offline_oracle_equivalence():
    rng = random.Random(103)
    for _ in range(50):
        n = rng.choice([3, 4])
        k = rng.choice([1, 2])
        m = random_metric(rng, n)
        c0 = tuple(sorted(rng.sample(range(n), k)))
        rho = tuple(rng.randrange(n) for _ in range(rng.randrange(1, 5)))
        assert opt_cost(m, c0, rho) == brute_force_opt(m, k, c0, rho)


def test_5_policy_soundness(uniform3):
    for k, T in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]:
        c0 = tuple(range(k))
        _, hi, policy = opt_rand_ratio(uniform3, k, c0, T, TOL)
        for dist in policy.conditional.values():
            assert sum(dist.values()) == 1
        for rho in product(range(3), repeat=T):
            assert expected_cost(policy, uniform3, c0, rho) <= hi * opt_cost(
                uniform3, c0, rho
            )


def test_6_ordering_and_monotonicity(uniform3, line3):
    for m in (uniform3, line3):
        prev_det = None
        for T in (1, 2, 3):
            det = opt_det_ratio(m, 2, (0, 1), T).value
            _, hi, _ = opt_rand_ratio(m, 2, (0, 1), T, TOL)
            assert hi <= det + TOL
            if prev_det is not None:
                assert det >= prev_det
            prev_det = det


class _ScriptedCosts(OnlineAlgorithm):
    def __init__(self, costs):
        self.costs = list(costs)

    def _answer(self, r):
        if self.costs.pop(0) == 0:
            return self.config
        moved = max(self.config)
        return tuple(sorted(set(self.config) - {moved} | {r}))


def test_7_resetting_fidelity(uniform3):
    wrapped = wrap_resetting(_ScriptedCosts([1, 0, 1, 1]), D=2)
    simulate(wrapped, uniform3, (0, 1), (2, 0, 1, 2))
    assert wrapped.reset_steps == [3]

    wrapped = wrap_resetting(_ScriptedCosts([0, 0, 0]), D=1)
    simulate(wrapped, uniform3, (0, 1), (0, 1, 0))
    assert wrapped.reset_steps == []


def test_8_bound_formulas(uniform3):
    b = compute_bounds(uniform3, 2, Fraction(3), Fraction(0), Fraction(1))
    assert b.B == 2
    assert b.opt_threshold == 4
    assert b.phi == 12
    assert b.D == 48
    assert b.xi[0] == 50
    assert b.xi[1] == 2500


def test_9_wfa_sanity(uniform3):
    k = 2
    B = k * uniform3.max_distance
    alg = WorkFunctionAlgorithm()
    for t in range(1, 6):
        for rho in product(range(3), repeat=t):
            cost, _ = simulate(alg, uniform3, (0, 1), rho)
            opt = opt_cost(uniform3, (0, 1), rho)
            assert cost <= (2 * k - 1) * opt + (2 * k - 1) * B
