import random
from fractions import Fraction
from itertools import product

import pytest

from kserverlab.algorithms import (
    Greedy,
    OnlineAlgorithm,
    WorkFunctionAlgorithm,
    compute_bounds,
    simulate,
    wrap_resetting,
)
from kserverlab.errors import NonPositiveEpsilon
from kserverlab.metric import line_metric, seq_dist, uniform_metric
from kserverlab.offline import opt_cost
from oracles import random_metric


class ScriptedCosts(OnlineAlgorithm):
    """Test stub: burns through a fixed cost trace by either staying put
    (cost 0) or bouncing a server between two spare points."""

    def __init__(self, costs):
        self.costs = list(costs)
        self.resets = 0

    def _start(self):
        self.resets += 1

    def _answer(self, r):
        cost = self.costs.pop(0)
        if cost == 0:
            assert r in self.config
            return self.config
        assert r not in self.config
        moved = max(self.config)
        return tuple(sorted(set(self.config) - {moved} | {r}))


class TestGreedy:
    def test_covered_is_free(self, uniform3):
        alg = Greedy()
        alg.reset(uniform3, (0, 1))
        assert alg.step(0) == 0
        assert alg.config == (0, 1)

    def test_uniform_moves_lowest_index(self, uniform3):
        alg = Greedy()
        alg.reset(uniform3, (0, 1))
        assert alg.step(2) == 1
        assert alg.config == (1, 2)

    def test_line_moves_nearest(self, line3):
        alg = Greedy()
        alg.reset(line3, (0, 1))
        assert alg.step(2) == 2
        assert alg.config == (0, 2)


class TestWFA:
    def test_covered_is_free(self, line3):
        alg = WorkFunctionAlgorithm()
        alg.reset(line3, (0, 1))
        assert alg.step(1) == 0

    def test_uniform_tie_break(self, uniform3):
        alg = WorkFunctionAlgorithm()
        alg.reset(uniform3, (0, 1))
        assert alg.step(2) == 1
        assert alg.config == (0, 2)

    def test_cost_bound_exhaustive(self, uniform3):
        # cost <= (2k-1) opt + (2k-1) B over every sequence up to T=5
        k = 2
        B = k * uniform3.max_distance
        slack = (2 * k - 1) * B
        alg = WorkFunctionAlgorithm()
        for t in range(1, 6):
            for rho in product(range(3), repeat=t):
                cost, _ = simulate(alg, uniform3, (0, 1), rho)
                assert cost <= (2 * k - 1) * opt_cost(uniform3, (0, 1), rho) + slack


class TestResetting:
    def test_reset_after_second_paid(self, uniform3):
        inner = ScriptedCosts([1, 0, 1, 1])
        wrapped = wrap_resetting(inner, D=2)
        simulate(wrapped, uniform3, (0, 1), (2, 0, 1, 2))
        assert wrapped.reset_steps == [3]

    def test_zero_cost_run_never_resets(self, uniform3):
        inner = ScriptedCosts([0, 0, 0, 0])
        wrapped = wrap_resetting(inner, D=1)
        simulate(wrapped, uniform3, (0, 1), (0, 1, 0, 1))
        assert wrapped.reset_steps == []

    def test_d_one_resets_every_paid(self, uniform3):
        inner = ScriptedCosts([1, 0, 1])
        wrapped = wrap_resetting(inner, D=1)
        simulate(wrapped, uniform3, (0, 1), (2, 0, 1))
        assert wrapped.reset_steps == [1, 3]

    def test_transparent_below_threshold(self, uniform3):
        # fewer than D paid answers: wrapped and bare runs agree
        rho = (2, 0, 1)
        cost_plain, ans_plain = simulate(Greedy(), uniform3, (0, 1), rho)
        cost_wrapped, ans_wrapped = simulate(
            wrap_resetting(Greedy(), D=10), uniform3, (0, 1), rho
        )
        assert (cost_plain, ans_plain) == (cost_wrapped, ans_wrapped)

    def test_bad_d(self):
        with pytest.raises(ValueError):
            wrap_resetting(Greedy(), 0)


class TestBounds:
    def test_uniform3_reference_values(self, uniform3):
        b = compute_bounds(uniform3, 2, Fraction(3), Fraction(0), Fraction(1))
        assert b.B == 2
        assert b.opt_threshold == 4
        assert b.phi == 12
        assert b.D == 48
        assert b.xi == (Fraction(50), Fraction(2500))

    def test_xi_recursion(self, uniform3):
        b = compute_bounds(uniform3, 2, Fraction(3), Fraction(0), Fraction(1))
        assert b.xi[1] == b.xi[0] * b.xi[0] == 2500

    def test_invariants_recomputed(self, line3):
        from kserverlab.metric import normalize

        m = normalize(line3)
        k, c, alpha, eps = 2, Fraction(5, 2), Fraction(1, 3), Fraction(1, 7)
        b = compute_bounds(m, k, c, alpha, eps)
        B = k * m.max_distance
        assert b.B == B
        assert b.opt_threshold == 2 * B / eps
        assert b.phi == c * b.opt_threshold + alpha
        assert b.D == -(-(b.phi * b.opt_threshold).numerator // (b.phi * b.opt_threshold).denominator)
        assert b.xi[0] == 2 + 2 * B * b.phi / eps

    def test_epsilon_guard(self, uniform3):
        with pytest.raises(NonPositiveEpsilon):
            compute_bounds(uniform3, 2, Fraction(3), Fraction(0), Fraction(0))


class TestSimulate:
    def test_empty(self, uniform3):
        cost, answers = simulate(Greedy(), uniform3, (0, 1), ())
        assert cost == 0 and answers == []

    def test_greedy_trace(self, uniform3):
        # lowest-index origin moves on ties: first 0 -> 2, then 1 -> 0
        cost, answers = simulate(Greedy(), uniform3, (0, 1), (2, 0))
        assert answers == [(1, 2), (0, 2)]
        assert cost == 2

    def test_total_is_seq_dist(self, line3):
        cost, answers = simulate(WorkFunctionAlgorithm(), line3, (0, 1), (2, 0, 1))
        assert cost == seq_dist(line3, (0, 1), answers)

    def test_never_beats_opt(self):
        rng = random.Random(43)
        for _ in range(10):
            m = random_metric(rng, 4)
            rho = tuple(rng.randrange(4) for _ in range(4))
            for alg in (Greedy(), WorkFunctionAlgorithm()):
                cost, _ = simulate(alg, m, (0, 1), rho)
                assert cost >= opt_cost(m, (0, 1), rho)

    def test_k1_greedy_is_optimal(self):
        rng = random.Random(47)
        for _ in range(10):
            m = random_metric(rng, 3)
            rho = tuple(rng.randrange(3) for _ in range(4))
            cost, _ = simulate(Greedy(), m, (0,), rho)
            assert cost == opt_cost(m, (0,), rho)
