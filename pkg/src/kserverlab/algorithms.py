"""Online algorithms: greedy and work-function baselines, a fixed-policy
player, the paid-request resetting wrapper, and the phase-bound calculator.

An algorithm is an object with reset(metric, config) and step(r) -> cost;
after step(r) its .config covers r. All state is single-owner and mutated
sequentially.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonPositiveEpsilon
from .metric import Config, Metric, config_dist, seq_dist
from .offline import WorkFunction, wf_init, wf_update


class OnlineAlgorithm:
    """Base class; subclasses implement _start and _answer."""

    metric: Metric
    config: Config

    def reset(self, metric: Metric, config: Config) -> None:
        self.metric = metric
        self.config = tuple(sorted(config))
        self.history: list[Config] = []
        self._start()

    def _start(self) -> None:
        pass

    def _answer(self, r: int) -> Config:
        raise NotImplementedError

    def step(self, r: int) -> Fraction:
        new = self._answer(r)
        assert r in new
        cost = config_dist(self.metric, self.config, new)
        self.config = new
        self.history.append(new)
        return cost


class Greedy(OnlineAlgorithm):
    """Move the server whose trip to the request is cheapest; ties go to
    the lowest origin point index."""

    def _answer(self, r: int) -> Config:
        if r in self.config:
            return self.config
        origin = min(self.config, key=lambda s: (self.metric.d(s, r), s))
        return tuple(sorted(set(self.config) - {origin} | {r}))


class WorkFunctionAlgorithm(OnlineAlgorithm):
    """Lazy work-function baseline: after updating the work function with
    the request, move the single server minimizing w(C') + d(current, C');
    ties break toward the lexicographically smallest configuration."""

    def _start(self) -> None:
        self.wf: WorkFunction = wf_init(self.metric, self.config)

    def _answer(self, r: int) -> Config:
        self.wf = wf_update(self.metric, self.wf, r)
        if r in self.config:
            candidates = [self.config]
        else:
            candidates = sorted(
                tuple(sorted(set(self.config) - {s} | {r})) for s in self.config
            )
        return min(
            candidates,
            key=lambda c: (self.wf.values[c] + config_dist(self.metric, self.config, c), c),
        )


class FixedPolicy(OnlineAlgorithm):
    """Deterministic strategy tree: maps each request prefix to an answer."""

    def __init__(self, tree: dict[tuple[int, ...], Config]):
        self.tree = tree

    def _start(self) -> None:
        self.prefix: tuple[int, ...] = ()

    def _answer(self, r: int) -> Config:
        self.prefix = self.prefix + (r,)
        return self.tree[self.prefix]


class ResettingWrapper(OnlineAlgorithm):
    """Reset the inner algorithm after every D-th paid (nonzero-cost)
    answer; zero-cost answers are not counted. The inner algorithm only
    sees fresh state with its current configuration as initial."""

    def __init__(self, inner: OnlineAlgorithm, D: int):
        if D < 1:
            raise ValueError("D must be >= 1")
        self.inner = inner
        self.D = D

    def _start(self) -> None:
        self.inner.reset(self.metric, self.config)
        self.paid = 0
        self.reset_steps: list[int] = []  # 1-based step indices, for auditing
        self._step_no = 0

    def _answer(self, r: int) -> Config:
        self._step_no += 1
        cost = self.inner.step(r)
        if cost > 0:
            self.paid += 1
            if self.paid % self.D == 0:
                self.inner.reset(self.metric, self.inner.config)
                self.reset_steps.append(self._step_no)
        return self.inner.config


def wrap_resetting(algorithm: OnlineAlgorithm, D: int) -> ResettingWrapper:
    return ResettingWrapper(algorithm, D)


def simulate(
    algorithm: OnlineAlgorithm,
    metric: Metric,
    c0: Config,
    rho: Sequence[int],
) -> tuple[Fraction, list[Config]]:
    """Fold the algorithm over the request sequence from a fresh start."""
    algorithm.reset(metric, c0)
    answers = []
    for r in rho:
        algorithm.step(r)
        answers.append(algorithm.config)
    return seq_dist(metric, tuple(sorted(c0)), answers), answers


@dataclass(frozen=True)
class BoundParameters:
    """Constants controlling phase length and reset discipline for turning
    a (c, alpha)-competitive algorithm into a (c + epsilon)-competitive
    resetting one on a normalized metric."""

    c: Fraction
    alpha: Fraction
    epsilon: Fraction
    B: Fraction
    opt_threshold: Fraction
    phi: Fraction
    D: int
    xi: tuple[Fraction, ...]  # xi[i] is the value for i+2 servers


def compute_bounds(
    metric: Metric, k: int, c: Fraction, alpha: Fraction, epsilon: Fraction
) -> BoundParameters:
    """Evaluate the phase-length bound formulas on a normalized metric.

    B = k * max distance; opt_threshold = 2B/epsilon; phi = c*opt_threshold
    + alpha; D = ceil(phi * opt_threshold); xi_2 = 2 + 2B*phi/epsilon and
    xi_{i+1} = xi_i * xi_2.
    """
    if epsilon <= 0:
        raise NonPositiveEpsilon(f"epsilon = {epsilon}")
    if not metric.is_normalized():
        raise ValueError("bounds require a normalized metric")
    B = k * metric.max_distance
    opt_threshold = 2 * B / epsilon
    phi = c * opt_threshold + alpha
    D = math.ceil(phi * opt_threshold)
    # The chain is reported through index max(k, 3) so the first
    # recursive term is always visible alongside the base case.
    xi: list[Fraction] = []
    if k >= 2:
        xi2 = 2 + 2 * B * phi / epsilon
        xi.append(xi2)
        for _ in range(3, max(k, 3) + 1):
            xi.append(xi[-1] * xi2)
    return BoundParameters(
        c=Fraction(c),
        alpha=Fraction(alpha),
        epsilon=Fraction(epsilon),
        B=B,
        opt_threshold=opt_threshold,
        phi=phi,
        D=D,
        xi=tuple(xi),
    )
