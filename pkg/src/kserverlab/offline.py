"""Exact optimal offline cost via work-function dynamic programming.

The work function after t requests maps each configuration C to the
optimal cost of serving the prefix and ending at C; its unconstrained
minimum is the optimal offline cost.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .metric import Config, Metric, all_configurations, config_dist


@dataclass(frozen=True)
class WorkFunction:
    values: Mapping[Config, Fraction]
    prefix_len: int

    def opt(self) -> Fraction:
        """Optimal offline cost of the prefix processed so far."""
        return min(self.values.values())


def wf_init(metric: Metric, c0: Config) -> WorkFunction:
    k = len(c0)
    values = {
        c: config_dist(metric, c0, c) for c in all_configurations(metric.n, k)
    }
    return WorkFunction(values=MappingProxyType(values), prefix_len=0)


def wf_update(metric: Metric, wf: WorkFunction, r: int) -> WorkFunction:
    """Process one request: w'(C) = min over C2 containing r of w(C2) + d(C2, C)."""
    covering = [c for c in wf.values if r in c]
    values = {}
    for c in wf.values:
        values[c] = min(
            wf.values[c2] + config_dist(metric, c2, c) for c2 in covering
        )
    return WorkFunction(values=MappingProxyType(values), prefix_len=wf.prefix_len + 1)


def _wf_trace(metric: Metric, c0: Config, rho: Sequence[int]) -> list[WorkFunction]:
    wfs = [wf_init(metric, c0)]
    for r in rho:
        wfs.append(wf_update(metric, wfs[-1], r))
    return wfs


def opt_cost(metric: Metric, c0: Config, rho: Sequence[int]) -> Fraction:
    """Exact optimal offline cost of serving rho starting from c0."""
    wf = wf_init(metric, c0)
    for r in rho:
        wf = wf_update(metric, wf, r)
    return wf.opt()


def opt_answers(metric: Metric, c0: Config, rho: Sequence[int]) -> list[Config]:
    """One optimal answer sequence, reconstructed by DP backtracking.

    Ties break toward the lexicographically smallest configuration at each
    step, resolved from the last request backwards.
    """
    if not rho:
        return []
    wfs = _wf_trace(metric, c0, rho)
    t = len(rho)
    # For covering C the work function equals the cost of serving the
    # prefix and ending exactly at C, so backtracking over snapshots is
    # exact.
    last_cover = [c for c in wfs[t].values if rho[t - 1] in c]
    best = min(wfs[t].values[c] for c in last_cover)
    answers = [min(c for c in last_cover if wfs[t].values[c] == best)]
    for i in range(t - 1, 0, -1):
        nxt = answers[-1]
        target = wfs[i + 1].values[nxt]
        candidates = [
            c
            for c in wfs[i].values
            if rho[i - 1] in c
            and wfs[i].values[c] + config_dist(metric, c, nxt) == target
        ]
        answers.append(min(candidates))
    answers.reverse()
    return answers
