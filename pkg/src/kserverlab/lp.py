"""Linear program deciding whether a randomized strategy with strict
expected competitive ratio tau exists over horizon T, plus binary search
on tau and extraction of the conditional-distribution policy.

Variables are x(rho_t, sigma_t): the probability that the answer prefix
sigma_t is played given that the adversary requested rho_t. The four
constraint families are: each (t, rho_t) block is a probability
distribution; distributions of consecutive prefixes are marginally
consistent; the expected answer cost at the full horizon is at most tau
times the cost of every feasible answer sequence (hence of the optimal
one); nonnegativity.

Every reported feasibility decision is certified by the exact rational
simplex. A floating-point pre-pass (scipy) may steer the binary search,
but the returned bracket endpoints are always re-decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .errors import InstanceTooLarge
from .metric import (
    Config,
    Metric,
    config_dist,
    covering_configurations,
    seq_dist,
)
from . import simplex

Rho = tuple[int, ...]
Sigma = tuple[Config, ...]

DEFAULT_VAR_CAP = 10**6


def answer_sequences(metric: Metric, k: int, rho: Rho) -> list[Sigma]:
    """S_t(rho): all covering answer sequences, lexicographic order."""
    pools = [covering_configurations(metric.n, k, r) for r in rho]
    return [tuple(p) for p in product(*pools)]


@dataclass
class LPInstance:
    metric: Metric
    k: int
    c0: Config
    T: int
    tau: Fraction
    variables: list[tuple[Rho, Sigma]]
    var_index: dict[tuple[Rho, Sigma], int]
    # (coefficient map over variable indices, rhs, row name)
    prob_rows: list[tuple[dict[int, Fraction], Fraction, str]]
    cons_rows: list[tuple[dict[int, Fraction], Fraction, str]]
    comp_rows: list[tuple[dict[int, Fraction], Fraction, str]]

    @property
    def num_vars(self) -> int:
        return len(self.variables)


def _rho_name(metric: Metric, rho: Rho) -> str:
    return ",".join(metric.points[r] for r in rho)


def _sigma_name(metric: Metric, sigma: Sigma) -> str:
    return ";".join("+".join(metric.points[i] for i in c) for c in sigma)


def count_variables(metric: Metric, k: int, T: int) -> int:
    n = metric.n
    per_request = [len(covering_configurations(n, k, r)) for r in range(n)]
    total = 0
    for t in range(1, T + 1):
        for rho in product(range(n), repeat=t):
            m = 1
            for r in rho:
                m *= per_request[r]
            total += m
    return total


def build_lp(
    metric: Metric,
    k: int,
    c0: Config,
    T: int,
    tau: Fraction,
    var_cap: int = DEFAULT_VAR_CAP,
) -> LPInstance:
    """Materialize the four constraint families for threshold tau."""
    if T < 1:
        raise ValueError("T must be >= 1")
    required = count_variables(metric, k, T)
    if required > var_cap:
        raise InstanceTooLarge(required, var_cap)
    c0 = tuple(sorted(c0))
    n = metric.n

    variables: list[tuple[Rho, Sigma]] = []
    var_index: dict[tuple[Rho, Sigma], int] = {}
    for t in range(1, T + 1):
        for rho in product(range(n), repeat=t):
            for sigma in answer_sequences(metric, k, rho):
                var_index[(rho, sigma)] = len(variables)
                variables.append((rho, sigma))

    prob_rows = []
    cons_rows = []
    for t in range(1, T + 1):
        for rho in product(range(n), repeat=t):
            coeffs = {
                var_index[(rho, sigma)]: Fraction(1)
                for sigma in answer_sequences(metric, k, rho)
            }
            prob_rows.append(
                (coeffs, Fraction(1), f"P/{_rho_name(metric, rho)}")
            )
    for t in range(2, T + 1):
        for rho in product(range(n), repeat=t):
            prev_rho = rho[:-1]
            for prev_sigma in answer_sequences(metric, k, prev_rho):
                coeffs = {
                    var_index[(rho, prev_sigma + (c,))]: Fraction(1)
                    for c in covering_configurations(n, k, rho[-1])
                }
                coeffs[var_index[(prev_rho, prev_sigma)]] = Fraction(-1)
                cons_rows.append(
                    (
                        coeffs,
                        Fraction(0),
                        f"C/{_rho_name(metric, rho)}/{_sigma_name(metric, prev_sigma)}",
                    )
                )

    comp_rows = []
    for rho in product(range(n), repeat=T):
        seqs = answer_sequences(metric, k, rho)
        costs = {sigma: seq_dist(metric, c0, sigma) for sigma in seqs}
        lhs = {
            var_index[(rho, sigma)]: cost
            for sigma, cost in costs.items()
            if cost != 0
        }
        for sigma in seqs:
            comp_rows.append(
                (
                    dict(lhs),
                    tau * costs[sigma],
                    f"K/{_rho_name(metric, rho)}/{_sigma_name(metric, sigma)}",
                )
            )

    return LPInstance(
        metric=metric,
        k=k,
        c0=c0,
        T=T,
        tau=tau,
        variables=variables,
        var_index=var_index,
        prob_rows=prob_rows,
        cons_rows=cons_rows,
        comp_rows=comp_rows,
    )


def lp_feasible(
    instance: LPInstance,
) -> tuple[bool, list[Fraction] | None]:
    """Exact feasibility decision; the point, if any, is verified against
    every constraint before being returned."""
    eq = [(c, r) for c, r, _ in instance.prob_rows] + [
        (c, r) for c, r, _ in instance.cons_rows
    ]
    ub = [(c, r) for c, r, _ in instance.comp_rows]
    point = simplex.solve_feasibility(instance.num_vars, eq, ub)
    if point is None:
        return False, None
    _check_point(instance, point)
    return True, point


def _check_point(instance: LPInstance, point: Sequence[Fraction]) -> None:
    for coeffs, rhs, name in instance.prob_rows + instance.cons_rows:
        if sum(v * point[j] for j, v in coeffs.items()) != rhs:
            raise AssertionError(f"equality row violated: {name}")
    for coeffs, rhs, name in instance.comp_rows:
        if sum(v * point[j] for j, v in coeffs.items()) > rhs:
            raise AssertionError(f"inequality row violated: {name}")
    if any(x < 0 for x in point):
        raise AssertionError("negative variable")


def lp_feasible_float(instance: LPInstance) -> bool:
    """Fast uncertified feasibility probe via scipy's HiGHS solver."""
    import numpy as np
    from scipy.optimize import linprog

    nv = instance.num_vars
    eq = [(c, r) for c, r, _ in instance.prob_rows] + [
        (c, r) for c, r, _ in instance.cons_rows
    ]
    A_eq = np.zeros((len(eq), nv))
    b_eq = np.zeros(len(eq))
    for i, (coeffs, rhs) in enumerate(eq):
        for j, v in coeffs.items():
            A_eq[i, j] = float(v)
        b_eq[i] = float(rhs)
    ub = instance.comp_rows
    A_ub = np.zeros((len(ub), nv))
    b_ub = np.zeros(len(ub))
    for i, (coeffs, rhs, _) in enumerate(ub):
        for j, v in coeffs.items():
            A_ub[i, j] = float(v)
        b_ub[i] = float(rhs)
    res = linprog(
        c=np.zeros(nv),
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=(0, None),
        method="highs",
    )
    return res.status == 0


@dataclass(frozen=True)
class RandomizedPolicy:
    """Conditional distributions over covering configurations, keyed by
    (request prefix, previous answer prefix)."""

    k: int
    horizon: int
    conditional: Mapping[tuple[Rho, Sigma], Mapping[Config, Fraction]]

    def distribution(self, rho: Rho, prev_sigma: Sigma) -> Mapping[Config, Fraction]:
        return self.conditional[(rho, prev_sigma)]


def extract_policy(
    instance: LPInstance, point: Sequence[Fraction]
) -> RandomizedPolicy:
    """Turn a feasible point into conditional next-configuration
    distributions; unreachable histories (zero denominator) default to
    uniform over covering configurations."""
    metric, k = instance.metric, instance.k
    conditional: dict[tuple[Rho, Sigma], dict[Config, Fraction]] = {}
    for t in range(1, instance.T + 1):
        for rho in product(range(metric.n), repeat=t):
            covers = covering_configurations(metric.n, k, rho[-1])
            for prev_sigma in answer_sequences(metric, k, rho[:-1]):
                mass = {
                    c: point[instance.var_index[(rho, prev_sigma + (c,))]]
                    for c in covers
                }
                denom = sum(mass.values(), Fraction(0))
                if denom == 0:
                    dist = {c: Fraction(1, len(covers)) for c in covers}
                else:
                    dist = {c: v / denom for c, v in mass.items()}
                conditional[(rho, prev_sigma)] = dist
    return RandomizedPolicy(k=k, horizon=instance.T, conditional=conditional)


def expected_cost(
    policy: RandomizedPolicy, metric: Metric, c0: Config, rho: Sequence[int]
) -> Fraction:
    """Exact expected movement cost of the policy on rho, by full
    enumeration of the induced answer tree."""
    return sum(expected_step_costs(policy, metric, c0, rho), Fraction(0))


def expected_step_costs(
    policy: RandomizedPolicy, metric: Metric, c0: Config, rho: Sequence[int]
) -> list[Fraction]:
    """Per-request expected costs; branches with zero probability are
    dropped."""
    rho = tuple(rho)
    c0 = tuple(sorted(c0))
    costs = [Fraction(0)] * len(rho)
    # (probability, previous config, answer prefix)
    branches: list[tuple[Fraction, Config, Sigma]] = [(Fraction(1), c0, ())]
    for t in range(1, len(rho) + 1):
        nxt: list[tuple[Fraction, Config, Sigma]] = []
        for prob, prev, sigma in branches:
            dist = policy.distribution(rho[:t], sigma)
            for c, p in dist.items():
                if p == 0:
                    continue
                costs[t - 1] += prob * p * config_dist(metric, prev, c)
                nxt.append((prob * p, c, sigma + (c,)))
        branches = nxt
    return costs


def opt_rand_ratio(
    metric: Metric,
    k: int,
    c0: Config,
    T: int,
    tolerance: Fraction,
    var_cap: int = DEFAULT_VAR_CAP,
    presolve: bool = True,
) -> tuple[Fraction, Fraction, RandomizedPolicy]:
    """Binary search on tau over [1, T*B]: returns (tau_low, tau_high,
    policy from the feasible point at tau_high) with tau_high - tau_low
    <= tolerance; tau_low is certified infeasible unless it is 1 and 1 is
    feasible."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")

    def probe(tau: Fraction):
        return lp_feasible(build_lp(metric, k, c0, T, tau, var_cap))

    def probe_float(tau: Fraction) -> bool:
        return lp_feasible_float(build_lp(metric, k, c0, T, tau, var_cap))

    one = Fraction(1)
    ok, point = probe(one)
    if ok:
        inst = build_lp(metric, k, c0, T, one, var_cap)
        return one, one, extract_policy(inst, point)

    B = k * metric.max_distance
    lo, hi = one, Fraction(T) * B
    hi_point = None

    if presolve:
        # Uncertified float bisection to guess the bracket, then certify
        # both suggested endpoints exactly below.
        flo, fhi = lo, hi
        while fhi - flo > tolerance:
            mid = (flo + fhi) / 2
            if probe_float(mid):
                fhi = mid
            else:
                flo = mid
        ok, point = probe(fhi)
        if ok:
            hi, hi_point = fhi, point
            ok_lo, _ = probe(flo)
            if not ok_lo:
                lo = flo

    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        ok, point = probe(mid)
        if ok:
            hi, hi_point = mid, point
        else:
            lo = mid

    if hi_point is None:
        ok, hi_point = probe(hi)
        if not ok:
            raise AssertionError(f"upper endpoint tau={hi} not feasible")
    inst = build_lp(metric, k, c0, T, hi, var_cap)
    return lo, hi, extract_policy(inst, hi_point)


def dump_lp(instance: LPInstance) -> str:
    """Text dump of the instance for cross-checking with other solvers.

    One named row per line (P/rho, C/rho/sigma, K/rho/sigma); rationals
    are written as p/q.
    """
    names = {
        i: f"x({_rho_name(instance.metric, rho)}|{_sigma_name(instance.metric, sigma)})"
        for i, (rho, sigma) in enumerate(instance.variables)
    }

    def term(j, v):
        return names[j] if v == 1 else f"{v} {names[j]}"

    lines = [f"\\ tau = {instance.tau}", "subject to"]
    for coeffs, rhs, name in instance.prob_rows + instance.cons_rows:
        lhs = " + ".join(term(j, v) for j, v in sorted(coeffs.items()))
        lines.append(f" {name}: {lhs} = {rhs}".replace("+ -1 ", "- "))
    for coeffs, rhs, name in instance.comp_rows:
        lhs = " + ".join(term(j, v) for j, v in sorted(coeffs.items()))
        lines.append(f" {name}: {lhs or '0'} <= {rhs}")
    lines.append("bounds")
    for i in range(instance.num_vars):
        lines.append(f" {names[i]} >= 0")
    lines.append("end")
    return "\n".join(lines) + "\n"


def policy_to_json(policy: RandomizedPolicy, metric: Metric, c0: Config) -> dict:
    """Serializable form of a policy; history keys are "rho|sigma" with
    point names, probabilities are "p/q" strings."""
    entries = {}
    for (rho, sigma), dist in sorted(policy.conditional.items()):
        key = f"{_rho_name(metric, rho)}|{_sigma_name(metric, sigma)}"
        entries[key] = [
            ["+".join(metric.points[i] for i in c), str(p)]
            for c, p in sorted(dist.items())
        ]
    return {
        "points": list(metric.points),
        "k": policy.k,
        "horizon": policy.horizon,
        "initial": [metric.points[i] for i in c0],
        "policy": entries,
    }


def policy_from_json(data: dict, metric: Metric) -> RandomizedPolicy:
    if list(metric.points) != list(data["points"]):
        raise ValueError("policy file was built for different points")
    conditional: dict[tuple[Rho, Sigma], dict[Config, Fraction]] = {}
    for key, items in data["policy"].items():
        rho_s, _, sigma_s = key.partition("|")
        rho = tuple(metric.index_of(p) for p in rho_s.split(",") if p)
        sigma = tuple(
            tuple(sorted(metric.index_of(p) for p in cfg.split("+")))
            for cfg in sigma_s.split(";")
            if cfg
        )
        conditional[(rho, sigma)] = {
            tuple(sorted(metric.index_of(p) for p in cfg.split("+"))): Fraction(prob)
            for cfg, prob in items
        }
    return RandomizedPolicy(
        k=int(data["k"]), horizon=int(data["horizon"]), conditional=conditional
    )
