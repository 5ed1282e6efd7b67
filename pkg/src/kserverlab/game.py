"""Exact optimal deterministic strict competitive ratio over a finite
horizon, as the value of a zero-sum game: the adversary picks the next
request or stops, the algorithm picks any covering configuration.

The game state (algorithm configuration, work-function vector, algorithm
cost, depth) is a sufficient statistic: the work function determines the
offline optimum of every continuation, so equal states have equal subgame
values and the minimax recursion memoizes on them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from .algorithms import FixedPolicy, OnlineAlgorithm, simulate
from .metric import Config, Metric, config_dist, covering_configurations
from .offline import WorkFunction, opt_cost, wf_init, wf_update

INFINITE_RATIO = float("inf")


@dataclass(frozen=True)
class GameNode:
    alg_config: Config
    wf: WorkFunction
    alg_cost: Fraction
    depth: int

    def key(self):
        return (
            self.alg_config,
            tuple(sorted(self.wf.values.items())),
            self.alg_cost,
            self.depth,
        )


@dataclass(frozen=True)
class RatioResult:
    value: Fraction
    witness_strategy: dict[tuple[int, ...], Config]
    witness_adversary: tuple[int, ...]


def _ratio(cost: Fraction, opt: Fraction):
    """Cost/opt with the strict-competitiveness conventions: 0/0 is 1,
    positive cost against zero opt is unboundedly bad."""
    if opt == 0:
        return Fraction(1) if cost == 0 else INFINITE_RATIO
    return cost / opt


class _Search:
    def __init__(self, metric: Metric, k: int, T: int):
        self.metric = metric
        self.k = k
        self.T = T
        self.covering = {
            r: covering_configurations(metric.n, k, r) for r in range(metric.n)
        }
        self.memo: dict = {}

    def value(self, node: GameNode):
        """Game value: max over adversary stop / next request of the min
        over the algorithm's covering answers."""
        now = _ratio(node.alg_cost, node.wf.opt())
        if node.depth == self.T:
            return now
        key = node.key()
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        best = now
        for r in range(self.metric.n):
            wf2 = wf_update(self.metric, node.wf, r)
            child = min(
                self.value(self._child(node, wf2, c)) for c in self.covering[r]
            )
            if child > best:
                best = child
        self.memo[key] = best
        return best

    def _child(self, node: GameNode, wf2: WorkFunction, c: Config) -> GameNode:
        return GameNode(
            alg_config=c,
            wf=wf2,
            alg_cost=node.alg_cost + config_dist(self.metric, node.alg_config, c),
            depth=node.depth + 1,
        )

    def root(self, c0: Config) -> GameNode:
        return GameNode(
            alg_config=tuple(sorted(c0)),
            wf=wf_init(self.metric, tuple(sorted(c0))),
            alg_cost=Fraction(0),
            depth=0,
        )

    def best_answer(self, node: GameNode, r: int) -> tuple[Config, GameNode]:
        """Lexicographically smallest covering answer achieving the min
        continuation value."""
        wf2 = wf_update(self.metric, node.wf, r)
        children = [(c, self._child(node, wf2, c)) for c in self.covering[r]]
        best = min(self.value(ch) for _, ch in children)
        for c, ch in children:
            if self.value(ch) == best:
                return c, ch

    def strategy_tree(self, node: GameNode, prefix=()) -> dict:
        tree = {}
        self._fill_tree(node, prefix, tree)
        return tree

    def _fill_tree(self, node: GameNode, prefix, tree) -> None:
        if node.depth == self.T:
            return
        for r in range(self.metric.n):
            c, child = self.best_answer(node, r)
            tree[prefix + (r,)] = c
            self._fill_tree(child, prefix + (r,), tree)

    def worst_sequence(self, node: GameNode) -> tuple[int, ...]:
        """Adversary path achieving the root value against the optimal
        strategy: keep requesting while some continuation matches the
        value, stop once the current ratio does."""
        seq = []
        while node.depth < self.T:
            target = self.value(node)
            if _ratio(node.alg_cost, node.wf.opt()) == target:
                break
            for r in range(self.metric.n):
                wf2 = wf_update(self.metric, node.wf, r)
                children = [self._child(node, wf2, c) for c in self.covering[r]]
                if min(self.value(ch) for ch in children) == target:
                    seq.append(r)
                    # Descend through the algorithm's actual (lex-min
                    # argmin) choice so the witness pair stays consistent.
                    _, node = self.best_answer(node, r)
                    break
        return tuple(seq)


def feasible_det(
    metric: Metric, k: int, c0: Config, T: int, c: Fraction
) -> tuple[bool, dict[tuple[int, ...], Config] | None]:
    """Does some deterministic strategy keep cost <= c * opt on every
    request sequence of length at most T? Returns a witness strategy tree
    when feasible."""
    search = _Search(metric, k, T)
    memo: dict = {}

    def ok(node: GameNode) -> bool:
        if node.alg_cost > c * node.wf.opt():
            return False
        if node.depth == T:
            return True
        key = node.key()
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = True
        for r in range(metric.n):
            wf2 = wf_update(metric, node.wf, r)
            if not any(
                ok(search._child(node, wf2, cc)) for cc in search.covering[r]
            ):
                result = False
                break
        memo[key] = result
        return result

    root = search.root(c0)
    if not ok(root):
        return False, None

    tree: dict[tuple[int, ...], Config] = {}

    def fill(node: GameNode, prefix) -> None:
        if node.depth == T:
            return
        for r in range(metric.n):
            wf2 = wf_update(metric, node.wf, r)
            for cc in search.covering[r]:
                child = search._child(node, wf2, cc)
                if ok(child):
                    tree[prefix + (r,)] = cc
                    fill(child, prefix + (r,))
                    break

    fill(root, ())
    return True, tree


def opt_det_ratio(
    metric: Metric, k: int, c0: Config, T: int, tolerance: Fraction | None = None
) -> RatioResult:
    """Optimal strict deterministic ratio at horizon T, with witnesses.

    The minimax is solved with exact leaf bookkeeping, so the value is an
    exact rational and the tolerance parameter is not consulted. With
    k = n every request is free and the ratio degenerates to 1.
    """
    if k == metric.n:
        return RatioResult(value=Fraction(1), witness_strategy={}, witness_adversary=())
    search = _Search(metric, k, T)
    root = search.root(c0)
    value = search.value(root)
    return RatioResult(
        value=value,
        witness_strategy=search.strategy_tree(root),
        witness_adversary=search.worst_sequence(root),
    )


def worst_adversary(
    metric: Metric, c0: Config, algorithm: OnlineAlgorithm, T: int
) -> tuple[tuple[int, ...], Fraction]:
    """Exhaustively search all request sequences of length <= T for the
    one maximizing simulated-cost / opt against a deterministic algorithm.

    First maximizer in order (shorter first, then lexicographic) wins.
    """
    best_seq: tuple[int, ...] = ()
    best_ratio = Fraction(1)  # empty sequence: 0/0
    for t in range(1, T + 1):
        for rho in product(range(metric.n), repeat=t):
            cost, _ = simulate(algorithm, metric, c0, rho)
            ratio = _ratio(cost, opt_cost(metric, c0, rho))
            if ratio > best_ratio:
                best_ratio = ratio
                best_seq = rho
    return best_seq, best_ratio


def policy_algorithm(tree: dict[tuple[int, ...], Config]) -> FixedPolicy:
    """Wrap a strategy tree as a runnable online algorithm."""
    return FixedPolicy(tree)
