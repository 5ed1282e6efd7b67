"""Finite metric spaces, server configurations, and movement costs.

All arithmetic is exact: distances are ``fractions.Fraction`` values parsed
from integers or "p/q" strings. Configurations are canonical sorted tuples
of point indices, so equality is structural and enumeration order is
deterministic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import (
    AsymmetricDistance,
    KExceedsN,
    MetricError,
    NonSquare,
    TriangleViolation,
    ZeroOffDiagonal,
)

Config = tuple[int, ...]


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction, or a "p/q" string.

    Floats are rejected: exactness is a hard requirement downstream.
    """
    if isinstance(value, bool):
        raise MetricError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MetricError(f"not a rational: {value!r}") from exc
    raise MetricError(f"not a rational: {value!r}")


@dataclass(frozen=True)
class Metric:
    """A finite metric: named points plus an exact symmetric distance matrix.

    ``gamma`` is the normalization factor 1 / (minimum off-diagonal
    distance); it equals 1 exactly when the metric is normalized.
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.points)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    @property
    def gamma(self) -> Fraction:
        return 1 / self.min_distance

    @property
    def min_distance(self) -> Fraction:
        """Minimum off-diagonal distance; 1 for single-point metrics."""
        offdiag = [
            self.dist[i][j]
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        ]
        return min(offdiag) if offdiag else Fraction(1)

    @property
    def max_distance(self) -> Fraction:
        return max(x for row in self.dist for x in row) if self.n > 1 else Fraction(0)

    def is_normalized(self) -> bool:
        return self.min_distance == 1

    def index_of(self, name: str) -> int:
        try:
            return self.points.index(name)
        except ValueError:
            raise KeyError(name)


def validate_metric(raw: Sequence[Sequence], points: Sequence[str] | None = None) -> Metric:
    """Check the metric axioms on a raw matrix and build a Metric.

    Raises NonSquare, AsymmetricDistance, ZeroOffDiagonal, or
    TriangleViolation. Gamma is computed by the Metric but not applied;
    call normalize() for that.
    """
    n = len(raw)
    if n == 0:
        raise NonSquare("empty matrix")
    rows = []
    for row in raw:
        if len(row) != n:
            raise NonSquare(f"row length {len(row)} != {n}")
        rows.append(tuple(parse_rational(x) for x in row))
    if points is None:
        points = tuple(f"p{i}" for i in range(n))
    else:
        points = tuple(points)
        if len(points) != n:
            raise NonSquare(f"{len(points)} point names for {n}x{n} matrix")
        if len(set(points)) != n:
            raise MetricError("duplicate point names")
    for i in range(n):
        if rows[i][i] != 0:
            raise MetricError(f"nonzero diagonal at {i}")
        for j in range(n):
            if rows[i][j] < 0:
                raise MetricError(f"negative distance at ({i},{j})")
            if rows[i][j] != rows[j][i]:
                raise AsymmetricDistance(f"d[{i}][{j}] != d[{j}][{i}]")
            if i != j and rows[i][j] == 0:
                raise ZeroOffDiagonal(f"d[{i}][{j}] = 0")
    for i in range(n):
        for l in range(n):
            for j in range(n):
                if rows[i][j] > rows[i][l] + rows[l][j]:
                    raise TriangleViolation(
                        f"d[{i}][{j}] > d[{i}][{l}] + d[{l}][{j}]"
                    )
    return Metric(points=points, dist=tuple(rows))


def load_metric(path) -> Metric:
    """Load a metric from a JSON file: {"points": [...], "distances": [[...]]}."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "distances" not in data:
        raise MetricError("metric file must be an object with a 'distances' key")
    return validate_metric(data["distances"], data.get("points"))


def normalize(metric: Metric) -> Metric:
    """Scale all distances so the minimum off-diagonal distance is exactly 1."""
    g = metric.gamma
    if g == 1:
        return metric
    scaled = tuple(tuple(x * g for x in row) for row in metric.dist)
    return Metric(points=metric.points, dist=scaled)


def all_configurations(n: int, k: int) -> list[Config]:
    """All k-subsets of [0, n) in lexicographic order."""
    if not 1 <= k <= n:
        raise KExceedsN(f"k={k} out of range for n={n}")
    return list(combinations(range(n), k))


def covering_configurations(n: int, k: int, r: int) -> list[Config]:
    """All k-subsets containing point r, lexicographic order."""
    return [c for c in all_configurations(n, k) if r in c]


def config_dist(metric: Metric, a: Config, b: Config) -> Fraction:
    """Minimum cost to move servers from configuration a to b.

    Exact min-cost perfect matching, by exhaustive search over the k!
    matchings (desk scale; the contract is the exact minimum).
    """
    if a == b:
        return Fraction(0)
    best = None
    for perm in permutations(b):
        cost = sum((metric.dist[s][t] for s, t in zip(a, perm)), Fraction(0))
        if best is None or cost < best:
            best = cost
    return best


def seq_dist(metric: Metric, c0: Config, sigma: Iterable[Config]) -> Fraction:
    """Total movement cost of an answer sequence starting from c0."""
    total = Fraction(0)
    prev = c0
    for c in sigma:
        total += config_dist(metric, prev, c)
        prev = c
    return total


def uniform_metric(n: int, names: Sequence[str] | None = None) -> Metric:
    """All off-diagonal distances 1; handy default for tests and demos."""
    raw = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    return validate_metric(raw, names)


def line_metric(coords: Sequence, names: Sequence[str] | None = None) -> Metric:
    """Points on a line at the given rational coordinates."""
    xs = [parse_rational(c) for c in coords]
    raw = [[abs(x - y) for y in xs] for x in xs]
    return validate_metric(raw, names)
