"""Ratio tables across horizons: exact deterministic values next to
randomized brackets, emitted as CSV or JSON with rationals as "p/q"."""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownFormat
from .game import opt_det_ratio
from .lp import DEFAULT_VAR_CAP, opt_rand_ratio
from .metric import Config, Metric


@dataclass(frozen=True)
class RatioRow:
    horizon: int
    det_value: Fraction
    rand_low: Fraction
    rand_high: Fraction
    runtime_ms: int


@dataclass(frozen=True)
class RatioTable:
    rows: tuple[RatioRow, ...]


def sweep_horizons(
    metric: Metric,
    k: int,
    c0: Config,
    t_max: int,
    tolerance: Fraction,
    var_cap: int = DEFAULT_VAR_CAP,
    timing: bool = True,
) -> RatioTable:
    """One row per horizon T = 1..t_max; runtimes are zeroed when timing
    is off so reports stay byte-deterministic."""
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    rows = []
    for t in range(1, t_max + 1):
        start = time.perf_counter()
        det = opt_det_ratio(metric, k, c0, t)
        lo, hi, _ = opt_rand_ratio(metric, k, c0, t, tolerance, var_cap=var_cap)
        elapsed = int((time.perf_counter() - start) * 1000) if timing else 0
        rows.append(
            RatioRow(
                horizon=t,
                det_value=det.value,
                rand_low=lo,
                rand_high=hi,
                runtime_ms=elapsed,
            )
        )
    return RatioTable(rows=tuple(rows))


def emit(table: RatioTable, fmt: str) -> bytes:
    """Serialize a table; deterministic byte-for-byte for a given table."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["T", "det", "rand_low", "rand_high", "runtime_ms"])
        for row in table.rows:
            writer.writerow(
                [
                    row.horizon,
                    str(row.det_value),
                    str(row.rand_low),
                    str(row.rand_high),
                    row.runtime_ms,
                ]
            )
        return buf.getvalue().encode()
    if fmt == "json":
        payload = [
            {
                "T": row.horizon,
                "det": str(row.det_value),
                "rand_low": str(row.rand_low),
                "rand_high": str(row.rand_high),
                "runtime_ms": row.runtime_ms,
            }
            for row in table.rows
        ]
        return (json.dumps(payload, indent=2) + "\n").encode()
    raise UnknownFormat(fmt)


def parse_table(payload: bytes) -> RatioTable:
    """Inverse of emit(..., "json")."""
    rows = tuple(
        RatioRow(
            horizon=int(item["T"]),
            det_value=Fraction(item["det"]),
            rand_low=Fraction(item["rand_low"]),
            rand_high=Fraction(item["rand_high"]),
            runtime_ms=int(item["runtime_ms"]),
        )
        for item in json.loads(payload.decode())
    )
    return RatioTable(rows=rows)
