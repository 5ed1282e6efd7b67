"""Exact rational phase-one simplex for feasibility of
{A_eq x = b_eq, A_ub x <= b_ub, x >= 0}.

Dense tableau over fractions.Fraction. Pivoting uses the largest-
violation rule for speed and falls back to Bland's rule permanently once
a degenerate streak suggests cycling, so termination is guaranteed. Only
feasibility is decided; the returned point is the basic solution once the
artificial objective hits zero.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

ZERO = Fraction(0)
ONE = Fraction(1)

# Consecutive degenerate pivots tolerated before switching to Bland.
DEGENERATE_LIMIT = 30


def solve_feasibility(
    num_vars: int,
    eq_rows: Iterable[tuple[Mapping[int, Fraction], Fraction]],
    ub_rows: Iterable[tuple[Mapping[int, Fraction], Fraction]],
) -> list[Fraction] | None:
    """Return a feasible point (length num_vars) or None if infeasible."""
    eq_rows = list(eq_rows)
    ub_rows = list(ub_rows)
    n_slack = len(ub_rows)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    needs_artificial: list[int] = []

    width = num_vars + n_slack  # artificial columns appended later
    for i, (coeffs, b) in enumerate(ub_rows):
        row = [ZERO] * width
        for j, v in coeffs.items():
            row[j] = Fraction(v)
        row[num_vars + i] = ONE
        if b < 0:
            row = [-v for v in row]
            b = -b
            needs_artificial.append(len(rows))
            basis.append(-1)
        else:
            basis.append(num_vars + i)
        rows.append(row)
        rhs.append(Fraction(b))
    for coeffs, b in eq_rows:
        row = [ZERO] * width
        for j, v in coeffs.items():
            row[j] = Fraction(v)
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        needs_artificial.append(len(rows))
        basis.append(-1)
        rows.append(row)
        rhs.append(b)

    n_art = len(needs_artificial)
    total = width + n_art
    for idx, i in enumerate(needs_artificial):
        basis[i] = width + idx
    for i, row in enumerate(rows):
        row.extend([ZERO] * n_art)
        if basis[i] >= width:
            row[basis[i]] = ONE

    # Phase-one objective: minimize the sum of artificials. Maintain the
    # reduced-cost row obj[j] = sum of artificial-basic rows, so entering
    # columns are those with obj[j] > 0.
    obj = [ZERO] * total
    objval = ZERO
    for i in range(len(rows)):
        if basis[i] >= width:
            r = rows[i]
            for j in range(total):
                if r[j]:
                    obj[j] += r[j]
            objval += rhs[i]
    for idx in range(n_art):
        obj[width + idx] = ZERO  # artificials never re-enter

    degenerate_streak = 0
    use_bland = False
    while objval > 0:
        pc = -1
        if use_bland:
            for j in range(width):
                if obj[j] > 0:
                    pc = j
                    break
        else:
            best = ZERO
            for j in range(width):
                if obj[j] > best:
                    best = obj[j]
                    pc = j
        if pc < 0:
            return None  # optimum > 0: infeasible
        pr = -1
        best_ratio = None
        for i, row in enumerate(rows):
            a = row[pc]
            if a > 0:
                ratio = rhs[i] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[pr])
                ):
                    best_ratio = ratio
                    pr = i
        if pr < 0:
            # Unbounded direction cannot occur in phase one; defensive.
            return None
        if best_ratio == 0:
            degenerate_streak += 1
            if degenerate_streak > DEGENERATE_LIMIT:
                use_bland = True
        else:
            degenerate_streak = 0
        _pivot(rows, rhs, obj, basis, pr, pc)
        objval = sum(
            (rhs[i] for i in range(len(rows)) if basis[i] >= width), ZERO
        )

    point = [ZERO] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            point[b] = rhs[i]
    return point


def _pivot(rows, rhs, obj, basis, pr, pc) -> None:
    prow = rows[pr]
    piv = prow[pc]
    if piv != 1:
        inv = 1 / piv
        rows[pr] = prow = [v * inv for v in prow]
        rhs[pr] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(rows):
        if i == pr:
            continue
        f = row[pc]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
            rhs[i] -= f * rhs[pr]
    f = obj[pc]
    if f:
        for j in nz:
            obj[j] -= f * prow[j]
    basis[pr] = pc
