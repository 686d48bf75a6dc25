"""Exact feasibility for {x : A x = b, x >= 0} over Q and over Z.

Phase-one simplex with Bland's rule on a Fraction tableau, a presolve that
substitutes fixed variables and resolves singleton and forcing rows, and a
depth-first branch-and-bound on top of both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

Matrix = Sequence[Sequence[Fraction]]

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

DEFAULT_NODE_BUDGET = 10**6

# bound propagation stops after this many sweeps; it only prunes, so cutting it short is safe
_MAX_PROPAGATION_SWEEPS = 50


@dataclass(frozen=True)
class FeasibilityResult:
    kind: str
    point: tuple[Fraction, ...] | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def feasible(self) -> bool:
        return self.kind == FEASIBLE

    @property
    def is_integral(self) -> bool:
        return self.point is not None and all(x.denominator == 1 for x in self.point)


# ---------------------------------------------------------------------------
# phase one


def phase_one(A: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """A basic feasible point of {x >= 0 : A x = b}, or None if empty."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i in range(m):
        r = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        rows.append(r)
        rhs.append(bi)
    if n == 0:
        return [] if all(x == 0 for x in rhs) else None

    # a column that is a positive multiple of a unit vector can start basic
    basis: list[int] = [-1] * m
    col_rows: list[list[int]] = [[] for _ in range(n)]
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x:
                col_rows[j].append(i)
    for j in range(n):
        if len(col_rows[j]) == 1:
            i = col_rows[j][0]
            if basis[i] < 0 and rows[i][j] > 0:
                basis[i] = j
    n_art = 0
    for i in range(m):
        if basis[i] < 0:
            basis[i] = n + n_art
            n_art += 1
    width = n + n_art
    for i in range(m):
        rows[i].extend([Fraction(0)] * n_art)
        j = basis[i]
        if j >= n:
            rows[i][j] = Fraction(1)
        elif rows[i][j] != 1:
            piv = rows[i][j]
            rows[i] = [x / piv for x in rows[i]]
            rhs[i] /= piv
    if n_art == 0:
        return _extract(basis, rhs, n)

    # reduced costs of "minimize the sum of artificials"
    cost = [Fraction(0)] * width
    for i in range(m):
        if basis[i] >= n:
            for j, x in enumerate(rows[i]):
                if x:
                    cost[j] -= x
    for j in basis:
        cost[j] = Fraction(0)

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = -1
        best: Fraction | None = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        # the phase-one objective is bounded below by zero
        assert leave >= 0
        _pivot(rows, rhs, cost, leave, enter)
        basis[leave] = enter

    if any(rhs[i] != 0 for i in range(m) if basis[i] >= n):
        return None
    return _extract(basis, rhs, n)


def _pivot(rows, rhs, cost, r: int, c: int) -> None:
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        prow[:] = [x / piv for x in prow]
        rhs[r] /= piv
    nz = [j for j, x in enumerate(prow) if x]
    pr = rhs[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
            rhs[i] -= f * pr
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]


def _extract(basis: Sequence[int], rhs: Sequence[Fraction], n: int) -> list[Fraction]:
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rhs[i]
    return x


# ---------------------------------------------------------------------------
# presolve


class _Infeasible(Exception):
    pass


@dataclass
class _Reduced:
    rows: list[dict[int, Fraction]]
    rhs: list[Fraction]
    fixed: dict[int, Fraction]
    lower: dict[int, Fraction]
    upper: dict[int, Optional[Fraction]]


def _presolve(
    A: Matrix,
    b: Sequence[Fraction],
    lower: Dict[int, Fraction],
    upper: Dict[int, Optional[Fraction]],
    integral: bool,
) -> _Reduced:
    n = len(A[0]) if A else 0
    lo = {j: lower.get(j, Fraction(0)) for j in range(n)}
    hi: dict[int, Optional[Fraction]] = {j: upper.get(j) for j in range(n)}
    # ints stay ints; rhs and bounds are Fractions so quotients remain exact
    rows = [{j: x if isinstance(x, int) else Fraction(x) for j, x in enumerate(r) if x} for r in A]
    rhs = [Fraction(x) for x in b]
    fixed: dict[int, Fraction] = {}

    def fix(j: int, value: Fraction) -> None:
        if value < lo[j] or (hi[j] is not None and value > hi[j]):
            raise _Infeasible
        if integral and value.denominator != 1:
            raise _Infeasible
        fixed[j] = value
        for i, r in enumerate(rows):
            a = r.pop(j, None)
            if a is not None and value:
                rhs[i] -= a * value

    for j in range(n):
        if hi[j] is not None and hi[j] < lo[j]:
            raise _Infeasible
        if integral:
            lo[j] = Fraction(math.ceil(lo[j]))
            if hi[j] is not None:
                hi[j] = Fraction(math.floor(hi[j]))
                if hi[j] < lo[j]:
                    raise _Infeasible

    sweeps = 0
    changed = True
    while changed:
        changed = False
        sweeps += 1
        for j in range(n):
            if j not in fixed and hi[j] is not None and hi[j] == lo[j]:
                fix(j, lo[j])
                changed = True
        keep = []
        for i, r in enumerate(rows):
            if not r:
                if rhs[i] != 0:
                    raise _Infeasible
                continue
            if len(r) == 1:
                (j, a), = r.items()
                fix(j, rhs[i] / a)
                changed = True
                continue
            min_act, max_act = _activity(r, lo, hi)
            if min_act is not None and rhs[i] < min_act:
                raise _Infeasible
            if max_act is not None and rhs[i] > max_act:
                raise _Infeasible
            if min_act is not None and rhs[i] == min_act:
                for j, a in list(r.items()):
                    fix(j, lo[j] if a > 0 else hi[j])  # type: ignore[arg-type]
                changed = True
                continue
            if max_act is not None and rhs[i] == max_act:
                for j, a in list(r.items()):
                    fix(j, hi[j] if a > 0 else lo[j])  # type: ignore[arg-type]
                changed = True
                continue
            keep.append(i)
            if integral and sweeps <= _MAX_PROPAGATION_SWEEPS and min_act is not None:
                # x_j <= lo_j + (rhs - min_act) / a for a > 0, and symmetrically
                slack = rhs[i] - min_act
                for j, a in r.items():
                    if a > 0:
                        bound = Fraction(math.floor(lo[j] + slack / a))
                        if hi[j] is None or bound < hi[j]:
                            hi[j] = bound
                            changed = True
                    else:
                        assert hi[j] is not None
                        bound = Fraction(math.ceil(hi[j] + slack / a))
                        if bound > lo[j]:
                            lo[j] = bound
                            changed = True
                    if hi[j] is not None and hi[j] < lo[j]:
                        raise _Infeasible
        if len(keep) != len(rows):
            rows = [rows[i] for i in keep]
            rhs = [rhs[i] for i in keep]
    return _Reduced(rows, rhs, fixed, lo, hi)


def _activity(r: dict[int, Fraction], lo, hi) -> tuple[Optional[Fraction], Optional[Fraction]]:
    min_act: Optional[Fraction] = Fraction(0)
    max_act: Optional[Fraction] = Fraction(0)
    for j, a in r.items():
        if a > 0:
            min_act = None if min_act is None else min_act + a * lo[j]
            max_act = None if (max_act is None or hi[j] is None) else max_act + a * hi[j]
        else:
            min_act = None if (min_act is None or hi[j] is None) else min_act + a * hi[j]
            max_act = None if max_act is None else max_act + a * lo[j]
    return min_act, max_act


def _solve_bounded(
    A: Matrix,
    b: Sequence[Fraction],
    lower: Dict[int, Fraction],
    upper: Dict[int, Optional[Fraction]],
    integral: bool,
) -> list[Fraction] | None:
    """LP point of {A x = b, lower <= x <= upper}; presolve may use integrality."""
    n = len(A[0]) if A else 0
    try:
        red = _presolve(A, b, lower, upper, integral)
    except _Infeasible:
        return None
    free = [j for j in range(n) if j not in red.fixed]
    if not free:
        return [red.fixed[j] for j in range(n)]
    index = {j: c for c, j in enumerate(free)}
    # only caller-imposed upper bounds enter the tableau; propagated ones are implied
    bounded = [j for j in free if upper.get(j) is not None]
    width = len(free) + len(bounded)
    M: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for r, beta in zip(red.rows, red.rhs):
        row = [Fraction(0)] * width
        shift = Fraction(0)
        for j, a in r.items():
            row[index[j]] = Fraction(a)
            shift += a * red.lower[j]
        M.append(row)
        rhs.append(beta - shift)
    for s, j in enumerate(bounded):
        u = min(upper[j], red.upper[j]) if red.upper[j] is not None else upper[j]
        row = [Fraction(0)] * width
        row[index[j]] = Fraction(1)
        row[len(free) + s] = Fraction(1)
        M.append(row)
        rhs.append(u - red.lower[j])  # type: ignore[operator]
    y = phase_one(M, rhs) if M else [Fraction(0)] * width
    if y is None:
        return None
    x = [Fraction(0)] * n
    for j, v in red.fixed.items():
        x[j] = v
    for j in free:
        x[j] = red.lower[j] + y[index[j]]
    return x


# ---------------------------------------------------------------------------
# public entry points


def lp_feasible_system(A: Matrix, b: Sequence[Fraction]) -> FeasibilityResult:
    point = _solve_bounded(A, b, {}, {}, integral=False)
    if point is None:
        return FeasibilityResult(INFEASIBLE, nodes=1)
    return FeasibilityResult(FEASIBLE, tuple(point), nodes=1)


def ilp_feasible_system(
    A: Matrix, b: Sequence[Fraction], budget: int = DEFAULT_NODE_BUDGET
) -> FeasibilityResult:
    """Depth-first branch-and-bound; floor branch first, most fractional variable
    (lowest index on ties). ``unknown`` only when ``budget`` nodes are spent."""
    stack: list[tuple[dict[int, Fraction], dict[int, Optional[Fraction]]]] = [({}, {})]
    nodes = 0
    while stack:
        if nodes >= budget:
            return FeasibilityResult(UNKNOWN, nodes=nodes, reason=f"node budget {budget} exhausted")
        lower, upper = stack.pop()
        nodes += 1
        x = _solve_bounded(A, b, lower, upper, integral=True)
        if x is None:
            continue
        j = _most_fractional(x)
        if j is None:
            return FeasibilityResult(FEASIBLE, tuple(x), nodes=nodes)
        down = Fraction(math.floor(x[j]))
        ceil_lower = dict(lower)
        ceil_lower[j] = down + 1
        floor_upper = dict(upper)
        floor_upper[j] = down
        stack.append((ceil_lower, dict(upper)))
        stack.append((dict(lower), floor_upper))
    return FeasibilityResult(INFEASIBLE, nodes=nodes)


def _most_fractional(x: Sequence[Fraction]) -> int | None:
    best, best_j = Fraction(0), None
    for j, v in enumerate(x):
        frac = v - math.floor(v)
        dist = min(frac, 1 - frac)
        if dist > best:
            best, best_j = dist, j
    return best_j
