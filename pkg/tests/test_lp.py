from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from binomclosure.lp import (
    FEASIBLE,
    INFEASIBLE,
    UNKNOWN,
    ilp_feasible_system,
    lp_feasible_system,
    phase_one,
)

F = Fraction


def _solve_square(A, b):
    """Exact solution of a nonsingular square system, or None."""
    n = len(A)
    M = [[F(v) for v in row] + [F(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * q for a, q in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def lp_oracle(A, b) -> bool:
    """Feasible iff some basic solution is nonnegative: try every row and column subset."""
    m, n = len(A), len(A[0])
    if all(bi == 0 for bi in b):
        return True
    for r in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), r):
            for cols in itertools.combinations(range(n), r):
                sub = [[A[i][j] for j in cols] for i in rows]
                xs = _solve_square(sub, [b[i] for i in rows])
                if xs is None or any(v < 0 for v in xs):
                    continue
                x = [F(0)] * n
                for j, v in zip(cols, xs):
                    x[j] = v
                if all(sum(A[i][j] * x[j] for j in range(n)) == b[i] for i in range(m)):
                    return True
    return False


def ilp_oracle(A, b, bound) -> bool:
    n = len(A[0])
    for x in itertools.product(range(bound + 1), repeat=n):
        if all(sum(a * v for a, v in zip(row, x)) == bi for row, bi in zip(A, b)):
            return True
    return False


def check_point(A, b, point):
    assert all(v >= 0 for v in point)
    for row, bi in zip(A, b):
        assert sum(F(a) * v for a, v in zip(row, point)) == bi


def test_phase_one_small():
    assert phase_one([[1, 1]], [2]) is not None
    assert phase_one([[1, 1]], [-2]) is None
    assert phase_one([[1, -1], [0, 0]], [0, 1]) is None
    x = phase_one([[1, 2, 0], [0, 1, 1]], [3, 2])
    check_point([[1, 2, 0], [0, 1, 1]], [3, 2], x)


def test_gallery_systems():
    # decrementation: empty even over Q
    A = [[1, 0, 0, -1], [0, 1, 0, 0], [0, 0, 1, 2]]
    assert lp_feasible_system(A, [-2, 1, 3]).kind == INFEASIBLE
    # unbalanced flow: rational point but no integer point
    A = [[1, 0, -6], [0, 1, 3]]
    res = lp_feasible_system(A, [-4, 2])
    assert res.kind == FEASIBLE
    check_point(A, [-4, 2], res.point)
    assert ilp_feasible_system(A, [-4, 2]).kind == INFEASIBLE


def test_budget_exhaustion_is_unknown():
    # 2x - 2y = 1 has no integer solution; propagation cannot bound it
    A, b = [[2, -2]], [1]
    res = ilp_feasible_system(A, b, budget=5)
    assert res.kind == UNKNOWN and res.nodes == 5


def test_deterministic_points():
    A = [[1, 1, 1, 1], [1, 2, 3, 4]]
    b = [5, 11]
    first = ilp_feasible_system(A, b)
    for _ in range(3):
        assert ilp_feasible_system(A, b) == first


systems = st.integers(1, 3).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m),
            st.lists(st.integers(-4, 6), min_size=m, max_size=m),
        )
    )
)


@settings(max_examples=300)
@given(systems)
def test_lp_matches_basis_enumeration(system):
    A, b = system
    res = lp_feasible_system(A, b)
    assert res.feasible == lp_oracle(A, b)
    if res.feasible:
        check_point(A, b, res.point)


@settings(max_examples=200)
@given(systems, st.integers(1, 3))
def test_ilp_matches_enumeration_on_bounded_systems(system, w):
    A, b = system
    n = len(A[0])
    # a row with positive coefficients bounds every variable by 5 // w
    A = [[w] * n] + A
    b = [5] + b
    res = ilp_feasible_system(A, b)
    assert res.kind != UNKNOWN
    assert res.feasible == ilp_oracle(A, b, 5 // w)
    if res.feasible:
        assert res.is_integral
        check_point(A, b, res.point)
    # LP/ILP consistency
    if not lp_feasible_system(A, b).feasible:
        assert not res.feasible
