from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from binomclosure.gallery import karamata_matrix
from binomclosure.parse import parse_polynomial as P
from binomclosure.poly import ArityError, Polynomial, evaluate
from binomclosure.variety import (
    GraphVariety,
    InconsistentSystemError,
    contains_point,
    from_linear_kernel,
    ideal_member,
    load_variety,
    pullback,
    rref,
)


def variety(k, ell, zetas, perm=None):
    return GraphVariety(k, ell, tuple(P(z, arity=ell) for z in zetas), perm)


DECREMENTATION = variety(3, 2, ["2*v2 - 1"])
UNBALANCED = variety(2, 1, ["3*v1 - 6"])


def test_pullback_examples():
    assert pullback(P("x1 + x2 + x3 - 1"), DECREMENTATION) == P("v1 + 3*v2 - 2", arity=2)
    assert pullback(P("8 - 4*x1 + 2*x2"), UNBALANCED) == P("2*v1 - 4")


def test_generators_pull_back_to_zero():
    for V in (DECREMENTATION, UNBALANCED, variety(3, 1, ["v1^2 - 1", "2*v1"])):
        for g in V.generators():
            assert pullback(g, V).is_zero()
            assert ideal_member(g, V)


def test_constant_one_not_in_ideal():
    assert not ideal_member(Polynomial.constant(3, 1), DECREMENTATION)


def test_contains_point_examples():
    assert contains_point(DECREMENTATION, (0, 0, -1))
    # orientation f2 = 3 f1 - 6 puts (0, -6) on the line, not (0, 6)
    assert contains_point(UNBALANCED, (0, -6))
    assert not contains_point(UNBALANCED, (0, 6))
    with pytest.raises(ArityError):
        contains_point(UNBALANCED, (1, 2, 3))


def test_tau_image_is_contained(rng):
    V = from_linear_kernel(karamata_matrix(3))
    for _ in range(20):
        params = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(V.ell)]
        assert contains_point(V, V.tau(params))


def test_rref_reduced_and_leftmost():
    rows = [[0, 2, 4], [1, 1, 1], [2, 4, 6]]
    R, piv = rref(rows, 3)
    assert piv == [0, 1]
    assert R == [[1, 0, -1], [0, 1, 2]]


def test_karamata_kernel():
    V = from_linear_kernel(karamata_matrix(3))
    assert (V.k, V.ell) == (12, 5)
    # parameters (g3, e1, e2, h1, h2) come first
    assert [p + 1 for p in V.column_permutation] == [6, 9, 10, 11, 12, 1, 2, 3, 4, 5, 7, 8]
    assert all(z.is_affine() for z in V.zetas)
    want = [
        "v1 + v2 + v3 + v4",
        "v1 + v3 - v4 + v5",
        "v1 - v5",
        "v1 + v2 + v3",
        "v1 + v3",
        "v2 + 2*v4 - v5",
        "v3 - v4 + 2*v5",
    ]
    assert list(V.zetas) == [P(w, arity=5) for w in want]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kernel_rows_vanish_on_parametrization(n):
    M = karamata_matrix(n)
    V = from_linear_kernel(M)
    sub = V.substitution()
    for row in M:
        form = sum((sub[j].scale(c) for j, c in enumerate(row) if c), Polynomial.zero(V.ell))
        assert form.is_zero()


def test_sourceorsink_kernel_row():
    # f1 - f2 + 1 = 0: the leftmost pivot is f1, so f2 is the parameter and f1 = v1 - 1
    V = from_linear_kernel([[1, -1, 1]], affine_column=True)
    assert V.ell == 1 and V.column_permutation == (1, 0)
    assert V.zetas == (P("v1 - 1"),)
    assert contains_point(V, (0, 1))
    assert ideal_member(P("x1 + x2 - 1") - P("2*x1", arity=2), V)


def test_empty_kernel_is_trivial():
    V = from_linear_kernel([], k=4)
    assert V.ell == 4 and V.zetas == ()
    p = P("x1*x4 - 3")
    assert pullback(p, V) == p


def test_inconsistent_system():
    with pytest.raises(InconsistentSystemError):
        from_linear_kernel([[1, 1, 0], [1, 1, 1]], affine_column=True)


def test_validation():
    with pytest.raises(ValueError):
        GraphVariety(2, 3, ())
    with pytest.raises(ValueError):
        GraphVariety(3, 1, (P("v1"),))
    with pytest.raises(ArityError):
        GraphVariety(2, 1, (P("v1 + v2"),))
    with pytest.raises(ValueError):
        GraphVariety(2, 1, (P("v1"),), column_permutation=(0, 0))


def test_json_round_trip():
    V = from_linear_kernel(karamata_matrix(3))
    again = load_variety(json.dumps(V.to_json()))
    assert again == V
    kernel = {"kernel_matrix": [["1/1", "-1/1", "1/1"]], "affine_column": True}
    assert load_variety(kernel) == from_linear_kernel([[1, -1, 1]], affine_column=True)
    with pytest.raises(ValueError):
        load_variety({"k": 2, "ell": 1, "zeta": {"3": "v1"}})


@st.composite
def varieties_with_polys(draw):
    k = draw(st.integers(1, 4))
    ell = draw(st.integers(0, k))
    zetas = [_poly_in(draw, ell) for _ in range(k - ell)]
    V = GraphVariety(k, ell, tuple(zetas))
    p = _poly_in(draw, k)
    q = _poly_in(draw, k)
    return V, p, q


def _poly_in(draw, k):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, 2)) for _ in range(k))
        terms[e] = Fraction(draw(st.integers(-5, 5)), draw(st.sampled_from([1, 2])))
    return Polynomial(k, terms)


@settings(max_examples=100)
@given(varieties_with_polys())
def test_pullback_is_homomorphism_and_reduction(data):
    V, p, q = data
    assert pullback(p + q, V) == pullback(p, V) + pullback(q, V)
    assert pullback(p * q, V) == pullback(p, V) * pullback(q, V)
    assert ideal_member(p - V.parameter_lift(pullback(p, V)), V)


@settings(max_examples=50)
@given(varieties_with_polys(), st.randoms(use_true_random=False))
def test_pullback_agrees_with_evaluation(data, r):
    V, p, _ = data
    for _ in range(5):
        params = [r.randint(-4, 4) for _ in range(V.ell)]
        assert evaluate(pullback(p, V), params) == evaluate(p, V.tau(params))
