from __future__ import annotations

import itertools

import pytest
from conftest import polynomials
from hypothesis import given, settings, strategies as st

from binomclosure.closure import box_values, classify, monotone_witness, nonneg_on_box
from binomclosure.gallery import NAMES, GalleryError, gallery, karamata_labels
from binomclosure.parse import parse_polynomial as P
from binomclosure.poly import (
    BinomialExpansion,
    GoodnessVerdict,
    Polynomial,
    binomial_atom,
    compose,
    evaluate,
    from_binomial_basis,
    to_binomial_basis,
)
from binomclosure.polyhedron import CosetVerdict
from binomclosure.variety import ideal_member, pullback


def test_monotone_examples():
    w = monotone_witness(gallery("motzkin").polynomial, 2)
    assert (w.point, w.direction, w.value, w.next_value) == ((0, 1), 0, 1, 0)
    w = monotone_witness(gallery("amgm-weak").polynomial, 2)
    assert (w.point, w.direction, w.value, w.next_value) == ((0, 2), 0, 4, 3)
    assert monotone_witness(P("x1 + x2"), 5) is None


def test_nonneg_on_box():
    assert nonneg_on_box(gallery("motzkin").polynomial, 4)
    assert not nonneg_on_box(P("x1 - 2"), 4)


@st.composite
def good_polys(draw):
    k = draw(st.integers(1, 3))
    coeffs = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * k), st.integers(0, 4), max_size=4))
    return from_binomial_basis(BinomialExpansion(k, coeffs))


@settings(max_examples=80)
@given(good_polys())
def test_good_polynomials_are_monotone_on_the_box(p):
    assert monotone_witness(p, 3) is None


def test_classify_examples():
    r = classify((Polynomial.var(1, 0) ** 5 - Polynomial.var(1, 0)) / 5)
    assert r.integer_valued and r.goodness.is_good
    h = gallery("hadamard-specialization").restricted()
    r = classify(h)
    assert r.goodness.kind == GoodnessVerdict.BAD_NEGATIVE and r.goodness.witness == (3,)
    r = classify(Polynomial.zero(2))
    assert r.integer_valued and r.goodness.is_good and r.monotone_witness is None
    assert r.expansion.items() == []


def test_classify_with_variety():
    e = gallery("sourceorsink")
    r = classify(e.polynomial, e.variety)
    assert r.goodness.kind == GoodnessVerdict.BAD_NEGATIVE  # plain: -1 constant term
    assert r.coset.kind == CosetVerdict.GOOD
    data = r.to_json()
    assert data["coset"]["certificate"] == "2*x1"
    assert data["coset"]["verdict"] == "good"


def test_report_json_schema():
    data = classify(gallery("amgm-weak").polynomial, box_bound=2).to_json()
    assert set(data) >= {"input", "expansion", "integer_valued", "goodness", "nonneg_on_box"}
    assert data["monotone_witness"]["point"] == [0, 2]
    assert data["nonneg_on_box"] == {"bound": 2, "holds": True}
    assert data["expansion"][0] == {"e": [2, 0], "c": "2"}


def test_large_box_is_skipped_with_note():
    r = classify(gallery("hadamard", d=3).polynomial)
    assert r.nonneg_on_box is None and "skipped" in r.box_note


# --- gallery -------------------------------------------------------------------


def test_cauchy_and_minkowski():
    assert gallery("cauchy", n=2).polynomial == P("x1^2*x4^2 + x2^2*x3^2 - 2*x1*x3*x2*x4")
    m = gallery("minkowski", n=2).polynomial
    c = gallery("cauchy", n=2).polynomial
    # M_2(x1, x2, y1, y2) = C_2(x1, y1, x2, y2)
    v = Polynomial.variables(4)
    assert m == compose(c, [v[0], v[2], v[1], v[3]])


def test_hadamard_two_by_two_is_good():
    h = gallery("hadamard", d=2).polynomial
    assert h == P("x1^2*x3^2 + x2^2*x4^2 + 2*x1*x2*x3*x4")
    assert classify(h).goodness.is_good


def test_hadamard_specialization_values():
    h = gallery("hadamard-specialization").restricted()
    x = Polynomial.var(1, 0)
    from fractions import Fraction as F

    assert h == x**6 / 12 - x**5 / 2 + F(3, 4) * x**4 + F(8, 3) * x**2
    assert dict(to_binomial_basis(h).items()) == {(1,): 3, (2,): 6, (3,): -3, (4,): 28, (5,): 90, (6,): 60}


def test_alexandrov_fenchel_reduces_to_square():
    af = gallery("alexandrov-fenchel", n=2).polynomial
    x1, x2 = Polynomial.variables(2)
    one = Polynomial.constant(2, 1)
    assert compose(af, [x1, x2, one, one]) == (x1 - x2) ** 2
    assert af.arity == 4
    assert gallery("alexandrov-fenchel", n=3).polynomial.arity == 9


def test_log_concavity_and_ahlswede_daykin_curves():
    X, Y = Polynomial.variables(2)
    assert gallery("log-concavity").restricted() == (X - Y) ** 2
    ad = gallery("ahlswede-daykin")
    f = Polynomial.var(1, 0)
    assert ad.restricted() == f**2 - 2 * f + 1
    # the curve lies on the variety
    for t in range(6):
        point = [evaluate(c, [t]) for c in ad.curve]
        assert all(evaluate(g, point) == 0 for g in ad.variety.generators())


def test_karamata_identities():
    for n in (2, 3):
        e = gallery("karamata", n=n, gamma="square")
        g = dict(zip(karamata_labels(n), Polynomial.variables(e.variety.k)))
        target = sum(
            ((g[f"d{i}"] + g[f"e{i}"]) * g[f"h{i}"] for i in range(1, n)), Polynomial.zero(e.variety.k)
        )
        assert ideal_member(e.polynomial - target, e.variety)
    e = gallery("karamata", n=2, gamma="binom2")
    g = dict(zip(karamata_labels(2), Polynomial.variables(7)))
    target = (g["e1"] + 1) * g["h1"] + 2 * binomial_atom(7, (0, 0, 0, 0, 0, 0, 2))
    assert ideal_member(e.polynomial - target, e.variety)


def test_karamata_constraints_pull_back_to_zero():
    for n in (2, 3, 4):
        e = gallery("karamata", n=n)
        g = dict(zip(karamata_labels(n), Polynomial.variables(e.variety.k)))
        V = e.variety
        assert pullback(sum((g[f"f{i}"] - g[f"g{i}"] for i in range(1, n + 1)), Polynomial.zero(V.k)), V).is_zero()
        for i in range(1, n):
            assert pullback(g[f"d{i}"] - (g[f"f{i}"] - g[f"f{i + 1}"]), V).is_zero()
            assert pullback(g[f"e{i}"] - (g[f"g{i}"] - g[f"g{i + 1}"]), V).is_zero()


@pytest.mark.parametrize("name", NAMES)
def test_gallery_is_reproducible(name):
    a, b = gallery(name), gallery(name)
    assert a == b


def test_gallery_errors():
    with pytest.raises(GalleryError):
        gallery("nope")
    with pytest.raises(GalleryError):
        gallery("cauchy", n=0)
    with pytest.raises(GalleryError):
        gallery("fermat", p=4)
    with pytest.raises(GalleryError):
        gallery("karamata", gamma="cube")
    with pytest.raises(GalleryError):
        gallery("motzkin", n=2)


EXPECTED_VERDICTS = {
    "cauchy": False,
    "minkowski": False,
    "alexandrov-fenchel": False,
    "amgm": False,
    "amgm-weak": False,
    "motzkin": False,
    "fermat": True,
    "hadamard": False,
}


@pytest.mark.parametrize("name, good", sorted(EXPECTED_VERDICTS.items()))
def test_gallery_verdicts(name, good):
    assert classify(gallery(name).polynomial, box_bound=2).goodness.is_good == good


def test_box_scan_is_exhaustive_lexicographic():
    p = P("x1^2 - x1*x2 + x2^2")
    # brute-force the first failure independently
    first = None
    for c in itertools.product(range(3), repeat=2):
        for i in range(2):
            up = list(c)
            up[i] += 1
            if up[i] <= 2 and evaluate(p, c) > evaluate(p, up):
                first = first or (c, i)
    w = monotone_witness(p, 2)
    assert (w.point, w.direction) == first


def _scan_by_evaluation(p, bound):
    for c in itertools.product(range(bound + 1), repeat=p.arity):
        for i in range(p.arity):
            if c[i] < bound:
                up = c[:i] + (c[i] + 1,) + c[i + 1 :]
                if evaluate(p, c) > evaluate(p, up):
                    return c, i, evaluate(p, c), evaluate(p, up)
    return None


@settings(max_examples=150)
@given(polynomials(max_arity=3, max_degree=4, max_terms=5), st.integers(0, 3))
def test_box_grid_matches_pointwise_evaluation(p, bound):
    vals = box_values(p, bound)
    for c in itertools.product(range(bound + 1), repeat=p.arity):
        assert vals.value(c) == evaluate(p, c)
    w = monotone_witness(p, bound, vals)
    expected = _scan_by_evaluation(p, bound)
    assert (None if w is None else (w.point, w.direction, w.value, w.next_value)) == expected
    assert nonneg_on_box(p, bound, vals) == all(
        evaluate(p, c) >= 0 for c in itertools.product(range(bound + 1), repeat=p.arity)
    )


def test_box_grid_falls_back_to_exact_integers():
    p = P("x1^9*x2^9 - 3*x1^8*x2^9") * (10**12)
    vals = box_values(p, 9)
    assert vals.grid.dtype == object
    assert vals.value((9, 9)) == evaluate(p, (9, 9))
    w = monotone_witness(p, 9, vals)
    assert (w.point, w.direction) == _scan_by_evaluation(p, 9)[:2]
