from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from binomclosure.poly import Polynomial  # noqa: E402

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")


@st.composite
def polynomials(draw, max_arity: int = 4, max_degree: int = 6, max_terms: int = 6, integral: bool = False):
    k = draw(st.integers(1, max_arity))
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        degree = draw(st.integers(0, max_degree))
        e = [0] * k
        for _ in range(degree):
            e[draw(st.integers(0, k - 1))] += 1
        num = draw(st.integers(-9, 9))
        den = 1 if integral else draw(st.sampled_from([1, 1, 2, 3, 6]))
        terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + Fraction(num, den)
    return Polynomial(k, terms)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    import random

    return random.Random(20240601)
