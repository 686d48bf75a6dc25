"""Classification of a candidate closure polynomial.

Puts the binomial expansion, integer-valuedness, goodness, an exhaustive box
scan for monotonicity failures and for negative values, and optionally the
coset verdict on a graph variety into one report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .lp import DEFAULT_NODE_BUDGET
from .poly import (
    BinomialExpansion,
    GoodnessVerdict,
    Polynomial,
    format_fraction,
    format_polynomial,
    goodness_of_expansion,
    to_binomial_basis,
)
from .polyhedron import CosetVerdict, coset_binomial_good
from .variety import GraphVariety

DEFAULT_BOX = 6
# (B+1)^k points above this are not scanned
MAX_BOX_POINTS = 2_000_000


class BoxTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class MonotoneWitness:
    point: tuple[int, ...]
    direction: int  # 0-based coordinate
    value: Fraction
    next_value: Fraction


@dataclass(frozen=True)
class BoxValues:
    """scale * p on [0,B]^k as an integer array indexed by the point."""

    grid: np.ndarray
    scale: int
    bound: int

    def value(self, c: tuple[int, ...]) -> Fraction:
        return Fraction(int(self.grid[c]), self.scale)


def box_values(p: Polynomial, bound: int) -> BoxValues:
    if bound < 0:
        raise ValueError("box bound must be nonnegative")
    size = (bound + 1) ** p.arity
    if size > MAX_BOX_POINTS:
        raise BoxTooLargeError(
            f"box [0,{bound}]^{p.arity} has {size} points, above the cap of {MAX_BOX_POINTS}"
        )
    scale = math.lcm(*(c.denominator for c in p.terms.values())) if p.terms else 1
    terms = {e: int(c * scale) for e, c in p.terms.items()}
    # int64 whenever no partial sum can reach 2^62, otherwise exact Python ints
    peak = sum(abs(c) * max(bound, 1) ** sum(e) for e, c in terms.items())
    dtype = np.int64 if peak < 2**62 else object
    powers = np.array([[t**a for t in range(bound + 1)] for a in range(max(p.degree, 0) + 1)], dtype=dtype) if terms else None
    grid = _grid(terms, 0, p.arity, bound, powers, dtype)
    return BoxValues(np.asarray(grid, dtype=dtype).reshape((bound + 1,) * p.arity), scale, bound)


def _grid(terms: dict, i: int, k: int, bound: int, powers, dtype):
    """Values of sum c * x_i^e_i ... x_k^e_k on the sub-box, grouped by e_i."""
    if i == k:
        return np.array(sum(terms.values()), dtype=dtype)
    groups: dict[int, dict] = {}
    for e, c in terms.items():
        groups.setdefault(e[0], {})[e[1:]] = c
    out = np.zeros((bound + 1,) * (k - i), dtype=dtype)
    shape = (bound + 1,) + (1,) * (k - i - 1)
    for a, sub in sorted(groups.items()):
        out = out + powers[a].reshape(shape) * _grid(sub, i + 1, k, bound, powers, dtype)
    return out


def monotone_witness(
    p: Polynomial, box_bound: int = DEFAULT_BOX, values: BoxValues | None = None
) -> Optional[MonotoneWitness]:
    """First (c, i) in lexicographic order with p(c) > p(c + e_i), both inside the box."""
    values = values if values is not None else box_values(p, box_bound)
    best: Optional[tuple[tuple[int, ...], int]] = None
    for i in range(p.arity):
        drops = np.argwhere(np.diff(values.grid, axis=i) < 0)
        if len(drops):
            # argwhere lists indices in C order, which is lexicographic
            c = tuple(int(a) for a in drops[0])
            if best is None or (c, i) < best:
                best = (c, i)
    if best is None:
        return None
    c, i = best
    up = c[:i] + (c[i] + 1,) + c[i + 1 :]
    return MonotoneWitness(c, i, values.value(c), values.value(up))


def nonneg_on_box(p: Polynomial, box_bound: int = DEFAULT_BOX, values: BoxValues | None = None) -> bool:
    """Bounded check only: p >= 0 on [0,B]^k says nothing beyond the box."""
    values = values if values is not None else box_values(p, box_bound)
    return bool((values.grid >= 0).all())


@dataclass
class ClosureReport:
    polynomial: Polynomial
    expansion: BinomialExpansion
    integer_valued: bool
    goodness: GoodnessVerdict
    box_bound: int
    monotone_witness: Optional[MonotoneWitness] = None
    nonneg_on_box: Optional[bool] = None
    box_note: str = ""
    variety: Optional[GraphVariety] = None
    coset: Optional[CosetVerdict] = None
    classification_notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        g: dict = {"kind": self.goodness.kind}
        if self.goodness.witness is not None:
            g["witness"] = list(self.goodness.witness)
            g["coefficient"] = format_fraction(self.goodness.coefficient)
        out: dict = {
            "input": format_polynomial(self.polynomial),
            "expansion": [{"e": list(e), "c": format_fraction(c)} for e, c in self.expansion.items()],
            "integer_valued": self.integer_valued,
            "goodness": g,
        }
        if self.monotone_witness is not None:
            w = self.monotone_witness
            out["monotone_witness"] = {
                "point": list(w.point),
                "direction": w.direction + 1,
                "value": format_fraction(w.value),
                "next_value": format_fraction(w.next_value),
            }
        box: dict = {"bound": self.box_bound, "holds": self.nonneg_on_box}
        if self.box_note:
            box["note"] = self.box_note
        out["nonneg_on_box"] = box
        if self.coset is not None and self.variety is not None:
            c: dict = {"variety": self.variety.to_json(), "verdict": self.coset.kind}
            if self.coset.certificate is not None:
                c["certificate"] = format_polynomial(self.coset.certificate)
            if self.coset.evidence:
                c["evidence"] = self.coset.evidence
            out["coset"] = c
        out["notes"] = list(self.classification_notes)
        return out


def classify(
    p: Polynomial,
    V: GraphVariety | None = None,
    box_bound: int = DEFAULT_BOX,
    ilp_budget: int = DEFAULT_NODE_BUDGET,
    delta_plus: int = 0,
) -> ClosureReport:
    expansion = to_binomial_basis(p)
    verdict = goodness_of_expansion(expansion)
    report = ClosureReport(p, expansion, expansion.is_integral(), verdict, box_bound)
    try:
        values = box_values(p, box_bound)
    except BoxTooLargeError as exc:
        report.box_note = f"box scan skipped: {exc}"
    else:
        report.monotone_witness = monotone_witness(p, box_bound, values)
        report.nonneg_on_box = nonneg_on_box(p, box_bound, values)

    notes = report.classification_notes
    if verdict.is_good:
        notes.append("binomial-good: a relativizing #P closure property")
    else:
        notes.append("binomial-bad: not a relativizing #P closure property")
    if report.integer_valued:
        notes.append("integer-valued: a GapP closure property")
    else:
        notes.append("not integer-valued: not a GapP closure property")
    if report.monotone_witness is not None:
        notes.append("not monotone on the box: not a #P closure property unless UP = coUP")
    if report.nonneg_on_box is not None:
        holds = "holds" if report.nonneg_on_box else "fails"
        notes.append(f"nonnegativity {holds} on [0,{box_bound}]^{p.arity} (bounded check, not a proof)")

    if V is not None:
        report.variety = V
        report.coset = coset_binomial_good(p, V, ilp_budget, delta_plus)
        if report.coset.kind == CosetVerdict.GOOD:
            notes.append("coset binomial-good on the variety: relativizing closure for inputs on it")
        elif report.coset.kind == CosetVerdict.BAD:
            notes.append("coset binomial-bad on the variety")
        else:
            notes.append("coset verdict unknown: node budget exhausted")
    return report
