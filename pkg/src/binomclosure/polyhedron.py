"""The standard-form polyhedron whose integer points are binomial-good
representatives of a coset phi + I, for graph varieties with affine zeta.

Variables x_e range over exponents e in N^k with |e| <= delta where
delta = deg tau*(phi); there is one equation per parameter exponent v in N^ell
with |v| <= delta, matching the binomial coefficient of C(v) in
tau*(phi) against the combination sum_e x_e tau*(beta_e).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .lp import DEFAULT_NODE_BUDGET, FeasibilityResult
from .poly import (
    ArityError,
    Exponent,
    Polynomial,
    binom_value,
    binomial_atom,
    exponents_up_to,
    to_binomial_basis,
)
from .variety import GraphVariety, ideal_member, pullback


class NonAffineVarietyError(ValueError):
    """The polyhedron criterion only holds for affine-linear zeta."""


@dataclass(frozen=True)
class Polyhedron:
    variables: tuple[Exponent, ...]
    parameters: tuple[Exponent, ...]
    matrix: tuple[tuple[Fraction | int, ...], ...]  # integral entries are kept as int
    rhs: tuple[Fraction, ...]
    delta: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.parameters), len(self.variables)

    def column(self, e: Sequence[int]) -> tuple[Fraction, ...]:
        j = self.variables.index(tuple(e))
        return tuple(row[j] for row in self.matrix)

    def satisfies(self, x: Sequence[Fraction | int]) -> bool:
        if len(x) != len(self.variables) or any(Fraction(a) < 0 for a in x):
            return False
        for row, b in zip(self.matrix, self.rhs):
            if sum((a * Fraction(xi) for a, xi in zip(row, x) if a), Fraction(0)) != b:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "variables": [_exp_str("e", e) for e in self.variables],
            "parameters": [_exp_str("v", v) for v in self.parameters],
            "matrix": [[_rat_str(a) for a in row] for row in self.matrix],
            "rhs": [_rat_str(b) for b in self.rhs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _exp_str(letter: str, e: Exponent) -> str:
    return f"{letter}=(" + ",".join(str(a) for a in e) + ")"


def _rat_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _parse_exp(text: str) -> Exponent:
    _, body = text.split("=", 1)
    body = body.strip()[1:-1]
    return tuple(int(a) for a in body.split(",")) if body else ()


def load_polyhedron(data: dict | str) -> Polyhedron:
    if isinstance(data, str):
        data = json.loads(data)
    return Polyhedron(
        variables=tuple(_parse_exp(s) for s in data["variables"]),
        parameters=tuple(_parse_exp(s) for s in data["parameters"]),
        matrix=tuple(tuple(Fraction(a) for a in row) for row in data["matrix"]),
        rhs=tuple(Fraction(b) for b in data["rhs"]),
        delta=int(data["delta"]),
    )


def _check_affine(V: GraphVariety) -> None:
    for pos, z in V.zeta_for().items():
        if not z.is_affine():
            raise NonAffineVarietyError(
                f"zeta for coordinate {pos + 1} is not affine linear; the integer-point "
                "criterion only applies to affine-linear parametrizations"
            )
        if z.degree < 1:
            raise NonAffineVarietyError(f"zeta for coordinate {pos + 1} is constant")


def build_polyhedron(phi: Polynomial, V: GraphVariety, delta_plus: int = 0) -> Polyhedron:
    """Assemble P(phi, zeta). ``delta_plus`` raises the degree bound for spot checks."""
    if phi.arity != V.k:
        raise ArityError(f"phi has arity {phi.arity}, variety has k={V.k}")
    if delta_plus < 0:
        raise ValueError("delta_plus must be nonnegative")
    _check_affine(V)
    phi_prime = pullback(phi, V)
    delta = max(int(phi_prime.degree), 0) if not phi_prime.is_zero() else 0
    delta += delta_plus
    variables = tuple(exponents_up_to(V.k, delta))
    parameters = tuple(exponents_up_to(V.ell, delta))
    cols = _columns(V, variables, parameters, delta)
    matrix = tuple(zip(*cols))
    target = to_binomial_basis(phi_prime)
    rhs = tuple(target[v] for v in parameters)
    return Polyhedron(variables, parameters, matrix, rhs, delta)


def _columns(
    V: GraphVariety, variables: Sequence[Exponent], parameters: Sequence[Exponent], delta: int
) -> list[list[Fraction | int]]:
    """Binomial coefficients of tau*(beta_e) for every e, by finite differences.

    tau*(beta_e) has degree <= |e| <= delta, so its coefficients are the
    iterated forward differences at 0 of its values on the simplex of
    parameter points, which is closed under the one-axis Newton transform.
    """
    index = {u: i for i, u in enumerate(parameters)}
    values = _tau_values(V, parameters)
    integral = all(isinstance(c, int) for row in values for c in row)
    # table[b][a][i] = C(tau(u_i)_b, a)
    table = [[_binom_row([values[i][b] for i in range(len(parameters))], a) for a in range(delta + 1)] for b in range(V.k)]
    steps = []
    for axis in range(V.ell):
        for step in range(1, delta + 1):
            todo = [u for u in parameters if u[axis] >= step]
            todo.sort(key=lambda u: -u[axis])
            for u in todo:
                lower = u[:axis] + (u[axis] - 1,) + u[axis + 1 :]
                steps.append((index[u], index[lower]))
    cols = []
    for e in variables:
        q: list = [1] * len(parameters)
        for b, a in enumerate(e):
            if a:
                row = table[b][a]
                q = [x * y for x, y in zip(q, row)]
        for i, j in steps:
            q[i] -= q[j]
        cols.append(q if integral else [_int_if_whole(x) if isinstance(x, Fraction) else x for x in q])
    return cols


def _tau_values(V: GraphVariety, parameters: Sequence[Exponent]) -> list[list[Fraction | int]]:
    """tau(u) for every parameter point, using that each zeta is affine."""
    zero = (0,) * V.ell
    units = [tuple(int(i == j) for i in range(V.ell)) for j in range(V.ell)]
    forms = {
        pos: (_int_if_whole(z.coefficient(zero)), [_int_if_whole(z.coefficient(e)) for e in units])
        for pos, z in V.zeta_for().items()
    }
    out = []
    for u in parameters:
        row: list[Fraction | int] = [0] * V.k
        for j, pos in enumerate(V.parameter_positions):
            row[pos] = u[j]
        for pos, (c0, lin) in forms.items():
            row[pos] = _int_if_whole(Fraction(c0 + sum(c * a for c, a in zip(lin, u) if a)))
        out.append(row)
    return out


def _binom_row(xs: list, a: int) -> list:
    return [_int_binom(x, a) if isinstance(x, int) else _int_if_whole(binom_value(x, a)) for x in xs]


def _int_binom(n: int, a: int) -> int:
    if n >= 0:
        return math.comb(n, a)
    return (-1) ** a * math.comb(a - n - 1, a)


def _int_if_whole(c: Fraction) -> Fraction | int:
    return c.numerator if c.denominator == 1 else c


def lp_feasible(P: Polyhedron) -> FeasibilityResult:
    return lp.lp_feasible_system(P.matrix, P.rhs)


def ilp_feasible(P: Polyhedron, budget: int = DEFAULT_NODE_BUDGET) -> FeasibilityResult:
    return lp.ilp_feasible_system(P.matrix, P.rhs, budget)


@dataclass(frozen=True)
class CosetVerdict:
    kind: str  # "good" | "bad" | "unknown"
    certificate: Polynomial | None = None
    evidence: str = ""
    polyhedron: Polyhedron | None = None
    result: FeasibilityResult | None = None

    GOOD = "good"
    BAD = "bad"
    UNKNOWN = "unknown"

    @property
    def is_good(self) -> bool:
        return self.kind == self.GOOD


def certificate_polynomial(P: Polyhedron, point: Sequence[Fraction], k: int) -> Polynomial:
    """sum_e x_e * beta_e in the ambient variables."""
    out = Polynomial.zero(k)
    for e, x in zip(P.variables, point):
        if x:
            out = out + binomial_atom(k, e).scale(x)
    return out


def coset_binomial_good(
    phi: Polynomial,
    V: GraphVariety,
    budget: int = DEFAULT_NODE_BUDGET,
    delta_plus: int = 0,
) -> CosetVerdict:
    for pos, z in V.zeta_for().items():
        if not z.has_integer_coefficients():
            raise NonAffineVarietyError(f"zeta for coordinate {pos + 1} has non-integer coefficients")
    P = build_polyhedron(phi, V, delta_plus)
    relaxed = lp_feasible(P)
    if not relaxed.feasible:
        return CosetVerdict(CosetVerdict.BAD, evidence="lp_infeasible", polyhedron=P, result=relaxed)
    res = ilp_feasible(P, budget)
    if res.kind == lp.UNKNOWN:
        return CosetVerdict(CosetVerdict.UNKNOWN, evidence=res.reason, polyhedron=P, result=res)
    if not res.feasible:
        return CosetVerdict(CosetVerdict.BAD, evidence="ilp_infeasible", polyhedron=P, result=res)
    assert res.point is not None
    cert = certificate_polynomial(P, res.point, V.k)
    # soundness is cheap to re-verify, so do it
    assert ideal_member(phi - cert, V)
    return CosetVerdict(CosetVerdict.GOOD, cert, "integer_point", P, res)
