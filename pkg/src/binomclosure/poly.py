"""Sparse multivariate polynomials over Q and the binomial basis.

Exponent vectors are plain tuples of nonnegative ints. Coefficients are
``fractions.Fraction`` and every operation normalizes eagerly, so two
polynomials are equal iff their term dicts are equal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class ArityError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


def _frac(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def support_key(e: Exponent) -> tuple:
    """Order used for printing expansions and picking witnesses:
    total degree descending, then lexicographically descending."""
    return (-sum(e), tuple(-a for a in e))


def graded_key(e: Exponent) -> tuple:
    """Total degree ascending, then lexicographically descending."""
    return (sum(e), tuple(-a for a in e))


def exponents_up_to(k: int, degree: int) -> list[Exponent]:
    """All e in N^k with |e| <= degree, in ``graded_key`` order."""
    out: list[Exponent] = []
    for d in range(degree + 1):
        out.extend(_compositions(k, d))
    return out


def _compositions(k: int, d: int) -> list[Exponent]:
    # lexicographically descending weak compositions of d into k parts
    if k == 0:
        return [()] if d == 0 else []
    if k == 1:
        return [(d,)]
    return [(a,) + rest for a in range(d, -1, -1) for rest in _compositions(k - 1, d - a)]


@dataclass(frozen=True, eq=False)
class Polynomial:
    arity: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        clean: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e = tuple(int(a) for a in e)
            if len(e) != self.arity:
                raise ArityError(f"exponent {e} does not have arity {self.arity}")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent in {e}")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "terms", clean)

    # constructors

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls(arity, {})

    @classmethod
    def constant(cls, arity: int, c: Scalar) -> "Polynomial":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, arity: int, i: int) -> "Polynomial":
        """The i-th variable (0-based)."""
        if not 0 <= i < arity:
            raise ArityError(f"variable index {i} out of range for arity {arity}")
        e = [0] * arity
        e[i] = 1
        return cls(arity, {tuple(e): 1})

    @classmethod
    def variables(cls, arity: int) -> list["Polynomial"]:
        return [cls.var(arity, i) for i in range(arity)]

    # structure

    @property
    def degree(self) -> float:
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return -math.inf
        return max(sum(e) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def is_affine(self) -> bool:
        return all(sum(e) <= 1 for e in self.terms)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: support_key(t[0]))

    # ring operations

    def _check(self, other: "Polynomial") -> None:
        if self.arity != other.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.arity, _frac(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.arity, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __truediv__(self, other: Scalar) -> "Polynomial":
        return self.scale(1 / _frac(other))

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Polynomial.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, r: Scalar) -> "Polynomial":
        r = _frac(r)
        return Polynomial(self.arity, {e: c * r for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.arity, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    # evaluation and substitution

    def __call__(self, *point: Scalar) -> Fraction:
        return evaluate(self, point)

    def embed(self, arity: int, positions: Sequence[int]) -> "Polynomial":
        """Rename variable i to variable positions[i] in a ring of ``arity`` variables."""
        if len(positions) != self.arity:
            raise ArityError("one target position per variable required")
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            new = [0] * arity
            for i, a in enumerate(e):
                new[positions[i]] += a
            out[tuple(new)] = c
        return Polynomial(arity, out)

    def __repr__(self) -> str:
        return f"Polynomial({self.arity}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    p._check(q)
    return p * q


def scale(p: Polynomial, r: Scalar) -> Polynomial:
    return p.scale(r)


def compose(p: Polynomial, gamma: Sequence[Polynomial]) -> Polynomial:
    """p(gamma_1, ..., gamma_k), expanded."""
    if len(gamma) != p.arity:
        raise ArityError(f"need {p.arity} substitutions, got {len(gamma)}")
    if not gamma:
        raise ArityError("cannot infer target arity from an empty substitution")
    m = gamma[0].arity
    if any(g.arity != m for g in gamma):
        raise ArityError("substituted polynomials must share one arity")
    powers: list[dict[int, Polynomial]] = [{} for _ in gamma]

    def power(i: int, a: int) -> Polynomial:
        cache = powers[i]
        if a not in cache:
            cache[a] = gamma[i] ** a
        return cache[a]

    out = Polynomial.zero(m)
    for e, c in p.terms.items():
        term = Polynomial.constant(m, c)
        for i, a in enumerate(e):
            if a:
                term = term * power(i, a)
        out = out + term
    return out


def evaluate(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    if len(point) != p.arity:
        raise ArityError(f"point of length {len(point)} for arity {p.arity}")
    pt = [_frac(x) for x in point]
    total = Fraction(0)
    for e, c in p.terms.items():
        term = c
        for x, a in zip(pt, e):
            if a:
                term *= x**a
        total += term
    return total


# ---------------------------------------------------------------------------
# binomial coefficients as polynomials


def binom_value(x: Scalar, i: int) -> Fraction:
    """C(x, i) = x(x-1)...(x-i+1)/i! for any rational x."""
    if i < 0:
        raise ValueError("lower index must be nonnegative")
    x = _frac(x)
    num = Fraction(1)
    for j in range(i):
        num *= x - j
    return num / math.factorial(i)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1_signed(n: int, k: int) -> int:
    """Coefficient of x^k in the falling factorial x(x-1)...(x-n+1)."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k)


@lru_cache(maxsize=None)
def _power_in_binomials(n: int) -> tuple[tuple[int, int], ...]:
    # x^n = sum_j S(n, j) j! C(x, j)
    return tuple((j, stirling2(n, j) * math.factorial(j)) for j in range(n + 1) if stirling2(n, j))


@lru_cache(maxsize=None)
def _binomial_in_powers(n: int) -> tuple[tuple[int, Fraction], ...]:
    # C(x, n) = sum_j s(n, j) x^j / n!
    f = math.factorial(n)
    return tuple(
        (j, Fraction(stirling1_signed(n, j), f)) for j in range(n + 1) if stirling1_signed(n, j)
    )


def binomial_atom(arity: int, e: Sequence[int]) -> Polynomial:
    """beta_e = prod_i C(x_i, e_i) expanded into monomials."""
    e = tuple(e)
    if len(e) != arity:
        raise ArityError(f"exponent {e} does not have arity {arity}")
    return from_binomial_basis(BinomialExpansion(arity, {e: Fraction(1)}))


@dataclass(frozen=True, eq=False)
class BinomialExpansion:
    """Coefficients c_e of sum_e c_e * prod_i C(x_i, e_i)."""

    arity: int
    coefficients: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[Exponent, Fraction] = {}
        for e, c in self.coefficients.items():
            e = tuple(int(a) for a in e)
            if len(e) != self.arity or any(a < 0 for a in e):
                raise ArityError(f"bad exponent {e} for arity {self.arity}")
            c = _frac(c)
            clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "coefficients", {e: c for e, c in clean.items() if c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinomialExpansion):
            return NotImplemented
        return self.arity == other.arity and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.coefficients.items())))

    def __getitem__(self, e: Sequence[int]) -> Fraction:
        return self.coefficients.get(tuple(e), Fraction(0))

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self.coefficients)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        """Support in (degree desc, lex desc) order."""
        return sorted(self.coefficients.items(), key=lambda t: support_key(t[0]))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients.values())

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in self.items())
        return f"BinomialExpansion({self.arity}, {{{body}}})"


def to_binomial_basis(p: Polynomial) -> BinomialExpansion:
    """Expand p over prod_i C(x_i, e_i).

    Each monomial factor x_i^a becomes sum_j S(a, j) j! C(x_i, j); the
    per-variable expansions are tensored.
    """
    out: Dict[Exponent, Fraction] = {}
    for e, c in p.terms.items():
        factors = [_power_in_binomials(a) for a in e]
        for combo in itertools.product(*factors):
            b = tuple(j for j, _ in combo)
            w = c
            for _, m in combo:
                w *= m
            out[b] = out.get(b, Fraction(0)) + w
    return BinomialExpansion(p.arity, out)


def from_binomial_basis(x: BinomialExpansion) -> Polynomial:
    out: Dict[Exponent, Fraction] = {}
    for e, c in x.coefficients.items():
        factors = [_binomial_in_powers(a) for a in e]
        for combo in itertools.product(*factors):
            m = tuple(j for j, _ in combo)
            w = c
            for _, s in combo:
                w *= s
            out[m] = out.get(m, Fraction(0)) + w
    return Polynomial(x.arity, out)


def greedy_binomial_basis(p: Polynomial) -> BinomialExpansion:
    """Top-degree-first conversion: peel off the leading monomials.

    beta_e has the single top-degree monomial x^e / e!, so the top homogeneous
    part of the remainder fixes the coefficients of that degree.
    """
    rest = p
    out: Dict[Exponent, Fraction] = {}
    while not rest.is_zero():
        d = rest.degree
        for e, c in list(rest.terms.items()):
            if sum(e) != d:
                continue
            coeff = c * math.prod(math.factorial(a) for a in e)
            out[e] = coeff
            rest = rest - binomial_atom(p.arity, e).scale(coeff)
    return BinomialExpansion(p.arity, out)


def binomial_basis_by_differences(p: Polynomial) -> BinomialExpansion:
    """Coefficients from values at lattice points:
    c_b = p(b) - sum_{a <= b, a != b} c_a beta_a(b), over all |b| <= deg p."""
    if p.is_zero():
        return BinomialExpansion(p.arity, {})
    k = p.arity
    coeffs: Dict[Exponent, Fraction] = {}
    for b in sorted(exponents_up_to(k, int(p.degree)), key=sum):
        acc = evaluate(p, b)
        for a, ca in coeffs.items():
            if a != b and all(x <= y for x, y in zip(a, b)):
                acc -= ca * math.prod(math.comb(y, x) for x, y in zip(a, b))
        coeffs[b] = acc
    return BinomialExpansion(k, coeffs)


def evaluate_expansion(x: BinomialExpansion, point: Sequence[Scalar]) -> Fraction:
    """Evaluate sum c_e prod C(v_i, e_i); negative or rational inputs allowed."""
    if len(point) != x.arity:
        raise ArityError(f"point of length {len(point)} for arity {x.arity}")
    total = Fraction(0)
    for e, c in x.coefficients.items():
        term = c
        for v, a in zip(point, e):
            if a:
                term *= binom_value(v, a)
        total += term
    return total


# ---------------------------------------------------------------------------
# shifted basis on Z^k: prod_i C(x_i + floor(e_i/2), e_i)


def shifted_binomial_atom(arity: int, e: Sequence[int]) -> Polynomial:
    e = tuple(e)
    if len(e) != arity:
        raise ArityError(f"exponent {e} does not have arity {arity}")
    x = Polynomial.variables(arity)
    out = Polynomial.constant(arity, 1)
    for i, a in enumerate(e):
        shifted = x[i] + a // 2
        for j in range(a):
            out = out * (shifted - j)
        out = out / math.factorial(a)
    return out


def to_shifted_binomial_basis(p: Polynomial) -> BinomialExpansion:
    """Expansion over the centered basis; integer iff p is integer-valued on Z^k."""
    rest = p
    out: Dict[Exponent, Fraction] = {}
    while not rest.is_zero():
        d = rest.degree
        for e, c in list(rest.terms.items()):
            if sum(e) != d:
                continue
            coeff = c * math.prod(math.factorial(a) for a in e)
            out[e] = coeff
            rest = rest - shifted_binomial_atom(p.arity, e).scale(coeff)
    return BinomialExpansion(p.arity, out)


def evaluate_shifted_expansion(x: BinomialExpansion, point: Sequence[Scalar]) -> Fraction:
    if len(point) != x.arity:
        raise ArityError(f"point of length {len(point)} for arity {x.arity}")
    total = Fraction(0)
    for e, c in x.coefficients.items():
        term = c
        for v, a in zip(point, e):
            if a:
                term *= binom_value(_frac(v) + a // 2, a)
        total += term
    return total


# ---------------------------------------------------------------------------
# goodness


@dataclass(frozen=True)
class GoodnessVerdict:
    kind: str  # "good" | "bad_negative" | "bad_non_integer"
    witness: Exponent | None = None
    coefficient: Fraction | None = None

    GOOD = "good"
    BAD_NEGATIVE = "bad_negative"
    BAD_NON_INTEGER = "bad_non_integer"

    @property
    def is_good(self) -> bool:
        return self.kind == self.GOOD


def goodness_of_expansion(x: BinomialExpansion) -> GoodnessVerdict:
    # first offending coefficient in support order; a non-integer beats a sign
    for e, c in x.items():
        if c.denominator != 1:
            return GoodnessVerdict(GoodnessVerdict.BAD_NON_INTEGER, e, c)
        if c < 0:
            return GoodnessVerdict(GoodnessVerdict.BAD_NEGATIVE, e, c)
    return GoodnessVerdict(GoodnessVerdict.GOOD)


def is_binomial_good(p: Polynomial) -> GoodnessVerdict:
    return goodness_of_expansion(to_binomial_basis(p))


def is_integer_valued(p: Polynomial) -> bool:
    return to_binomial_basis(p).is_integral()


# ---------------------------------------------------------------------------
# printing


def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_sum(items: Iterable[tuple[Fraction, list[str]]]) -> str:
    parts: list[str] = []
    for c, atoms in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not atoms:
            body = format_fraction(mag)
        elif mag == 1:
            body = "*".join(atoms)
        else:
            body = "*".join([format_fraction(mag)] + atoms)
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    """Render in the text grammar accepted by ``parse_polynomial``."""
    items = []
    for e, c in p.sorted_terms():
        atoms = [f"{var}{i + 1}" if a == 1 else f"{var}{i + 1}^{a}" for i, a in enumerate(e) if a]
        items.append((c, atoms))
    return _format_sum(items)


def format_expansion(x: BinomialExpansion, var: str = "x") -> str:
    items = []
    for e, c in x.items():
        atoms = [f"binom({var}{i + 1},{a})" for i, a in enumerate(e) if a]
        items.append((c, atoms))
    return _format_sum(items)
