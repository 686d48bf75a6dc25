"""Named polynomial families: inequalities written as (claimed nonnegative)
differences, counting identities, and the closure problems on varieties."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .poly import Polynomial, binomial_atom, compose
from .variety import GraphVariety, from_linear_kernel


class GalleryError(ValueError):
    pass


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    parameters: tuple[tuple[str, object], ...]
    polynomial: Polynomial
    variety: Optional[GraphVariety] = None
    # a parametrized curve into the domain, when the construction uses one
    curve: Optional[tuple[Polynomial, ...]] = None
    labels: tuple[str, ...] = ()

    def restricted(self) -> Polynomial:
        """The polynomial composed with its curve."""
        if self.curve is None:
            raise GalleryError(f"{self.name} has no curve")
        return compose(self.polynomial, self.curve)


def _sign(perm: Sequence[int]) -> int:
    s = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(M)
    out = Polynomial.zero(M[0][0].arity)
    for perm in itertools.permutations(range(n)):
        term = Polynomial.constant(out.arity, _sign(perm))
        for i, j in enumerate(perm):
            term = term * M[i][j]
        out = out + term
    return out


def permanent(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(M)
    out = Polynomial.zero(M[0][0].arity)
    for perm in itertools.permutations(range(n)):
        term = Polynomial.constant(out.arity, 1)
        for i, j in enumerate(perm):
            term = term * M[i][j]
        out = out + term
    return out


def _need(n: int, low: int, what: str, high: int | None = None) -> None:
    if not isinstance(n, int) or n < low or (high is not None and n > high):
        bound = f">= {low}" if high is None else f"in [{low}, {high}]"
        raise GalleryError(f"{what} must be an integer {bound}, got {n!r}")


# ---------------------------------------------------------------------------
# inequalities


def cauchy(n: int = 2) -> GalleryEntry:
    """(sum x_i^2)(sum y_i^2) - (sum x_i y_i)^2 in x_1..x_n, y_1..y_n."""
    _need(n, 1, "n")
    v = Polynomial.variables(2 * n)
    x, y = v[:n], v[n:]
    sx = sum((a * a for a in x), Polynomial.zero(2 * n))
    sy = sum((b * b for b in y), Polynomial.zero(2 * n))
    sxy = sum((a * b for a, b in zip(x, y)), Polynomial.zero(2 * n))
    labels = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))
    return GalleryEntry("cauchy", (("n", n),), sx * sy - sxy * sxy, labels=labels)


def minkowski(n: int = 2) -> GalleryEntry:
    """prod (x_i^n + y_i^n) - (prod x_i + prod y_i)^n in x_1..x_n, y_1..y_n."""
    _need(n, 1, "n")
    v = Polynomial.variables(2 * n)
    x, y = v[:n], v[n:]
    lhs = Polynomial.constant(2 * n, 1)
    px = Polynomial.constant(2 * n, 1)
    py = Polynomial.constant(2 * n, 1)
    for a, b in zip(x, y):
        lhs = lhs * (a**n + b**n)
        px = px * a
        py = py * b
    labels = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"y{i}" for i in range(1, n + 1))
    return GalleryEntry("minkowski", (("n", n),), lhs - (px + py) ** n, labels=labels)


def alexandrov_fenchel(n: int = 2) -> GalleryEntry:
    """per(x,y,Z)^2 - per(x,x,Z) per(y,y,Z) for bricks.

    Variables: x_1..x_n, y_1..y_n, then z_ij (j = 3..n) row by row; n^2 in all.
    """
    _need(n, 2, "n", 6)
    k = n * n
    v = Polynomial.variables(k)
    x, y = v[:n], v[n : 2 * n]
    z = v[2 * n :]
    labels = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    labels += [f"z{i}{j}" for i in range(1, n + 1) for j in range(3, n + 1)]

    def rows(c1, c2):
        return [[c1[i], c2[i]] + z[i * (n - 2) : (i + 1) * (n - 2)] for i in range(n)]

    mixed = permanent(rows(x, y))
    poly = mixed * mixed - permanent(rows(x, x)) * permanent(rows(y, y))
    return GalleryEntry("alexandrov-fenchel", (("n", n),), poly, labels=tuple(labels))


def hadamard(d: int = 3) -> GalleryEntry:
    """prod_i (a_i1^2 + ... + a_id^2) - det(A)^2, entries a_ij row-major."""
    _need(d, 1, "d", 5)
    k = d * d
    v = Polynomial.variables(k)
    A = [v[i * d : (i + 1) * d] for i in range(d)]
    rhs = Polynomial.constant(k, 1)
    for row in A:
        rhs = rhs * sum((a * a for a in row), Polynomial.zero(k))
    det = determinant(A)
    labels = tuple(f"a{i}{j}" for i in range(1, d + 1) for j in range(1, d + 1))
    return GalleryEntry("hadamard", (("d", d),), rhs - det * det, labels=labels)


def hadamard_specialization() -> GalleryEntry:
    """H_3 along the univariate matrix rows (x, C(x,3), 0), (0,1,1), (1,0,1)."""
    x = Polynomial.var(1, 0)
    one, zero = Polynomial.constant(1, 1), Polynomial.zero(1)
    curve = (x, binomial_atom(1, (3,)), zero, zero, one, one, one, zero, one)
    return GalleryEntry("hadamard-specialization", (), hadamard(3).polynomial, curve=curve)


def motzkin() -> GalleryEntry:
    x, y = Polynomial.variables(2)
    return GalleryEntry("motzkin", (), x**2 * y**4 + x**4 * y**2 - 3 * x**2 * y**2 + 1)


def amgm() -> GalleryEntry:
    """a^2 + b^2 - 2ab."""
    a, b = Polynomial.variables(2)
    return GalleryEntry("amgm", (), a * a + b * b - 2 * a * b)


def amgm_weak() -> GalleryEntry:
    """a^2 + b^2 - ab."""
    a, b = Polynomial.variables(2)
    return GalleryEntry("amgm-weak", (), a * a - a * b + b * b)


def log_concavity() -> GalleryEntry:
    """g^2 - f h in (f, g, h) with the curve (x, y) -> (1, x + y, 4xy)."""
    f, g, h = Polynomial.variables(3)
    x, y = Polynomial.variables(2)
    curve = (Polynomial.constant(2, 1), x + y, 4 * x * y)
    return GalleryEntry("log-concavity", (), g * g - f * h, curve=curve, labels=("f", "g", "h"))


# ---------------------------------------------------------------------------
# identities and problems on varieties


def fermat(p: int = 5) -> GalleryEntry:
    """(x^p - x)/p."""
    _need(p, 2, "p")
    if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise GalleryError(f"p must be prime, got {p}")
    x = Polynomial.var(1, 0)
    return GalleryEntry("fermat", (("p", p),), (x**p - x) / p)


AD_LABELS = ("a0", "a1", "b0", "b1", "c0", "c1", "d0", "d1", "h1", "h2", "h3", "h4")


def ahlswede_daykin() -> GalleryEntry:
    """(g0+g1)(d0+d1) - (a0+a1)(b0+b1) on the quadratic graph variety
    a_i b_j + h = g d of the four-function setting, with its one-parameter curve."""
    k = 12
    a0, a1, b0, b1, c0, c1, d0, d1, *_ = Polynomial.variables(k)
    phi = (c0 + c1) * (d0 + d1) - (a0 + a1) * (b0 + b1)
    A0, A1, B0, B1, C0, C1, D0, D1 = Polynomial.variables(8)
    zetas = (
        C0 * D0 - A0 * B0,
        C0 * D1 - A0 * B1,
        C0 * D1 - A1 * B0,
        C1 * D1 - A1 * B1,
    )
    V = GraphVariety(k, 8, zetas)
    x = Polynomial.var(1, 0)
    one, zero = Polynomial.constant(1, 1), Polynomial.zero(1)
    c2 = 2 * binomial_atom(1, (2,))
    curve = (one, one, x, x, x, one, one, x, zero, c2, c2, zero)
    return GalleryEntry("ahlswede-daykin", (), phi, V, curve, AD_LABELS)


def karamata_labels(n: int) -> tuple[str, ...]:
    out = [f"f{i}" for i in range(1, n + 1)] + [f"g{i}" for i in range(1, n + 1)]
    for letter in "deh":
        out += [f"{letter}{i}" for i in range(1, n)]
    return tuple(out)


def karamata_matrix(n: int) -> list[list[int]]:
    """Constraint rows over (f, g, d, e, h): d_i = f_i - f_{i+1}, e_i = g_i - g_{i+1},
    h_i = sum_{j<=i} (f_j - g_j), and sum f = sum g."""
    _need(n, 2, "n")
    k = 5 * n - 3
    F, G, D, E, H = 0, n, 2 * n, 3 * n - 1, 4 * n - 2
    rows = []
    for i in range(n - 1):
        r = [0] * k
        r[F + i], r[F + i + 1], r[D + i] = 1, -1, -1
        rows.append(r)
    for i in range(n - 1):
        r = [0] * k
        r[G + i], r[G + i + 1], r[E + i] = 1, -1, -1
        rows.append(r)
    for i in range(n - 1):
        r = [0] * k
        for j in range(i + 1):
            r[F + j], r[G + j] = 1, -1
        r[H + i] = -1
        rows.append(r)
    r = [0] * k
    for j in range(n):
        r[F + j], r[G + j] = 1, -1
    rows.append(r)
    return rows


_KARAMATA_GAMMAS: dict[str, Callable[[Polynomial], Polynomial]] = {
    "square": lambda t: t * t,
    "binom2": lambda t: t * (t - 1) / 2,
}


def karamata(n: int = 3, gamma: str = "binom2", scale: int = 1) -> GalleryEntry:
    """scale * (sum gamma(f_i) - sum gamma(g_i)) on the majorization variety."""
    _need(n, 2, "n")
    if gamma not in _KARAMATA_GAMMAS:
        raise GalleryError(f"gamma must be one of {sorted(_KARAMATA_GAMMAS)}, got {gamma!r}")
    k = 5 * n - 3
    v = Polynomial.variables(k)
    g = _KARAMATA_GAMMAS[gamma]
    phi = Polynomial.zero(k)
    for i in range(n):
        phi = phi + g(v[i]) - g(v[n + i])
    V = from_linear_kernel(karamata_matrix(n))
    params = (("n", n), ("gamma", gamma)) + ((("scale", scale),) if scale != 1 else ())
    return GalleryEntry("karamata", params, phi.scale(scale), V, labels=karamata_labels(n))


def sourceorsink() -> GalleryEntry:
    """sources + sinks - 1 with sinks = sources + 1."""
    f1, f2 = Polynomial.variables(2)
    v1 = Polynomial.var(1, 0)
    V = GraphVariety(2, 1, (v1 + 1,))
    return GalleryEntry("sourceorsink", (), f1 + f2 - 1, V, labels=("f", "g"))


def sperner() -> GalleryEntry:
    """t_+ + t_- - 1 on t_+ = t_- + 1; t_- is the parameter."""
    tp, tm = Polynomial.variables(2)
    v1 = Polynomial.var(1, 0)
    V = GraphVariety(2, 1, (v1 + 1,), column_permutation=(1, 0))
    return GalleryEntry("sperner", (), tp + tm - 1, V, labels=("t+", "t-"))


def decrementation() -> GalleryEntry:
    f1, f2, f3 = Polynomial.variables(3)
    v1, v2 = Polynomial.variables(2)
    V = GraphVariety(3, 2, (2 * v2 - 1,))
    return GalleryEntry("decrementation", (), f1 + f2 + f3 - 1, V)


def unbalanced_flow() -> GalleryEntry:
    f1, f2 = Polynomial.variables(2)
    v1 = Polynomial.var(1, 0)
    V = GraphVariety(2, 1, (3 * v1 - 6,))
    return GalleryEntry("unbalanced-flow", (), 8 - 4 * f1 + 2 * f2, V)


_BUILDERS: dict[str, Callable[..., GalleryEntry]] = {
    "cauchy": cauchy,
    "minkowski": minkowski,
    "alexandrov-fenchel": alexandrov_fenchel,
    "hadamard": hadamard,
    "hadamard-specialization": hadamard_specialization,
    "motzkin": motzkin,
    "amgm": amgm,
    "amgm-weak": amgm_weak,
    "log-concavity": log_concavity,
    "fermat": fermat,
    "ahlswede-daykin": ahlswede_daykin,
    "karamata": karamata,
    "sourceorsink": sourceorsink,
    "sperner": sperner,
    "decrementation": decrementation,
    "unbalanced-flow": unbalanced_flow,
}

NAMES = tuple(sorted(_BUILDERS))


def gallery(name: str, **params) -> GalleryEntry:
    key = name.strip().lower().replace("_", "-")
    if key not in _BUILDERS:
        raise GalleryError(f"unknown gallery entry {name!r}; known: {', '.join(NAMES)}")
    try:
        return _BUILDERS[key](**params)
    except TypeError as exc:
        raise GalleryError(f"bad parameters for {key}: {exc}") from None
