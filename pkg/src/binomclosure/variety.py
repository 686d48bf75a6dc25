"""Graph varieties Z = {f : f_b = zeta_b(f_params)} and the pullback tau*.

A variety is stored in *canonical order*: the ``ell`` parameters first, then
the ``k - ell`` non-parameters. ``column_permutation[j]`` is the original
(0-based) coordinate sitting at canonical position j; polynomials handed to
``pullback``/``ideal_member``/``contains_point`` are always written in the
original coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .parse import parse_polynomial
from .poly import ArityError, Polynomial, compose, evaluate, format_polynomial


class InconsistentSystemError(ValueError):
    """The affine kernel description has no solutions."""


@dataclass(frozen=True)
class GraphVariety:
    ambient_arity: int
    parameter_arity: int
    zetas: tuple[Polynomial, ...]
    column_permutation: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        k, ell = self.ambient_arity, self.parameter_arity
        object.__setattr__(self, "zetas", tuple(self.zetas))
        if not 0 <= ell <= k:
            raise ValueError(f"need 0 <= ell <= k, got ell={ell}, k={k}")
        if len(self.zetas) != k - ell:
            raise ValueError(f"expected {k - ell} zeta polynomials, got {len(self.zetas)}")
        for z in self.zetas:
            if z.arity != ell:
                raise ArityError(f"zeta must be a polynomial in {ell} parameters")
        if self.column_permutation is not None:
            perm = tuple(self.column_permutation)
            if sorted(perm) != list(range(k)):
                raise ValueError(f"column_permutation {perm} is not a permutation of 0..{k - 1}")
            object.__setattr__(self, "column_permutation", perm)

    @classmethod
    def trivial(cls, k: int) -> "GraphVariety":
        return cls(k, k, ())

    @property
    def k(self) -> int:
        return self.ambient_arity

    @property
    def ell(self) -> int:
        return self.parameter_arity

    @property
    def order(self) -> tuple[int, ...]:
        return self.column_permutation or tuple(range(self.ambient_arity))

    @property
    def parameter_positions(self) -> tuple[int, ...]:
        """Original coordinates of the parameters v_1..v_ell."""
        return self.order[: self.ell]

    @property
    def non_parameter_positions(self) -> tuple[int, ...]:
        return self.order[self.ell :]

    def zeta_for(self) -> dict[int, Polynomial]:
        """Original coordinate -> zeta polynomial."""
        return dict(zip(self.non_parameter_positions, self.zetas))

    def substitution(self) -> list[Polynomial]:
        """tau as a list of k polynomials in the parameters, in original order."""
        v = Polynomial.variables(self.ell)
        sub: list[Polynomial | None] = [None] * self.k
        for j, pos in enumerate(self.parameter_positions):
            sub[pos] = v[j]
        for pos, z in self.zeta_for().items():
            sub[pos] = z
        return sub  # type: ignore[return-value]

    def generators(self) -> list[Polynomial]:
        """eq_b = zeta_b(v) - f_b, written in the k ambient variables."""
        lift = self.parameter_lift
        out = []
        for pos, z in self.zeta_for().items():
            out.append(lift(z) - Polynomial.var(self.k, pos))
        return out

    def parameter_lift(self, q: Polynomial) -> Polynomial:
        """Rewrite a polynomial in v_1..v_ell as one in the ambient variables."""
        if q.arity != self.ell:
            raise ArityError(f"expected a polynomial in {self.ell} parameters")
        return q.embed(self.k, self.parameter_positions)

    def tau(self, params: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        if len(params) != self.ell:
            raise ArityError(f"expected {self.ell} parameter values")
        out: list[Fraction] = [Fraction(0)] * self.k
        for j, pos in enumerate(self.parameter_positions):
            out[pos] = Fraction(params[j])
        for pos, z in self.zeta_for().items():
            out[pos] = evaluate(z, params)
        return tuple(out)

    def is_affine(self) -> bool:
        return all(z.is_affine() for z in self.zetas)

    # serialization

    def to_json(self) -> dict:
        out: dict = {
            "k": self.k,
            "ell": self.ell,
            "zeta": {
                str(j + 1): format_polynomial(z, var="v")
                for j, z in enumerate(self.zetas, start=self.ell)
            },
        }
        if self.column_permutation is not None:
            out["column_permutation"] = [p + 1 for p in self.column_permutation]
        return out


def pullback(p: Polynomial, V: GraphVariety) -> Polynomial:
    """tau*(p): substitute every non-parameter by its zeta."""
    if p.arity != V.k:
        raise ArityError(f"polynomial has arity {p.arity}, variety has k={V.k}")
    if V.k == 0:
        return Polynomial(0, dict(p.terms))
    return compose(p, V.substitution())


def ideal_member(p: Polynomial, V: GraphVariety) -> bool:
    """p in <zeta_b - f_b>; equivalently tau*(p) = 0."""
    return pullback(p, V).is_zero()


def contains_point(V: GraphVariety, point: Sequence[Fraction | int]) -> bool:
    if len(point) != V.k:
        raise ArityError(f"point has {len(point)} coordinates, variety has k={V.k}")
    return all(evaluate(g, point) == 0 for g in V.generators())


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan reduced row echelon form over Q, leftmost pivots.

    Only the first ``ncols`` columns are eligible as pivots (an augmented
    constant column after them is carried along). Zero rows are dropped.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r] + [row for row in m[r:] if any(row)], pivots


def from_linear_kernel(
    matrix: Sequence[Sequence[Fraction | int | str]], affine_column: bool = False, k: int | None = None
) -> GraphVariety:
    """Parametrize {f : M f = 0} (or M[:, :k] f + M[:, k] = 0 when affine).

    Pivot columns become non-parameters; free columns, in increasing order,
    become v_1..v_ell and come first in ``column_permutation``.
    """
    rows = [[Fraction(x) for x in r] for r in matrix]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged kernel matrix")
        ncols = width - 1 if affine_column else width
        if k is not None and k != ncols:
            raise ArityError(f"matrix has {ncols} variable columns, expected {k}")
    else:
        if k is None:
            raise ValueError("an empty kernel matrix needs an explicit k")
        ncols = k
    reduced, pivots = rref(rows, ncols)
    for row in reduced[len(pivots) :]:
        if affine_column and row[ncols] != 0:
            raise InconsistentSystemError("kernel rows reduce to 0 = nonzero constant")
    free = [c for c in range(ncols) if c not in pivots]
    ell = len(free)
    v = Polynomial.variables(ell)
    zetas = []
    for row, p in zip(reduced, pivots):
        z = Polynomial.zero(ell)
        for j, c in enumerate(free):
            if row[c]:
                z = z - v[j].scale(row[c])
        if affine_column and row[ncols]:
            z = z - row[ncols]
        zetas.append(z)
    perm = tuple(free + pivots)
    return GraphVariety(ncols, ell, tuple(zetas), None if perm == tuple(range(ncols)) else perm)


def load_variety(data: dict | str) -> GraphVariety:
    """Read the JSON variety format (either explicit zetas or a kernel matrix)."""
    if isinstance(data, str):
        data = json.loads(data)
    if "kernel_matrix" in data:
        return from_linear_kernel(
            data["kernel_matrix"], bool(data.get("affine_column", False)), data.get("k")
        )
    k, ell = int(data["k"]), int(data["ell"])
    zeta_text = data.get("zeta", {})
    expected = {str(b) for b in range(ell + 1, k + 1)}
    if set(zeta_text) != expected:
        raise ValueError(f"zeta keys must be exactly {sorted(expected, key=int)}")
    zetas = []
    for b in range(ell + 1, k + 1):
        zetas.append(parse_polynomial(zeta_text[str(b)], arity=ell))
    perm = data.get("column_permutation")
    perm = tuple(int(p) - 1 for p in perm) if perm is not None else None
    return GraphVariety(k, ell, tuple(zetas), perm)
