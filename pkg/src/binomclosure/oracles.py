"""Brute-force counting oracles for small combinatorial instances.

Each oracle enumerates exhaustively and checks the identity or inequality it
is meant to witness; size caps are hard errors.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

MAX_GRAPH_VERTICES = 16
MAX_CUBIC_VERTICES = 14
MAX_FERMAT_SEQUENCES = 10**7


class OracleError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class SmallGraph:
    n: int
    edges: frozenset[tuple[int, int]]
    dark: Optional[frozenset[int]] = None

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_GRAPH_VERTICES:
            raise OracleError(f"graphs are limited to {MAX_GRAPH_VERTICES} vertices, got {self.n}")
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise OracleError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise OracleError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (min(u, v), max(u, v))
            if e in clean:
                raise OracleError(f"repeated edge {e}")
            clean.add(e)
        object.__setattr__(self, "edges", frozenset(clean))
        if self.dark is not None:
            dark = frozenset(self.dark)
            if any(not 0 <= d < self.n for d in dark):
                raise OracleError("dark vertex out of range")
            for u, v in clean:
                if (u in dark) == (v in dark):
                    raise OracleError(f"edge ({u}, {v}) joins two vertices of the same colour")
            object.__setattr__(self, "dark", dark)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], dark: Iterable[int] | None = None):
        pairs = [tuple(e) for e in edges]
        if len(set((min(u, v), max(u, v)) for u, v in pairs)) != len(pairs):
            raise OracleError("repeated edge")
        return cls(n, frozenset(pairs), None if dark is None else frozenset(dark))  # type: ignore[arg-type]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def degree(self, u: int) -> int:
        return sum(1 for e in self.edges if u in e)

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}
        if self.dark is not None:
            out["dark"] = sorted(self.dark)
        return out


def parse_graph(text: str) -> SmallGraph:
    """Edge list "n m" then m lines "u v" (0-based), or JSON {"n", "edges", "dark"?}."""
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        return SmallGraph.from_edges(int(data["n"]), data.get("edges", []), data.get("dark"))
    lines = [ln.split() for ln in stripped.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise OracleError("edge list must start with a line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError:
        raise OracleError("edge list entries must be integer pairs") from None
    if len(edges) != m:
        raise OracleError(f"header announces {m} edges, found {len(edges)}")
    return SmallGraph.from_edges(n, edges)


def matching_numbers(G: SmallGraph, check: bool = True) -> list[int]:
    """m_0, m_1, ... : the number of k-edge matchings, by bitmask recursion."""
    adj = [0] * G.n
    for u, v in G.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    @lru_cache(maxsize=None)
    def poly(mask: int) -> tuple[int, ...]:
        # matching counts inside the vertex set ``mask``
        if mask == 0:
            return (1,)
        u = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << u)
        out = list(poly(rest))
        nb = adj[u] & rest
        while nb:
            w = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            sub = poly(rest & ~(1 << w))
            if len(sub) + 1 > len(out):
                out.extend([0] * (len(sub) + 1 - len(out)))
            for k, c in enumerate(sub):
                out[k + 1] += c
        return tuple(out)

    m = list(poly((1 << G.n) - 1))
    while len(m) > 1 and m[-1] == 0:
        m.pop()
    if check and not is_log_concave(m):
        raise AssertionError(f"matching sequence {m} is not log-concave")
    return m


def exhaustive_matching_log_concavity(max_n: int = 8) -> int:
    """Check log-concavity of matching numbers on every graph with <= max_n vertices.

    The atlas covers up to 7 vertices; every graph on 8 vertices is a 7-vertex
    graph plus one vertex, whose matchings follow from
    m_k(G + w) = m_k(G) + sum_{u in N(w)} m_{k-1}(G - u).
    Returns the number of (not necessarily non-isomorphic) graphs checked.
    """
    from networkx.generators.atlas import graph_atlas_g

    if not 1 <= max_n <= 8:
        raise OracleError("exhaustive check supports 1..8 vertices")
    checked = 0
    for H in graph_atlas_g():
        n = H.number_of_nodes()
        if n > max_n or n > 7:
            continue
        G = SmallGraph.from_edges(n, H.edges())
        base = matching_numbers(G)
        checked += 1
        if n != 7 or max_n < 8:
            continue
        without = []
        for u in range(n):
            keep = [x for x in range(n) if x != u]
            idx = {x: i for i, x in enumerate(keep)}
            sub = [(idx[a], idx[b]) for a, b in G.edges if u not in (a, b)]
            without.append(matching_numbers(SmallGraph.from_edges(n - 1, sub), check=False))
        table: list[list[int]] = [list(base)]
        for mask in range(1, 1 << n):
            low = (mask & -mask).bit_length() - 1
            m = list(table[mask & (mask - 1)])
            extra = without[low]
            if len(extra) + 1 > len(m):
                m.extend([0] * (len(extra) + 1 - len(m)))
            for k, c in enumerate(extra):
                m[k + 1] += c
            table.append(m)
            if not is_log_concave(m):
                raise AssertionError(f"log-concavity fails for an 8-vertex extension: {m}")
            checked += 1
    return checked


def is_log_concave(seq: Sequence[int]) -> bool:
    return all(seq[k] ** 2 >= seq[k - 1] * seq[k + 1] for k in range(1, len(seq) - 1))


def hamiltonian_through_edge(G: SmallGraph, edge: tuple[int, int], check: bool = True) -> int:
    """Hamiltonian cycles of a cubic graph that use ``edge``."""
    if G.n > MAX_CUBIC_VERTICES:
        raise OracleError(f"cubic graphs are limited to {MAX_CUBIC_VERTICES} vertices")
    if any(len(nb) != 3 for nb in G.neighbours()):
        raise OracleError("graph is not 3-regular")
    u, v = edge
    if (min(u, v), max(u, v)) not in G.edges:
        raise OracleError(f"({u}, {v}) is not an edge")
    adj = G.neighbours()
    full = (1 << G.n) - 1
    count = 0

    # paths u -> v -> ... -> back to u; each cycle through uv is found once
    def walk(x: int, seen: int) -> None:
        nonlocal count
        if seen == full:
            if u in adj[x]:
                count += 1
            return
        for y in adj[x]:
            if not seen >> y & 1:
                walk(y, seen | 1 << y)

    walk(v, (1 << u) | (1 << v))
    if check and count % 2:
        raise AssertionError(f"odd number {count} of Hamiltonian cycles through {edge}")
    return count


def bipartite_unbalance(G: SmallGraph) -> int:
    """|white| - |dark| for a graph where every edge (u dark, v white) has deg u >= deg v."""
    if G.dark is None:
        raise OracleError("graph needs a dark/white bipartition")
    deg = [0] * G.n
    for a, b in G.edges:
        deg[a] += 1
        deg[b] += 1
    isolated = [x for x in range(G.n) if deg[x] == 0]
    if isolated:
        raise OracleError(f"isolated vertices are not allowed: {isolated}")
    for a, b in G.sorted_edges():
        u, w = (a, b) if a in G.dark else (b, a)
        if deg[u] < deg[w]:
            raise OracleError(f"edge ({u}, {w}): dark degree {deg[u]} < white degree {deg[w]}")
    diff = (G.n - len(G.dark)) - len(G.dark)
    assert diff >= 0
    return diff


def random_unbalanced_graph(rng: random.Random, max_n: int = 12, tries: int = 10_000) -> SmallGraph:
    """Rejection sampling: random bipartite graphs until one passes the degree check."""
    for _ in range(tries):
        n = rng.randint(2, max_n)
        n_dark = rng.randint(1, n - 1)
        dark = set(range(n_dark))
        edges = [
            (u, w) for u in range(n_dark) for w in range(n_dark, n) if rng.random() < rng.random()
        ]
        deg = [0] * n
        for u, w in edges:
            deg[u] += 1
            deg[w] += 1
        if any(d == 0 for d in deg):
            continue
        if all(deg[u] >= deg[w] for u, w in edges):
            return SmallGraph.from_edges(n, edges, dark)
    raise OracleError("rejection sampling did not find an unbalanced graph")


# ---------------------------------------------------------------------------
# Fermat


def fermat_orbit_count(a: int, p: int) -> tuple[int, int]:
    """Size-p orbits of [a]^p under rotation, against (a^p - a)/p."""
    if not _is_prime(p):
        raise OracleError(f"p must be prime, got {p}")
    if a < 1:
        raise OracleError("a must be positive")
    if a**p > MAX_FERMAT_SEQUENCES:
        raise OracleError(f"{a}^{p} sequences exceed the cap of {MAX_FERMAT_SEQUENCES}")
    orbits = 0
    seq = [0] * p
    # odometer over [a]^p; count each non-constant orbit at its least rotation
    for _ in range(a**p):
        if any(x != seq[0] for x in seq):
            t = tuple(seq)
            if all(t <= t[r:] + t[:r] for r in range(1, p)):
                orbits += 1
        i = p - 1
        while i >= 0:
            seq[i] += 1
            if seq[i] < a:
                break
            seq[i] = 0
            i -= 1
    closed = (a**p - a) // p
    if orbits != closed:
        raise AssertionError(f"{orbits} orbits but (a^p - a)/p = {closed}")
    return orbits, closed


# ---------------------------------------------------------------------------
# Sperner


@dataclass(frozen=True)
class SpernerInstance:
    """Colours on the grid points (i, j), i + j <= n.

    Corners: (0,0) -> 1, (n,0) -> 2, (0,n) -> 3. The side j = 0 uses {1,2},
    i = 0 uses {1,3}, and i + j = n uses {2,3}.
    """

    n: int
    colours: dict = field(hash=False)

    def __post_init__(self) -> None:
        n = self.n
        if n < 1:
            raise OracleError("side length must be positive")
        for i in range(n + 1):
            for j in range(n + 1 - i):
                c = self.colours.get((i, j))
                if c not in (1, 2, 3):
                    raise OracleError(f"vertex ({i}, {j}) has colour {c!r}")
                if c not in _allowed(n, i, j):
                    raise OracleError(f"boundary vertex ({i}, {j}) may not have colour {c}")

    @classmethod
    def parse(cls, n: int, text: str) -> "SpernerInstance":
        """Row-major colour string: row j = 0..n lists i = 0..n-j."""
        digits = [ch for ch in text if not ch.isspace()]
        need = (n + 1) * (n + 2) // 2
        if len(digits) != need:
            raise OracleError(f"side {n} needs {need} colours, got {len(digits)}")
        colours = {}
        it = iter(digits)
        for j in range(n + 1):
            for i in range(n + 1 - j):
                ch = next(it)
                if ch not in "123":
                    raise OracleError(f"bad colour {ch!r}")
                colours[(i, j)] = int(ch)
        return cls(n, colours)

    def encode(self) -> str:
        return "".join(
            str(self.colours[(i, j)]) for j in range(self.n + 1) for i in range(self.n + 1 - j)
        )


def _allowed(n: int, i: int, j: int) -> tuple[int, ...]:
    allowed = {1, 2, 3}
    if j == 0:
        allowed &= {1, 2}
    if i == 0:
        allowed &= {1, 3}
    if i + j == n:
        allowed &= {2, 3}
    return tuple(sorted(allowed))


def random_sperner(n: int, rng: random.Random) -> SpernerInstance:
    colours = {}
    for i in range(n + 1):
        for j in range(n + 1 - i):
            colours[(i, j)] = rng.choice(_allowed(n, i, j))
    return SpernerInstance(n, colours)


_POSITIVE = {(1, 2, 3), (2, 3, 1), (3, 1, 2)}
_NEGATIVE = {(1, 3, 2), (3, 2, 1), (2, 1, 3)}


def sperner_counts(inst: SpernerInstance, check: bool = True) -> tuple[int, int]:
    """(t_+, t_-): rainbow triangles read counterclockwise as (1,2,3) or (1,3,2)."""
    n, col = inst.n, inst.colours
    plus = minus = 0
    for i in range(n):
        for j in range(n - i):
            tris = [((i, j), (i + 1, j), (i, j + 1))]
            if i + j + 2 <= n:
                tris.append(((i + 1, j), (i + 1, j + 1), (i, j + 1)))
            for tri in tris:
                c = tuple(col[p] for p in tri)
                if c in _POSITIVE:
                    plus += 1
                elif c in _NEGATIVE:
                    minus += 1
    if check and plus - minus != 1:
        raise AssertionError(f"t+ - t- = {plus - minus}")
    return plus, minus
