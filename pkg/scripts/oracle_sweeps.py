"""Exhaustive and randomized runs of the counting oracles.

Usage: python scripts/oracle_sweeps.py [--seed S] [--sperner-n N] [--trials T]
"""

from __future__ import annotations

import argparse
import random
import time

import networkx as nx

from binomclosure.oracles import (
    SmallGraph,
    bipartite_unbalance,
    exhaustive_matching_log_concavity,
    fermat_orbit_count,
    hamiltonian_through_edge,
    random_sperner,
    random_unbalanced_graph,
    sperner_counts,
)


def timed(label: str, fn) -> None:
    t0 = time.perf_counter()
    detail = fn()
    print(f"{label:34s} {time.perf_counter() - t0:7.2f} s  {detail}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--sperner-n", type=int, default=20)
    ap.add_argument("--trials", type=int, default=100)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    def fermat():
        rows = [fermat_orbit_count(a, p)[0] for a in range(1, 7) for p in (2, 3, 5, 7)]
        return f"{len(rows)} pairs, largest orbit count {max(rows)}"

    def matchings():
        return f"{exhaustive_matching_log_concavity(8)} graphs log-concave"

    def sperner():
        plus = [sperner_counts(random_sperner(args.sperner_n, rng))[0] for _ in range(args.trials)]
        return f"{args.trials} instances, t+ in {min(plus)}..{max(plus)}, t+ - t- = 1 throughout"

    def smith():
        graphs = {
            "K4": nx.complete_graph(4),
            "prism": nx.circular_ladder_graph(3),
            "petersen": nx.petersen_graph(),
            "cube": nx.hypercube_graph(3),
        }
        out = []
        for name, H in graphs.items():
            H = nx.convert_node_labels_to_integers(H)
            G = SmallGraph.from_edges(H.number_of_nodes(), H.edges())
            u, v = G.sorted_edges()[0]
            out.append(f"{name}={hamiltonian_through_edge(G, (u, v))}")
        return ", ".join(out)

    def unbalance():
        values = [bipartite_unbalance(random_unbalanced_graph(rng)) for _ in range(2 * args.trials)]
        return f"{len(values)} graphs, min {min(values)}, max {max(values)}"

    timed("Fermat orbits (a <= 6, p <= 7)", fermat)
    timed("matching log-concavity (n <= 8)", matchings)
    timed(f"Sperner (n = {args.sperner_n})", sperner)
    timed("Smith evenness", smith)
    timed("bipartite unbalance", unbalance)


if __name__ == "__main__":
    main()
