"""Polyhedron sizes, LP/ILP outcomes and timings for the affine coset instances.

Each instance is solved at the minimal degree bound and again with the bound
raised by one, to check that the verdict does not move.

Usage: python scripts/coset_instances.py [--delta-plus N]
"""

from __future__ import annotations

import argparse
import time

from binomclosure.gallery import gallery
from binomclosure.poly import format_polynomial
from binomclosure.polyhedron import build_polyhedron, coset_binomial_good, ilp_feasible, lp_feasible

INSTANCES = [
    ("sourceorsink", {}),
    ("sperner", {}),
    ("decrementation", {}),
    ("unbalanced-flow", {}),
    ("karamata", {"n": 2}),
    ("karamata", {"n": 3}),
    ("karamata", {"n": 3, "scale": 2}),
    ("karamata", {"n": 4}),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--delta-plus", type=int, default=1)
    args = ap.parse_args()

    print(f"{'instance':28s} {'dp':>2s} {'delta':>5s} {'rows':>5s} {'cols':>6s} {'lp':11s} {'ilp':11s} {'nodes':>6s} {'ms':>9s}  certificate")
    for name, params in INSTANCES:
        e = gallery(name, **params)
        label = name + "".join(f" {k}={v}" for k, v in params.items())
        for dp in sorted({0, args.delta_plus}):
            t0 = time.perf_counter()
            P = build_polyhedron(e.polynomial, e.variety, dp)
            lp = lp_feasible(P)
            ilp = ilp_feasible(P)
            dt = (time.perf_counter() - t0) * 1000
            cert = "-"
            if ilp.feasible:
                verdict = coset_binomial_good(e.polynomial, e.variety, delta_plus=dp)
                cert = format_polynomial(verdict.certificate)
                if len(cert) > 60:
                    cert = cert[:57] + "..."
            rows, cols = P.shape
            print(f"{label:28s} {dp:2d} {P.delta:5d} {rows:5d} {cols:6d} {lp.kind:11s} {ilp.kind:11s} {ilp.nodes:6d} {dt:9.1f}  {cert}")


if __name__ == "__main__":
    main()
