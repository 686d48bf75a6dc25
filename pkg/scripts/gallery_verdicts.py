"""Classify every gallery entry and print one line per instance.

Usage: python scripts/gallery_verdicts.py [--box N]
"""

from __future__ import annotations

import argparse
import time

from binomclosure.closure import classify
from binomclosure.gallery import NAMES, gallery
from binomclosure.poly import format_polynomial


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--box", type=int, default=3)
    args = ap.parse_args()

    print(f"{'entry':26s} {'k':>3s} {'deg':>4s} {'int':>4s} {'goodness':16s} {'witness':14s} {'monotone':14s} {'coset':8s} {'ms':>8s}")
    for name in NAMES:
        e = gallery(name)
        t0 = time.perf_counter()
        r = classify(e.polynomial, e.variety if _affine(e) else None, box_bound=args.box)
        dt = (time.perf_counter() - t0) * 1000
        w = r.goodness.witness
        m = r.monotone_witness
        coset = r.coset.kind if r.coset is not None else "-"
        print(
            f"{name:26s} {e.polynomial.arity:3d} {int(max(e.polynomial.degree, 0)):4d} "
            f"{'yes' if r.integer_valued else 'no':>4s} {r.goodness.kind:16s} "
            f"{str(w) if w is not None else '-':14s} {str(m.point) if m else '-':14s} {coset:8s} {dt:8.1f}"
        )
        if e.curve is not None:
            restricted = e.restricted()
            rr = classify(restricted, box_bound=args.box)
            print(f"  on curve: {format_polynomial(restricted)} -> {rr.goodness.kind}")


def _affine(entry) -> bool:
    V = entry.variety
    return V is not None and V.is_affine() and all(z.degree >= 1 for z in V.zetas)


if __name__ == "__main__":
    main()
