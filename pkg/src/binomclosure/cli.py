"""Command-line front end.

Exit status: 0 on a completed analysis whatever the verdict; with
--assert-good / --assert-feasible, 1 for a bad or infeasible verdict and 3
for unknown; 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import gallery as gal
from .closure import DEFAULT_BOX, BoxTooLargeError, classify, monotone_witness
from .lp import DEFAULT_NODE_BUDGET, UNKNOWN
from .oracles import (
    OracleError,
    SpernerInstance,
    bipartite_unbalance,
    fermat_orbit_count,
    hamiltonian_through_edge,
    matching_numbers,
    parse_graph,
    sperner_counts,
)
from .parse import ParseError, parse_polynomial
from .poly import (
    ArityError,
    GoodnessVerdict,
    Polynomial,
    format_expansion,
    format_fraction,
    format_polynomial,
    goodness_of_expansion,
    to_binomial_basis,
)
from .polyhedron import (
    CosetVerdict,
    NonAffineVarietyError,
    build_polyhedron,
    coset_binomial_good,
    ilp_feasible,
    lp_feasible,
)
from .variety import GraphVariety, InconsistentSystemError, load_variety

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input handling


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _gallery_params(pairs: Sequence[str]) -> dict:
    out: dict = {}
    for item in pairs:
        if "=" not in item:
            raise InputError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = int(value) if value.strip().lstrip("-").isdigit() else value.strip()
    return out


def _entry(args) -> gal.GalleryEntry:
    return gal.gallery(args.gallery, **_gallery_params(args.param))


def _polynomial(args, text_attr: str = "poly") -> tuple[Polynomial, Optional[gal.GalleryEntry]]:
    """Exactly one of inline text, --file, --gallery."""
    text = getattr(args, text_attr, None)
    sources = [s for s in (text, args.file, args.gallery) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one input: an inline polynomial, --file, or --gallery")
    if args.gallery is not None:
        entry = _entry(args)
        if getattr(args, "restrict", False):
            return entry.restricted(), entry
        return entry.polynomial, entry
    if args.file is not None:
        text = _read(args.file)
    return parse_polynomial(text.strip()), None


def _variety(source: str) -> GraphVariety:
    text = source if source.lstrip().startswith("{") else _read(source)
    try:
        return load_variety(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"variety is not valid JSON: {exc}") from None
    except (KeyError, TypeError) as exc:
        raise InputError(f"variety JSON is missing or mistypes {exc}") from None


def _lift(p: Polynomial, k: int) -> Polynomial:
    if p.arity == k:
        return p
    if p.arity > k:
        raise InputError(f"polynomial uses {p.arity} variables, variety has k={k}")
    return p.embed(k, list(range(p.arity)))


def _variety_for(args, p: Polynomial, entry) -> tuple[Polynomial, Optional[GraphVariety]]:
    if args.variety is not None:
        V = _variety(args.variety)
        # parsed polynomials only know the largest index they mention
        return _lift(p, V.k), V
    if entry is not None and entry.variety is not None and not getattr(args, "restrict", False):
        return p, entry.variety
    return p, None


# ---------------------------------------------------------------------------
# rendering


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _verdict_json(v: GoodnessVerdict) -> dict:
    out: dict = {"kind": v.kind}
    if v.witness is not None:
        out["witness"] = list(v.witness)
        out["coefficient"] = format_fraction(v.coefficient)
    return out


def _verdict_text(v: GoodnessVerdict) -> str:
    if v.is_good:
        return "good"
    return f"{v.kind} at {v.witness} (coefficient {format_fraction(v.coefficient)})"


def _status(args, kind: str) -> int:
    if not (getattr(args, "assert_good", False) or getattr(args, "assert_feasible", False)):
        return EXIT_OK
    if kind in (GoodnessVerdict.GOOD, CosetVerdict.GOOD, "feasible"):
        return EXIT_OK
    return EXIT_UNKNOWN if kind == UNKNOWN else EXIT_FAIL


# ---------------------------------------------------------------------------
# subcommands


def cmd_expand(args) -> int:
    p, _ = _polynomial(args)
    x = to_binomial_basis(p)
    v = goodness_of_expansion(x)
    payload = {
        "input": format_polynomial(p),
        "expansion": [{"e": list(e), "c": format_fraction(c)} for e, c in x.items()],
        "integer_valued": x.is_integral(),
        "goodness": _verdict_json(v),
    }
    lines = [
        f"input: {format_polynomial(p)}",
        f"expansion: {format_expansion(x)}",
        f"integer-valued: {'yes' if x.is_integral() else 'no'}",
        f"verdict: {_verdict_text(v)}",
    ]
    _emit(args, payload, lines)
    return _status(args, v.kind)


def cmd_good(args) -> int:
    p, _ = _polynomial(args)
    v = goodness_of_expansion(to_binomial_basis(p))
    _emit(args, {"input": format_polynomial(p), "goodness": _verdict_json(v)}, [f"verdict: {_verdict_text(v)}"])
    return _status(args, v.kind)


def cmd_coset_good(args) -> int:
    p, entry = _polynomial(args, "phi")
    p, V = _variety_for(args, p, entry)
    if V is None:
        raise InputError("coset-good needs --variety (or a gallery entry that has one)")
    res = coset_binomial_good(p, V, args.ilp_budget, args.delta_plus)
    payload: dict = {"input": format_polynomial(p), "variety": V.to_json(), "verdict": res.kind}
    lines = [f"input: {format_polynomial(p)}", f"verdict: {res.kind}"]
    if res.certificate is not None:
        payload["certificate"] = format_polynomial(res.certificate)
        lines.append(f"certificate: {format_polynomial(res.certificate)}")
    if res.evidence:
        payload["evidence"] = res.evidence
        lines.append(f"evidence: {res.evidence}")
    if res.polyhedron is not None:
        rows, cols = res.polyhedron.shape
        payload["polyhedron"] = {"variables": cols, "equations": rows, "delta": res.polyhedron.delta}
        lines.append(f"polyhedron: {cols} variables, {rows} equations, delta {res.polyhedron.delta}")
    if res.result is not None:
        payload["nodes"] = res.result.nodes
    _emit(args, payload, lines)
    return _status(args, res.kind)


def cmd_monotone(args) -> int:
    p, _ = _polynomial(args)
    try:
        w = monotone_witness(p, args.box)
    except BoxTooLargeError as exc:
        raise InputError(str(exc)) from None
    payload: dict = {"input": format_polynomial(p), "bound": args.box, "monotone_witness": None}
    if w is None:
        lines = [f"no monotonicity failure on [0,{args.box}]^{p.arity}"]
    else:
        payload["monotone_witness"] = {
            "point": list(w.point),
            "direction": w.direction + 1,
            "value": format_fraction(w.value),
            "next_value": format_fraction(w.next_value),
        }
        up = list(w.point)
        up[w.direction] += 1
        lines = [
            f"witness: p{tuple(w.point)} = {format_fraction(w.value)} > "
            f"p{tuple(up)} = {format_fraction(w.next_value)} (direction x{w.direction + 1})"
        ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    p, entry = _polynomial(args)
    p, V = _variety_for(args, p, entry)
    if V is not None and not V.is_affine():
        V = None
    report = classify(p, V, args.box, args.ilp_budget, args.delta_plus)
    payload = report.to_json()
    lines = [
        f"input: {payload['input']}",
        f"expansion: {format_expansion(report.expansion)}",
        f"integer-valued: {'yes' if report.integer_valued else 'no'}",
        f"verdict: {_verdict_text(report.goodness)}",
    ]
    w = report.monotone_witness
    if w is not None:
        lines.append(f"monotone witness: point {w.point}, direction x{w.direction + 1}")
    if report.nonneg_on_box is not None:
        lines.append(f"nonnegative on [0,{args.box}]^{p.arity}: {'yes' if report.nonneg_on_box else 'no'}")
    else:
        lines.append(report.box_note)
    if report.coset is not None:
        lines.append(f"coset verdict: {report.coset.kind}")
        if report.coset.certificate is not None:
            lines.append(f"certificate: {format_polynomial(report.coset.certificate)}")
    lines += [f"note: {n}" for n in report.classification_notes]
    _emit(args, payload, lines)
    kind = report.coset.kind if report.coset is not None else report.goodness.kind
    return _status(args, kind)


def cmd_polyhedron(args) -> int:
    p, entry = _polynomial(args, "phi")
    p, V = _variety_for(args, p, entry)
    if V is None:
        raise InputError("polyhedron needs --variety (or a gallery entry that has one)")
    P = build_polyhedron(p, V, args.delta_plus)
    payload = P.to_json()
    rows, cols = P.shape
    lines = [f"polyhedron: {cols} variables, {rows} equations, delta {P.delta}"]
    kind = "feasible"
    if args.solve != "none":
        res = lp_feasible(P) if args.solve == "lp" else ilp_feasible(P, args.ilp_budget)
        kind = res.kind
        payload["solve"] = {"mode": args.solve, "kind": res.kind, "nodes": res.nodes}
        lines.append(f"{args.solve}: {res.kind}")
        if res.point is not None:
            support = {
                f"e=({','.join(map(str, e))})": f"{x.numerator}/{x.denominator}"
                for e, x in zip(P.variables, res.point)
                if x
            }
            payload["solve"]["point"] = support
            lines += [f"  x_{e} = {x}" for e, x in support.items()]
    else:
        lines += [f"  {e}: {' '.join(format_fraction(r[j]) for r in P.matrix)}" for j, e in enumerate(payload["variables"])]
        lines.append(f"  rhs: {' '.join(format_fraction(b) for b in P.rhs)}")
    _emit(args, payload, lines)
    return _status(args, kind)


def cmd_gallery(args) -> int:
    if args.name is None:
        _emit(args, {"names": list(gal.NAMES)}, list(gal.NAMES))
        return EXIT_OK
    entry = gal.gallery(args.name, **_gallery_params(args.param))
    payload: dict = {
        "name": entry.name,
        "parameters": {k: v for k, v in entry.parameters},
        "polynomial": format_polynomial(entry.polynomial),
    }
    lines = [f"name: {entry.name}", f"polynomial: {payload['polynomial']}"]
    if entry.labels:
        payload["labels"] = list(entry.labels)
        lines.append("variables: " + ", ".join(f"x{i + 1}={lab}" for i, lab in enumerate(entry.labels)))
    if entry.variety is not None:
        payload["variety"] = entry.variety.to_json()
        lines.append(f"variety: {json.dumps(payload['variety'])}")
    if entry.curve is not None:
        payload["curve"] = [format_polynomial(c) for c in entry.curve]
        payload["restricted"] = format_polynomial(entry.restricted())
        lines.append(f"curve: ({', '.join(payload['curve'])})")
        lines.append(f"restricted: {payload['restricted']}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    kind = args.oracle
    if kind == "fermat":
        orbits, closed = fermat_orbit_count(args.a, args.p)
        payload = {"a": args.a, "p": args.p, "orbits": orbits, "closed_form": closed}
        lines = [f"orbits: {orbits}", f"(a^p - a)/p: {closed}"]
    elif kind == "sperner":
        inst = SpernerInstance.parse(args.n, args.colours)
        tp, tm = sperner_counts(inst)
        payload = {"n": args.n, "t_plus": tp, "t_minus": tm}
        lines = [f"t+: {tp}", f"t-: {tm}"]
    else:
        G = parse_graph(args.graph if args.graph.lstrip().startswith("{") else _read(args.graph))
        if kind == "matchings":
            m = matching_numbers(G)
            payload = {"matching_numbers": m}
            lines = ["matching numbers: " + " ".join(map(str, m))]
        elif kind == "hamiltonian":
            c = hamiltonian_through_edge(G, tuple(args.edge))
            payload = {"edge": list(args.edge), "cycles": c}
            lines = [f"Hamiltonian cycles through {tuple(args.edge)}: {c}"]
        else:
            d = bipartite_unbalance(G)
            payload = {"unbalance": d}
            lines = [f"|V+| - |V-|: {d}"]
    _emit(args, payload, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _budget(text: str) -> int:
    value = int(float(text)) if "e" in text.lower() else int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--file", help="read the polynomial from a file ('-' for stdin)")
    source.add_argument("--gallery", help="use a named gallery polynomial")
    source.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="gallery parameter")
    source.add_argument("--restrict", action="store_true", help="compose the gallery entry with its curve")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--variety", help="variety JSON file, or inline JSON")
    solver.add_argument("--ilp-budget", type=_budget, default=DEFAULT_NODE_BUDGET)
    solver.add_argument("--delta-plus", type=_nonneg, default=0, help="raise the degree bound by N")

    parser = argparse.ArgumentParser(
        prog="binomclosure",
        description="Binomial-basis analysis of polynomial closure properties.",
        epilog="Polynomials use x1, x2, ... with + - * ^ and binom(xi,n); e.g. \"x1^2 - 2*x1*x2 + x2^2\".",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common, source], help="binomial-basis expansion")
    p.add_argument("poly", nargs="?")
    p.add_argument("--assert-good", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("good", parents=[common, source], help="binomial-goodness verdict")
    p.add_argument("poly", nargs="?")
    p.add_argument("--assert-good", action="store_true")
    p.set_defaults(func=cmd_good)

    p = sub.add_parser("coset-good", parents=[common, source, solver], help="goodness of phi + I on a variety")
    p.add_argument("--phi")
    p.add_argument("--assert-good", action="store_true")
    p.set_defaults(func=cmd_coset_good)

    p = sub.add_parser("monotone", parents=[common, source], help="search the box for p(c) > p(c + e_i)")
    p.add_argument("poly", nargs="?")
    p.add_argument("--box", type=_nonneg, default=DEFAULT_BOX)
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("classify", parents=[common, source, solver], help="full closure report")
    p.add_argument("poly", nargs="?")
    p.add_argument("--box", type=_nonneg, default=DEFAULT_BOX)
    p.add_argument("--assert-good", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("polyhedron", parents=[common, source, solver], help="dump and solve P(phi, zeta)")
    p.add_argument("--phi")
    p.add_argument("--solve", choices=("none", "lp", "ilp"), default="none")
    p.add_argument("--assert-feasible", action="store_true")
    p.set_defaults(func=cmd_polyhedron)

    p = sub.add_parser("gallery", parents=[common], help="print a named family (no name: list them)")
    p.add_argument("name", nargs="?")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("oracle", help="brute-force counting oracles")
    osub = p.add_subparsers(dest="oracle", required=True)
    o = osub.add_parser("fermat", parents=[common])
    o.add_argument("--a", type=int, required=True)
    o.add_argument("--p", type=int, required=True)
    o = osub.add_parser("sperner", parents=[common])
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--colours", required=True, help="row-major colour string")
    for name in ("matchings", "hamiltonian", "unbalance"):
        o = osub.add_parser(name, parents=[common])
        o.add_argument("--graph", required=True, help="edge-list or JSON file ('-' for stdin), or inline JSON")
        if name == "hamiltonian":
            o.add_argument("--edge", type=int, nargs=2, required=True, metavar=("U", "V"))
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors exit 2, --help exits 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, InputError, OracleError, gal.GalleryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArityError, NonAffineVarietyError, InconsistentSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
