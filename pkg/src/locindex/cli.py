"""Command-line front end: analyze, build, tradeoff, verify.

All numeric output is exact rational text; identical inputs produce
byte-identical outputs. Exit codes: 0 success, 1 invalid code, 2 input
error, 3 budget exceeded, 4 scheme precondition failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import coloring, covering, schemes, tradeoff
from .codes import code_from_json, code_metrics, code_to_json, scalar_code, verify_code
from .errors import (BudgetError, CodeFormatError, GraphFormatError,
                     InfeasibleError, SchemeError)
from .fieldmath import FieldSpec
from .graphs import (girth_directed, has_cyclic_automorphism, interference_graph,
                     mais_size, parse_graph)
from .minrank import minrank, optimal_scalar_encoder
from .tradeoff import render_fraction

SCHEMES = ("fractional-coloring", "scalar-minrank", "ais", "cyclic",
           "separation", "covering-ilp", "covering-lp")
CATALOGS = ("partial-clique", "cycle", "minrank", "vector-partial-clique",
            "vector-cycle", "vector-minrank", "merged")


def parse_rational(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational p/q: {text!r}") from exc


def parse_grid(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be lo:hi:step")
    lo, hi, step = (parse_rational(p) for p in parts)
    if step <= 0 or hi < lo:
        raise ValueError("grid bounds must be ordered and the step positive")
    grid = []
    r = lo
    while r <= hi:
        grid.append(r)
        r += step
    return grid


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str):
    return parse_graph(_read(path))


def cmd_analyze(args) -> int:
    graph = _load_graph(args.graph)
    field = FieldSpec(args.field)
    conflict = interference_graph(graph)
    chi_f, witness = coloring.fractional_chromatic(conflict)
    kappa, _ = minrank(graph, field)
    girth = girth_directed(graph)
    girth_text = "inf" if girth == float("inf") else str(int(girth))
    cyclic = has_cyclic_automorphism(graph)
    mais = mais_size(graph)
    if args.json:
        payload = {
            "n": graph.n,
            "edges": graph.num_edges(),
            "girth": girth_text,
            "cyclic_automorphism": cyclic,
            "chi_f": render_fraction(chi_f),
            "chi_f_witness": [witness.total, witness.per_vertex],
            "q": field.q,
            "minrank": kappa,
            "mais": mais,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"n: {graph.n}")
        print(f"edges: {graph.num_edges()}")
        print(f"girth: {girth_text}")
        print(f"cyclic_automorphism: {str(cyclic).lower()}")
        print(f"chi_f: {render_fraction(chi_f)} (witness {witness.total}:{witness.per_vertex})")
        print(f"minrank[q={field.q}]: {kappa}")
        print(f"mais: {mais}")
    return 0


def _build_code(args, graph, field):
    if args.scheme == "fractional-coloring":
        _, witness = coloring.fractional_chromatic(interference_graph(graph))
        return coloring.fractional_coloring_code(graph, witness, field)
    if args.scheme == "scalar-minrank":
        _, fitting = minrank(graph, field)
        return scalar_code(optimal_scalar_encoder(fitting), fitting)
    if args.scheme == "ais":
        girth = girth_directed(graph)
        if args.t is not None:
            t = args.t
        else:
            t = graph.n if girth == float("inf") else min(graph.n, int(girth) - 1)
        _, fitting = minrank(graph, field)
        encoder = optimal_scalar_encoder(fitting)
        return schemes.ais_cover_code(graph, schemes.t_subset_cover(graph, t),
                                      encoder, fitting)
    if args.scheme == "cyclic":
        return schemes.cyclic_balanced_code(graph, field)
    if args.scheme == "separation":
        return schemes.separation_code(graph, field, args.radius)
    if args.scheme in ("covering-ilp", "covering-lp"):
        if args.locality is None:
            raise ValueError("covering schemes need --locality p/q")
        budget = parse_rational(args.locality)
        catalog = _build_catalog(graph, field, args.catalog)
        solver = covering.covering_ilp if args.scheme == "covering-ilp" else covering.covering_lp
        solution = solver(graph, catalog, budget)
        return covering.materialize_cover(graph, catalog, solution)
    raise ValueError(f"unknown scheme {args.scheme!r}")


def _build_catalog(graph, field, name):
    if name == "merged":
        return covering.merged_catalog(graph, field)
    vector = name.startswith("vector-")
    kind = name.removeprefix("vector-")
    return covering.build_catalog(graph, kind, field, vector=vector)


def cmd_build(args) -> int:
    graph = _load_graph(args.graph)
    field = FieldSpec(args.field)
    code = _build_code(args, graph, field)
    result = verify_code(code, graph, exhaustive_budget=args.budget)
    if not result.valid:
        print(f"internal error: built code failed verification: {result.failure}",
              file=sys.stderr)
        return 1
    metrics = code_metrics(code)
    print(f"scheme: {code.provenance}")
    print(f"beta: {render_fraction(metrics.beta)}")
    print(f"r: {render_fraction(metrics.locality)}")
    print("r_i: " + " ".join(render_fraction(x) for x in metrics.per_receiver))
    out = Path(args.out)
    out.write_text(code_to_json(code) + "\n")
    print(f"wrote: {out}")
    return 0


def cmd_tradeoff(args) -> int:
    graph = _load_graph(args.graph)
    field = FieldSpec(args.field)
    grid = parse_grid(args.grid)
    csv = tradeoff.tradeoff_csv(graph, field, grid)
    if args.out:
        Path(args.out).write_text(csv)
        print(f"wrote: {args.out}")
    else:
        sys.stdout.write(csv)
    return 0


def cmd_verify(args) -> int:
    code = code_from_json(_read(args.code))
    graph = _load_graph(args.graph)
    result = verify_code(code, graph, exhaustive_budget=args.budget)
    metrics = code_metrics(code)
    if result.valid:
        print(f"VALID (beta={render_fraction(metrics.beta)}, "
              f"r={render_fraction(metrics.locality)})")
        return 0
    failure = result.failure
    print(f"INVALID at receiver {failure.receiver + 1} [{failure.kind}]")
    print(f"message: {list(failure.message)}")
    if failure.conflicting is not None:
        print(f"conflicting message: {list(failure.conflicting)}")
    print(f"detail: {failure.detail}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locindex",
        description="Locally decodable index codes: analysis, construction, "
                    "verification, and trade-off curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", type=int, default=2, help="prime field order (default 2)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap (the implementation is sequential)")
        p.add_argument("--budget", type=int, default=1 << 20,
                       help="exhaustive verification budget on q**(m*n)")

    p = sub.add_parser("analyze", help="structural and coding parameters of a graph")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("build", help="construct and verify a code")
    p.add_argument("graph")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--t", type=int, default=None, help="subset size for the ais scheme")
    p.add_argument("--radius", type=int, default=1, help="covering radius for separation")
    p.add_argument("--locality", default=None, help="locality budget p/q for covering schemes")
    p.add_argument("--catalog", default="merged", choices=CATALOGS)
    p.add_argument("--out", default="code.json")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("tradeoff", help="achievable curve and lower bound as CSV")
    p.add_argument("graph")
    p.add_argument("--grid", required=True, help="locality grid lo:hi:step (rationals)")
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("verify", help="check a code file against a graph")
    p.add_argument("code")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (GraphFormatError, CodeFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (SchemeError, InfeasibleError) as exc:
        print(f"scheme precondition failed: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
