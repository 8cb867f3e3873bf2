"""Command-line interface: ``medgraph <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections import defaultdict
from typing import Optional, Sequence

from . import bounds, generate, io, solvers
from .costs import CostSpec
from .graph import AttributedGraph, GraphSet, Permutation

log = logging.getLogger("medgraph")

MAX_EXIT = 255


def fmt(x: float) -> str:
    return f"{x:.12g}"


def _perms(perms: Sequence[Permutation]) -> str:
    return " ".join(str(p) for p in perms)


def _graph_lines(g: AttributedGraph) -> list[str]:
    lines = ["  vertex_weights: " + " ".join(fmt(x) for x in g.vertex_weights)]
    edges = g.edges()
    if edges:
        lines.append("  edges: " + ", ".join(f"({r + 1},{s + 1})={fmt(w)}" for r, s, w in edges))
    else:
        lines.append("  edges: none")
    return lines


def _emit(lines: list[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _cost(args: argparse.Namespace, default: str = "abs") -> CostSpec:
    return CostSpec.parse(args.cost or default)


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = generate.GenConfig(n=args.n, m=args.m, edge_density=args.density,
                             noise=args.noise, seed=args.seed)
    if args.family == "random":
        gs = generate.random_graph_set(cfg)
    else:
        base = generate.random_weighted_graph(cfg)
        # the base graph and the family draw from distinct streams
        fam_seed = (args.seed + 1) & ((1 << 64) - 1)
        if args.family == "permuted":
            gs = generate.permuted_copies(base, args.m, fam_seed)
        else:
            gs = generate.perturbed_family(base, generate.GenConfig(
                n=args.n, m=args.m, edge_density=args.density, noise=args.noise, seed=fam_seed))
    header = {"family": args.family, "n": args.n, "m": args.m, "edge_density": args.density,
              "noise": args.noise, "seed": args.seed}
    text = io.dumps_graphset(gs, generator=header)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    gs = io.parse_graphset(args.file)
    i, j = args.i - 1, args.j - 1
    value, p1, p2 = solvers.pairwise_distance(gs[i], gs[j], _cost(args))
    _emit([f"distance: {fmt(value)}", f"permutations: {_perms([p1, p2])}"])
    return 0


def _write_median(args: argparse.Namespace, median: AttributedGraph) -> None:
    if args.out:
        io.write_graphset(GraphSet((median,)), args.out)


def cmd_cl(args: argparse.Namespace) -> int:
    gs = io.parse_graphset(args.file)
    cost = _cost(args)
    if args.mode == "exact":
        sol = solvers.exact_common_labelling(gs, cost, budget=args.budget, workers=args.workers)
    else:
        sol = solvers.heuristic_common_labelling(gs, cost, pivot=args.pivot - 1)
    _emit([f"cl: {fmt(sol.objective_value)}", f"exact: {str(sol.exact).lower()}",
           f"permutations: {_perms(sol.permutations)}"])
    return 0


def _median_lines(label: str, res: solvers.MedianResult) -> list[str]:
    return [f"{label}: {fmt(res.gm_value)}",
            f"permutations: {_perms(res.permutations.permutations)}",
            "median:"] + _graph_lines(res.median)


def cmd_gm(args: argparse.Namespace) -> int:
    gs = io.parse_graphset(args.file)
    res = solvers.exact_generalized_median(gs, _cost(args), budget=args.budget,
                                           workers=args.workers)
    _emit(_median_lines("gm", res))
    _write_median(args, res.median)
    return 0


def cmd_approx_median(args: argparse.Namespace) -> int:
    gs = io.parse_graphset(args.file)
    res = solvers.approximated_median(gs, _cost(args), args.mode, pivot=args.pivot - 1,
                                      budget=args.budget, workers=args.workers)
    _emit([f"cl: {fmt(res.permutations.objective_value)}"] + _median_lines("gm_approx", res))
    _write_median(args, res.median)
    return 0


def _instances(args: argparse.Namespace) -> list[tuple[str, GraphSet]]:
    if args.files:
        return [(path, io.parse_graphset(path)) for path in args.files]
    return [generate.sweep_instance(k, args.seed) for k in range(args.count)]


def cmd_verify(args: argparse.Namespace) -> int:
    cost = CostSpec.parse(args.cost) if args.cost else None
    if args.theorem == "all" and cost is not None:
        raise bounds.HypothesisError("--theorem all picks the cost per check; drop --cost")
    reports: list[bounds.BoundReport] = []
    for instance_id, gs in _instances(args):
        kw = dict(instance_id=instance_id, tol=args.tol, budget=args.budget,
                  workers=args.workers, epsilon=args.epsilon, pivot=args.pivot - 1)
        if args.theorem == "all":
            reports.extend(bounds.verify_all(gs, **kw))
        else:
            reports.append(bounds.verify(gs, args.theorem, cost=cost, **kw))
    text = io.dumps_report(reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    checks = sum(len(r.checks) for r in reports)
    failures = sum(r.failures for r in reports)
    print(f"instances: {len({r.instance_id for r in reports})}"
          f"  checks: {checks}  failures: {failures}", file=sys.stderr)
    return min(failures, MAX_EXIT)


def cmd_report(args: argparse.Namespace) -> int:
    rows = io.read_report(args.file)
    stats: dict[str, dict] = defaultdict(lambda: {"true": 0, "false": 0, "n/a": 0,
                                                  "min_slack": float("inf")})
    for row in rows:
        s = stats[row["check_name"]]
        s[row["pass"]] += 1
        if row["pass"] != "n/a":
            s["min_slack"] = min(s["min_slack"], float(row["slack"]))
    lines = ["check_name pass fail n/a min_slack"]
    for name in sorted(stats):
        s = stats[name]
        lines.append(f"{name} {s['true']} {s['false']} {s['n/a']} {fmt(s['min_slack'])}")
    _emit(lines)
    return min(sum(s["false"] for s in stats.values()), MAX_EXIT)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cost", choices=["abs", "sq"], default=None,
                        help="per-slot cost (default: abs; verify picks per theorem)")
    common.add_argument("--mode", choices=["exact", "heuristic"], default="exact")
    common.add_argument("--seed", type=int, default=0, help="unsigned 64-bit seed")
    common.add_argument("--budget", type=int, default=solvers.DEFAULT_BUDGET,
                        help="maximum (n!)^(m-1) for exact enumeration")
    common.add_argument("--tol", type=float, default=bounds.DEFAULT_TOL)
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--pivot", type=int, default=1, help="1-based pivot graph for heuristic mode")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="medgraph",
        description="Common Labelling and median graphs for small weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate an instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--family", choices=["random", "permuted", "perturbed"], default="random")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("distance", parents=[common], help="distance between two graphs of a file")
    p.add_argument("file")
    p.add_argument("--i", type=int, default=1, help="1-based index of the first graph")
    p.add_argument("--j", type=int, default=2, help="1-based index of the second graph")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("cl", parents=[common], help="Common Labelling of a graph set")
    p.add_argument("file")
    p.set_defaults(func=cmd_cl)

    p = sub.add_parser("gm", parents=[common], help="exact Generalized Median Graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_gm)

    p = sub.add_parser("approx-median", parents=[common],
                       help="median synthesised from a Common Labelling")
    p.add_argument("file")
    p.set_defaults(func=cmd_approx_median)

    p = sub.add_parser("verify", parents=[common], help="check the bounds and write a CSV report")
    p.add_argument("files", nargs="*", help="instance files (default: a generated sweep)")
    p.add_argument("--theorem", choices=list(bounds.THEOREMS) + ["all"], default="all")
    p.add_argument("--count", type=int, default=200, help="generated instances when no files are given")
    p.add_argument("--epsilon", type=float, default=None,
                   help="epsilon for corollary 1 (default: the approximated median cost)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", parents=[common], help="summarise a CSV report")
    p.add_argument("file")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, RuntimeError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
