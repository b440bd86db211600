"""Command-line entry point: ``sptree {reconstruct,pcst,gw,oracle,bench}``."""
from __future__ import annotations

import argparse
import sys

from . import formats
from .bench import ExperimentConfig, run_experiment
from .forest import DualInfeasibleError, InfeasibleInstanceError, gw_solve, steiner_cut_fn
from .graph import AritySpec
from .oracle import SizeBoundError, exact_forest, exact_pcst, exact_superposition
from .pcst import kmst_via_pcst, pcst_solve
from .reconstruct import Algorithm, reconstruct

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SIZE = 4
EXIT_INTERNAL = 5


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sptree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reconstruct", help="reconstruct a superposition tree from a matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--arities", type=_int_list, default=None,
                   help="comma-separated arities, root first (default: taken from the matrix file)")
    p.add_argument("--algo", choices=[a.value for a in Algorithm], default="prims")

    p = sub.add_parser("pcst", help="prize-collecting Steiner tree on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--prize", type=float, default=None,
                   help="uniform prize for every vertex (k-MST mode); overrides file prizes")
    p.add_argument("--k", type=int, default=None, help="target vertex count for the k-MST objective")

    p = sub.add_parser("gw", help="Steiner forest by primal-dual growth on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--terminals", type=_int_list, required=True)

    p = sub.add_parser("oracle", help="exact solver by enumeration")
    p.add_argument("--mode", choices=["forest", "pcst", "superposition"], required=True)
    p.add_argument("--graph")
    p.add_argument("--terminals", type=_int_list)
    p.add_argument("--root", type=int, default=None)
    p.add_argument("--matrix")
    p.add_argument("--arities", type=_int_list, default=None)

    p = sub.add_parser("bench", help="exact-match rates of all algorithms under uniform noise")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--alphas", type=_float_list, default=[0.50, 0.52, 0.54, 0.56, 0.58])
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--plot-data", action="store_true", help="pivot rates to one row per algorithm")
    p.add_argument("--out", default=None)
    return parser


def _load_matrix(args):
    if not args.matrix:
        raise UsageError("--matrix is required")
    matrix, arity = formats.read_matrix(args.matrix)
    if args.arities is not None:
        arity = AritySpec(args.arities)
    return matrix, arity


def _load_graph(args):
    if not args.graph:
        raise UsageError("--graph is required")
    graph = formats.read_graph(args.graph)
    root = getattr(args, "root", None)
    if root is not None:
        graph = graph.with_prizes(graph.prizes, root=root)
    return graph


def _edges_text(edges) -> str:
    return "".join(f"{u} {v}\n" for u, v, _ in edges)


def _cmd_reconstruct(args, out):
    matrix, arity = _load_matrix(args)
    tree = reconstruct(matrix, arity, args.algo)
    if not tree.complete:
        print("warning: reconstruction is incomplete", file=sys.stderr)
    out.write(formats.format_tree(tree))


def _cmd_pcst(args, out):
    graph = _load_graph(args)
    if args.prize is not None:
        root = graph.root if graph.root is not None else 0
        k = graph.n_vertices if args.k is None else args.k
        sol = kmst_via_pcst(graph, k, args.prize, root=root)
        out.write(f"# objective {sol.objective!r} kmst_objective {sol.kmst_objective!r}\n")
    else:
        if graph.root is None or graph.prizes is None:
            raise UsageError("pcst needs a root and prizes (in the file, or via --root/--prize)")
        sol = pcst_solve(graph)
        out.write(f"# objective {sol.objective!r} dual_bound {sol.dual_bound!r}\n")
    out.write(_edges_text(sol.edges))


def _cmd_gw(args, out):
    graph = _load_graph(args)
    f = steiner_cut_fn(args.terminals, graph.n_vertices)
    sol = gw_solve(graph, f)
    out.write(f"# cost {sol.total_cost!r} dual_bound {sol.dual_bound!r}\n")
    out.write(_edges_text(sol.edges))


def _cmd_oracle(args, out):
    if args.mode == "superposition":
        matrix, arity = _load_matrix(args)
        out.write(formats.format_tree(exact_superposition(matrix, arity)))
        return
    graph = _load_graph(args)
    if args.mode == "forest":
        if not args.terminals:
            raise UsageError("--terminals is required for --mode forest")
        sol = exact_forest(graph, steiner_cut_fn(args.terminals, graph.n_vertices))
        out.write(f"# cost {sol.total_cost!r}\n")
    else:
        if graph.root is None or graph.prizes is None:
            raise UsageError("pcst oracle needs a root and prizes")
        sol = exact_pcst(graph)
        out.write(f"# objective {sol.objective!r}\n")
    out.write(_edges_text(sol.edges))


def _cmd_bench(args, out):
    cfg = ExperimentConfig(k_trials=args.trials, noise_levels=tuple(args.alphas), seed=args.seed,
                           n_min=args.n_min, n_max=args.n_max)
    report = run_experiment(cfg, workers=args.workers)
    text = report.to_plot_csv() if args.plot_data else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


COMMANDS = {
    "reconstruct": _cmd_reconstruct,
    "pcst": _cmd_pcst,
    "gw": _cmd_gw,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, sys.stdout)
    except (UsageError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (DualInfeasibleError, InfeasibleInstanceError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        # ParseError and malformed model data alike
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
