"""Command-line entry point: ``bosegraph {enumerate,sweep,trace,predict,verify}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .checks import ALL_CHECKS, run_checks
from .dynamics import NumericalError
from .entanglement import DEFAULT_DT_SAMPLE, DEFAULT_HORIZON, horizon_drift
from .fock import parse_occupations
from .graphs import GraphError, enumerate_rooted_graphs, graph_id, id_of, invariants, resolve_graph
from .sweep import (
    PREDICT_HEADER,
    SWEEP_HEADER,
    SweepConfig,
    gnuplot_script,
    run_predict,
    run_sweep,
    trace_header,
    trace_rows,
    write_csv,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

log = logging.getLogger("bosegraph")


def _edge_str(edges) -> str:
    return " ".join(f"{i}-{j}" for i, j in edges)


def cmd_enumerate(args) -> int:
    graphs = enumerate_rooted_graphs(args.sites)
    print("id,edges,k,k0,l3,l3_root,bipartite")
    for pos, g in enumerate(graphs):
        inv = invariants(g)
        print(f"{graph_id(args.sites, pos)},{_edge_str(g.edges)},{inv.k},{inv.k0},"
              f"{inv.l3},{inv.l3_root},{int(inv.bipartite)}")
    return EXIT_OK


def _label(graph, note):
    gid = id_of(graph) or "custom"
    return f"{gid} ({note})" if note else gid


def _write_plot(path, csv_path, columns, title, x_label, abs_x=False):
    Path(path).write_text(gnuplot_script(csv_path, columns, title, x_label, abs_x))
    log.info("wrote %s", path)


def cmd_sweep(args) -> int:
    graph = resolve_graph(args.graph)
    psi = parse_occupations(args.psi)
    cfg = SweepConfig(graph, psi, args.eps_max, args.eps_step, args.tau, args.horizon,
                      args.dt, args.negative, args.refine)
    if args.check_horizon:
        drift = horizon_drift(graph, -args.eps_max if args.negative else args.eps_max,
                              args.tau, psi, args.horizon, args.dt)
        level = logging.WARNING if abs(drift) >= 1e-3 else logging.INFO
        log.log(level, "EP(2T) - EP(T) at the largest |eps| = %.2e", drift)
    rows = run_sweep(cfg, workers=args.workers)
    write_csv(args.out, SWEEP_HEADER, rows)
    log.info("wrote %d rows to %s", len(rows), args.out)
    if args.plot_script:
        title = f"EP vs |eps|, {_label(graph, args.figure_label)}, psi_in={args.psi}"
        _write_plot(args.plot_script, args.out, ["ep"], title, "|eps| / tau", abs_x=True)
    return EXIT_OK


def cmd_trace(args) -> int:
    graph = resolve_graph(args.graph)
    psi = parse_occupations(args.psi)
    if len(psi) != graph.n_sites:
        raise ValueError(f"initial state {psi} does not match L={graph.n_sites}")
    rows = list(trace_rows(graph, psi, args.eps, args.tau, args.horizon, args.dt))
    header = trace_header(sum(psi))
    write_csv(args.out, header, rows)
    log.info("wrote %d rows to %s", len(rows), args.out)
    if args.plot_script:
        title = f"root-mode entropy, {_label(graph, args.figure_label)}, eps={args.eps:g}"
        _write_plot(args.plot_script, args.out, header[1:-1], title, "t")
    return EXIT_OK


def cmd_predict(args) -> int:
    graph = resolve_graph(args.graph)
    rows = run_predict(graph, args.family, args.eps_max, args.eps_step, args.tau,
                       args.horizon, args.dt, workers=args.workers)
    write_csv(args.out, PREDICT_HEADER, rows)
    log.info("wrote %d rows to %s", len(rows), args.out)
    if args.plot_script:
        title = f"exact vs two-level, {_label(graph, args.figure_label)}, {args.family}"
        _write_plot(args.plot_script, args.out, ["ep_exact", "ep_surrogate"], title, "eps / tau")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks(args.only or None, echo=print)
    failed = [r.name for r in results if not r.passed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {total:.1f}s")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _add_evolution_args(p, with_workers=True):
    p.add_argument("--graph", required=True, help="stable id (e.g. L4-07) or graph JSON file")
    p.add_argument("--tau", type=float, default=1.0, help="hopping amplitude (default 1)")
    p.add_argument("--horizon", type=float, default=DEFAULT_HORIZON, help="evolution time T")
    p.add_argument("--dt", type=float, default=DEFAULT_DT_SAMPLE, help="sampling step")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot-script", help="also write a gnuplot script for the CSV")
    p.add_argument("--figure-label", help="free-text note naming the figure graph this id corresponds to")
    if with_workers:
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bosegraph", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list inequivalent connected rooted graphs")
    p.add_argument("--sites", type=int, required=True, help="vertex count L (2..6)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sweep", help="entangling power over a half-range of eps")
    _add_evolution_args(p)
    p.add_argument("--psi", required=True, help="initial occupations, e.g. 111 or 4000")
    p.add_argument("--eps-max", type=float, default=20.0)
    p.add_argument("--eps-step", type=float, default=0.1)
    p.add_argument("--negative", action="store_true", help="sweep eps in [-eps_max, 0]")
    p.add_argument("--refine", action="store_true", help="refine the time maximum off-grid")
    p.add_argument("--check-horizon", action="store_true",
                   help="warn if doubling T changes EP by 1e-3 or more")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("trace", help="entropy and root distribution along one evolution")
    _add_evolution_args(p, with_workers=False)
    p.add_argument("--psi", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("predict", help="exact EP vs two-level predictions over [-eps_max, eps_max]")
    _add_evolution_args(p)
    p.add_argument("--family", choices=["uniform", "localized"], required=True)
    p.add_argument("--eps-max", type=float, default=20.0)
    p.add_argument("--eps-step", type=float, default=0.1)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="run the acceptance and property checks")
    p.add_argument("--only", nargs="+", choices=sorted(ALL_CHECKS), help="subset of checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        if getattr(args, "workers", 1) < 1:
            raise ValueError("--workers must be at least 1")
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    except NumericalError as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
