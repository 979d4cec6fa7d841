"""Command-line interface: ``ddcolor <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .coloring import DdcConfig, random_coloring, run_ddc
from .experiments import (DDC, RANDOM, SweepSpec, beta_grid, convergence_profile,
                          run_sweep, search_betas, summarize)
from .generators import ER, SF, File, TwoCommunity, realize
from .io import (CSV_FIELDS, _fmt, load_edge_list, read_coloring, write_coloring,
                 write_edge_list, write_manifest, write_rows, _write_text)
from .metrics import measure

log = logging.getLogger("ddcolor")


def _add_common(p, runs_default=150):
    p.add_argument("--seed", type=int, default=0, help="base random seed (default 0)")
    p.add_argument("--runs", type=int, default=runs_default, help="independent runs per point")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--max-sweeps", type=int, default=1000)
    p.add_argument("--patience", type=int, default=50)


def _add_source(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--er", nargs=2, metavar=("N", "P"), help="Erdos-Renyi G(N, P)")
    g.add_argument("--sf", nargs=3, metavar=("N", "GAMMA", "KMIN"),
                   help="power-law configuration model")
    g.add_argument("--community", nargs=3, metavar=("N", "PIN", "POUT"),
                   help="two-community random graph")
    g.add_argument("--graph", metavar="PATH", help="edge-list file")
    p.add_argument("--no-lcc", action="store_true",
                   help="keep the whole file graph instead of its largest component")
    p.add_argument("--base", type=int, choices=(0, 1), default=None,
                   help="label base of the edge list (default: remap labels densely)")
    p.add_argument("--fixed-graph", action="store_true",
                   help="reuse one graph realization for all runs")


def _graph_spec(args):
    if args.er:
        return ER(int(args.er[0]), float(args.er[1]))
    if args.sf:
        return SF(int(args.sf[0]), float(args.sf[1]), int(args.sf[2]))
    if args.community:
        return TwoCommunity(int(args.community[0]), float(args.community[1]), float(args.community[2]))
    path = Path(args.graph)
    if not path.is_file():
        raise FileNotFoundError(f"graph file not found: {path}")
    return File(str(path), take_largest_component=not args.no_lcc, base=args.base)


def _regen(args, spec):
    return False if (args.fixed_graph or isinstance(spec, File)) else True


def _sweep_spec(args, spec, q_values, betas, schemes):
    return SweepSpec(spec, q_values, betas, schemes, args.runs, args.seed,
                     _regen(args, spec), args.max_sweeps, args.patience)


def _emit(args, rows, **manifest):
    write_rows(rows, args.format, args.out)
    if args.out != "-":
        write_manifest(args.out + ".manifest.json", command=args.command,
                       argv=manifest.pop("argv"), **manifest)
    if getattr(args, "summary", None):
        _write_summary(summarize(rows), args.summary)


def _write_summary(points, path):
    lines = ["scheme,q,beta,runs,f_d_mean,f_d_stderr,r_max_mean,r_max_stderr"]
    for p in points:
        lines.append(",".join(_fmt(v) for v in (p.scheme, p.q, p.beta, p.runs, p.f_d_mean,
                                                 p.f_d_stderr, p.r_max_mean, p.r_max_stderr)))
    _write_text("\n".join(lines) + "\n", path)


def cmd_generate(args, argv):
    g = realize(_graph_spec(args), args.seed)
    if args.out == "-":
        sys.stdout.write(f"# nodes: {g.node_count}\n")
        sys.stdout.writelines(f"{u} {v}\n" for u, v in g.edges().tolist())
    else:
        write_edge_list(g, args.out)
    log.info("generated %r", g)


def cmd_color(args, argv):
    spec = _graph_spec(args)
    g = realize(spec, args.seed)
    if args.random:
        col = random_coloring(g.node_count, args.q, args.seed)
        info = {"scheme": RANDOM}
    else:
        res = run_ddc(g, DdcConfig(q=args.q, beta=args.beta, seed=args.seed,
                                   max_sweeps=args.max_sweeps, patience_sweeps=args.patience))
        col = res.final_coloring
        info = {"scheme": DDC, "beta": args.beta, "sweeps": res.sweeps_run,
                "updates": res.updates_applied, "terminated_by": res.terminated_by.value}
    if args.coloring_out:
        write_coloring(col, args.coloring_out)
    doc = {"nodes": g.node_count, "edges": g.edge_count, "q": args.q, "seed": args.seed,
           **info, **measure(g, col).as_dict()}
    print(json.dumps(doc, sort_keys=True))


def cmd_metrics(args, argv):
    path = Path(args.graph)
    if not path.is_file():
        raise FileNotFoundError(f"graph file not found: {path}")
    if not Path(args.coloring).is_file():
        raise FileNotFoundError(f"coloring file not found: {args.coloring}")
    g = load_edge_list(path, take_largest_component=args.lcc, base=args.base)
    col = read_coloring(args.coloring, g.node_count)
    doc = {"nodes": g.node_count, "edges": g.edge_count, "q": col.q, **measure(g, col).as_dict()}
    print(json.dumps(doc, sort_keys=True))


def _betas(args):
    if args.betas:
        return args.betas
    return beta_grid(args.beta_step, args.beta_min, args.beta_max)


def cmd_sweep_beta(args, argv):
    spec = _graph_spec(args)
    sweep = _sweep_spec(args, spec, args.q, _betas(args), (DDC,))
    rows = run_sweep(sweep, args.workers)
    best = search_betas(rows)
    for (q, obj), res in sorted(best.items()):
        log.info("q=%d objective=%s beta*=%g", q, obj, res.beta_star)
    _emit(args, rows, argv=argv, sweep=sweep, failures=rows.failures,
          beta_star=[{"q": q, "objective": o, "beta_star": r.beta_star} for (q, o), r in sorted(best.items())])


def cmd_sweep_colors(args, argv):
    spec = _graph_spec(args)
    betas = list(args.betas)
    if args.optimal_beta:
        betas = sorted(set(betas) | set(beta_grid(args.beta_step)))
    schemes = (DDC,) if args.no_random else (RANDOM, DDC)
    sweep = _sweep_spec(args, spec, args.q, betas, schemes)
    rows = run_sweep(sweep, args.workers)
    extra = {}
    if args.optimal_beta:
        best = search_betas(rows)
        extra["beta_star"] = [{"q": q, "objective": o, "beta_star": r.beta_star}
                              for (q, o), r in sorted(best.items())]
        for item in extra["beta_star"]:
            log.info("q=%(q)d objective=%(objective)s beta*=%(beta_star)g", item)
    _emit(args, rows, argv=argv, sweep=sweep, failures=rows.failures, **extra)


def cmd_sweep_community(args, argv):
    header = ("p_in", "p_out") + CSV_FIELDS
    lines = [",".join(header)]
    records = []
    for p_in in args.p_in:
        p_out = round(args.total - p_in, 12)
        spec = TwoCommunity(args.n, p_in, p_out)
        sweep = _sweep_spec(args, spec, args.q, [args.beta], (DDC,))
        for row in run_sweep(sweep, args.workers):
            rec = {"p_in": p_in, "p_out": p_out, **row.as_record()}
            records.append(rec)
            lines.append(",".join(_fmt(rec[k]) for k in header))
    if args.format == "csv":
        _write_text("\n".join(lines) + "\n", args.out)
    else:
        _write_text(json.dumps(records, indent=1) + "\n", args.out)
    if args.out != "-":
        write_manifest(args.out + ".manifest.json", command=args.command, argv=argv,
                       n=args.n, total=args.total, p_in=args.p_in, q=args.q, beta=args.beta,
                       runs=args.runs, seed=args.seed)


def cmd_profile(args, argv):
    spec = _graph_spec(args)
    prof = convergence_profile(spec, args.q, args.beta, args.runs, args.seed,
                               max_sweeps=args.max_sweeps, patience_sweeps=args.patience,
                               regenerate_graph_per_run=_regen(args, spec))
    if args.format == "csv":
        text = "sweep,mean_f_d\n" + "".join(f"{s},{_fmt(f)}\n" for s, f in prof)
    else:
        text = json.dumps([{"sweep": s, "mean_f_d": f} for s, f in prof]) + "\n"
    _write_text(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddcolor", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph as an edge list")
    _add_source(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("color", help="color one graph and print its metrics")
    _add_source(p)
    _add_common(p, runs_default=1)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--random", action="store_true", help="uniform random coloring instead of DDC")
    p.add_argument("--coloring-out", metavar="PATH", help="write the final coloring here")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("metrics", help="measure a coloring file against an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--lcc", action="store_true", help="restrict to the largest component first")
    p.add_argument("--base", type=int, choices=(0, 1), default=None)
    p.set_defaults(func=cmd_metrics)

    def beta_range(p):
        p.add_argument("--beta-step", type=float, default=0.1)
        p.add_argument("--beta-min", type=float, default=-2.0)
        p.add_argument("--beta-max", type=float, default=2.0)

    p = sub.add_parser("sweep-beta", help="f_d and R_max versus beta")
    _add_source(p)
    _add_common(p)
    p.add_argument("--q", type=int, nargs="+", required=True)
    p.add_argument("--betas", type=float, nargs="+", help="explicit beta values")
    beta_range(p)
    p.add_argument("--summary", metavar="PATH", help="also write per-point means")
    p.set_defaults(func=cmd_sweep_beta)

    p = sub.add_parser("sweep-colors", help="random versus DDC over color counts")
    _add_source(p)
    _add_common(p)
    p.add_argument("--q", type=int, nargs="+", default=list(range(2, 16)))
    p.add_argument("--betas", type=float, nargs="+", default=[0.0])
    p.add_argument("--no-random", action="store_true")
    p.add_argument("--optimal-beta", action="store_true",
                   help="also sweep the beta grid and report the best beta per q")
    p.add_argument("--beta-step", type=float, default=0.1)
    p.add_argument("--summary", metavar="PATH")
    p.set_defaults(func=cmd_sweep_colors)

    p = sub.add_parser("sweep-community", help="two-community graphs with p_in + p_out fixed")
    _add_common(p)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--total", type=float, default=0.02, help="p_in + p_out")
    p.add_argument("--p-in", type=float, nargs="+", default=[0.010, 0.0125, 0.015, 0.0175, 0.020])
    p.add_argument("--q", type=int, nargs="+", default=[4, 6])
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--fixed-graph", action="store_true")
    p.set_defaults(func=cmd_sweep_community)

    p = sub.add_parser("profile", help="mean f_d after each sweep")
    _add_source(p)
    _add_common(p, runs_default=20)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.set_defaults(func=cmd_profile)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args, argv)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"ddcolor {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
