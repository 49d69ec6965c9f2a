"""Command-line entry point wiring the library to files and stdout.

Subcommands: generate, bound, bifurcate, simulate, sweep, fig2search.
Single-object results go to stdout as JSON; tabular results go to CSV
files. Every run logs its resolved configuration and seed as one JSON
line on stderr. Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bifurcation, bounds, dynamics, experiments, glv, graphs

__all__ = ["main", "entry_point"]

_ENV_SEED = "GLVNET_SEED"


def _default_seed() -> int:
    return int(os.environ.get(_ENV_SEED, "0"))


def _log_config(subcommand: str, args: argparse.Namespace) -> None:
    payload = {"subcommand": subcommand}
    payload.update(
        {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    )
    print(json.dumps(payload), file=sys.stderr)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_graph(path: str) -> graphs.UndirectedGraph:
    g = graphs.read_graph(path)
    if g.num_edges and g.d_min < 1:
        raise ValueError(f"{path}: graph has isolated vertices")
    return g


def _cmd_generate(args) -> int:
    rng = np.random.default_rng(args.seed)
    params: dict
    if args.kind == "binomial-config":
        if args.n is None or args.p is None or args.dmax is None:
            raise ValueError("binomial-config needs --n, --p and --dmax")
        deg = graphs.sample_binomial_degrees(args.n, args.dmax, args.p, rng)
        g = graphs.configuration_model(deg, rng)
        params = {"n": args.n, "p": args.p, "dmax": args.dmax}
    else:
        named_params = {}
        for key in ("m", "n", "k", "d"):
            val = getattr(args, key)
            if val is not None:
                named_params[key] = val
        g = graphs.make_named(args.kind, rng=rng, **named_params)
        params = named_params
    g = graphs.UndirectedGraph(
        g.n, g.edges, meta={"seed": args.seed, "generator": args.kind, "params": params}
    )
    graphs.write_graph(g, args.out)
    print(
        json.dumps(
            {"out": args.out, "n": g.n, "edges": g.num_edges, "d_min": g.d_min, "d_max": g.d_max}
        )
    )
    return 0


def _cmd_bound(args) -> int:
    if args.case1 == args.case2:
        raise ValueError("choose exactly one of --case1 / --case2")
    if args.case1:
        if args.dmin is None or args.dmax is None:
            raise ValueError("--case1 needs --dmin and --dmax")
        res = bounds.omega_case1(bounds.Case1Params(args.dmin, args.dmax))
    else:
        needed = (args.d_lo, args.d_hi, args.r_lo, args.r_hi, args.beta)
        if any(v is None for v in needed):
            raise ValueError("--case2 needs --d-lo, --d-hi, --r-lo, --r-hi and --beta")
        res = bounds.omega_case2(
            bounds.Case2Params(args.d_lo, args.d_hi, args.r_lo, args.r_hi, args.beta)
        )
    _emit(
        {
            "omega": res.omega,
            "theta": res.theta,
            "roots": list(res.roots),
            "method_agreement": res.method_agreement,
        },
        args.out,
    )
    return 0


def _cmd_bifurcate(args) -> int:
    g = _load_graph(args.graph)
    report = bifurcation.classify(g, scan_step=args.scan_step, tol=args.tol)
    _emit(
        {
            "graph": args.graph,
            "n": g.n,
            "tau_trans": report.tau_trans,
            "tau_pitch": report.tau_pitch,
            "tau_c": report.tau_c,
            "kind": report.kind,
            "vanishing_vertex": report.vanishing_vertex,
        },
        args.out,
    )
    if args.branch_csv:
        hi = report.tau_pitch * (1.0 + args.branch_margin)
        grid = np.linspace(0.0, hi, args.branch_points)
        samples = bifurcation.branch(g, grid)
        with Path(args.branch_csv).open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["tau"] + [f"x_{i + 1}" for i in range(g.n)] + ["feasible", "stable"])
            for s in samples:
                writer.writerow(
                    [format(s.tau, ".17g")]
                    + [format(v, ".17g") for v in s.x_star]
                    + [int(s.feasible), int(s.stable)]
                )
    return 0


def _parse_x0(spec: str, n: int, rng: np.random.Generator) -> np.ndarray:
    if spec == "ones":
        return np.ones(n)
    if spec.startswith("uniform:"):
        lo, hi = (float(v) for v in spec.split(":", 1)[1].split(","))
        return rng.uniform(lo, hi, size=n)
    vals = np.array([float(v) for v in spec.split(",")])
    if vals.size != n:
        raise ValueError(f"x0 has {vals.size} entries for a {n}-species system")
    return vals


def _cmd_simulate(args) -> int:
    if (args.system is None) == (args.graph is None):
        raise ValueError("choose exactly one of --graph (with --tau) / --system")
    if args.system is not None:
        sys_ = glv.system_from_dict(json.loads(Path(args.system).read_text()))
    else:
        if args.tau is None:
            raise ValueError("--graph needs --tau")
        g = _load_graph(args.graph)
        sys_ = glv.constant_competition(g, args.tau)
    rng = np.random.default_rng(args.seed)
    x0 = _parse_x0(args.x0, sys_.n, rng)
    traj = dynamics.integrate(
        sys_, x0, args.t_end, rtol=args.rtol, atol=args.atol
    )
    with Path(args.out).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"x_{i + 1}" for i in range(sys_.n)])
        for i in range(0, traj.times.size, max(1, args.thin)):
            writer.writerow(
                [format(traj.times[i], ".17g")]
                + [format(v, ".17g") for v in traj.states[i]]
            )
    print(
        json.dumps(
            {
                "out": args.out,
                "converged": traj.converged,
                "t_final": float(traj.times[-1]),
                "steps": int(traj.times.size),
            }
        )
    )
    return 0


def _cmd_sweep(args) -> int:
    cfg = {}
    if args.config:
        cfg = json.loads(Path(args.config).read_text())
        unknown = set(cfg) - {"ns", "ps", "runs", "dmax", "seed", "threads", "out", "summary_out", "group_by"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return cfg.get(key, default)

    ns = pick(args.ns, "ns", None)
    ps = pick(args.ps, "ps", None)
    if ns is None or ps is None:
        raise ValueError("sweep needs --ns and --ps (flags or config file)")
    runs = pick(args.runs, "runs", 500)
    dmax = pick(args.dmax, "dmax", 30)
    seed = pick(args.seed, "seed", _default_seed())
    threads = pick(args.threads, "threads", 1)
    out = pick(args.out, "out", "sweep_records.csv")
    summary_out = pick(args.summary_out, "summary_out", None)
    group_by = pick(args.group_by, "group_by", "n")

    result = experiments.run_sweep(
        ns=ns, ps=ps, runs=runs, d_max=dmax, master_seed=seed, threads=threads
    )
    experiments.write_records_csv(result.records, out)
    if summary_out:
        summaries = experiments.summarize(result.records, group_by)
        experiments.write_summaries_csv(summaries, group_by, summary_out)
    print(
        json.dumps(
            {
                "out": out,
                "records": len(result.records),
                "failures": len(result.failures),
            }
        )
    )
    if result.failures:
        print(experiments.failures_json(result.failures), file=sys.stderr)
    return 0


def _cmd_fig2search(args) -> int:
    rng = np.random.default_rng(args.seed)
    pair = bifurcation.find_fig2_pair(args.n, rng, max_graphs=args.max_graphs)
    g = graphs.UndirectedGraph(
        pair.graph.n, pair.graph.edges, meta={"seed": args.seed, "generator": "fig2search"}
    )
    h = graphs.UndirectedGraph(
        pair.reduced.n,
        pair.reduced.edges,
        meta={"seed": args.seed, "generator": "fig2search", "removed_edge": list(pair.removed_edge)},
    )
    graphs.write_graph(g, f"{args.out_prefix}_a.edges")
    graphs.write_graph(h, f"{args.out_prefix}_b.edges")
    _emit(
        {
            "graph_a": f"{args.out_prefix}_a.edges",
            "graph_b": f"{args.out_prefix}_b.edges",
            "removed_edge": list(pair.removed_edge),
            "kind_a": pair.graph_report.kind,
            "kind_b": pair.reduced_report.kind,
            "tau_c_a": pair.graph_report.tau_c,
            "tau_c_b": pair.reduced_report.tau_c,
        },
        args.out,
    )
    return 0


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glvnet",
        description="Coexistence bounds and bifurcations of competitive Lotka-Volterra networks",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("generate", help="write a graph as an edge-list file")
    p.add_argument(
        "--kind",
        required=True,
        choices=["binomial-config", "complete_bipartite", "star", "cycle", "random_regular"],
    )
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--dmax", type=int)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("bound", help="closed-form coexistence bound as JSON")
    p.add_argument("--case1", action="store_true")
    p.add_argument("--case2", action="store_true")
    p.add_argument("--dmin", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--d-lo", type=float, dest="d_lo")
    p.add_argument("--d-hi", type=float, dest="d_hi")
    p.add_argument("--r-lo", type=float, dest="r_lo")
    p.add_argument("--r-hi", type=float, dest="r_hi")
    p.add_argument("--beta", type=float)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("bifurcate", help="classify the first bifurcation of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--scan-step", type=float, dest="scan_step")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--branch-csv", dest="branch_csv")
    p.add_argument("--branch-points", type=int, default=201, dest="branch_points")
    p.add_argument("--branch-margin", type=float, default=0.05, dest="branch_margin")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_bifurcate)

    p = sub.add_parser("simulate", help="integrate the dynamics, write a trajectory CSV")
    p.add_argument("--graph")
    p.add_argument("--tau", type=float)
    p.add_argument("--system", help="interaction-system JSON ({r, D, T triplets}) instead of --graph/--tau")
    p.add_argument("--x0", default="uniform:0.05,2.0")
    p.add_argument("--t-end", type=float, default=500.0, dest="t_end")
    p.add_argument("--rtol", type=float, default=1e-7)
    p.add_argument("--atol", type=float, default=1e-9)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="configuration-model ratio experiment")
    p.add_argument("--ns", type=_int_list)
    p.add_argument("--ps", type=_float_list)
    p.add_argument("--runs", type=int)
    p.add_argument("--dmax", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.add_argument("--summary-out", dest="summary_out")
    p.add_argument("--group-by", choices=["n", "p"], dest="group_by")
    p.add_argument("--config", help="JSON file mirroring the flags")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fig2search", help="find one-edge-apart graphs with different bifurcation kinds")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--max-graphs", type=int, default=2000, dest="max_graphs")
    p.add_argument("--out-prefix", required=True, dest="out_prefix")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fig2search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _log_config(args.subcommand, args)
    try:
        return args.func(args)
    except (
        ValueError,
        graphs.GenerationError,
        glv.PastPitchforkError,
        glv.NeumannDivergenceError,
        bounds.MethodDisagreementError,
        bounds.RampConvergenceError,
        dynamics.StepSizeUnderflowError,
        OSError,
        json.JSONDecodeError,
    ) as e:
        print(f"glvnet: error: {e}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
