"""Command-line surface: simulate instances, run chains, evaluate recoveries,
estimate precision matrices, and sweep benchmark grids.

Exit codes: 0 success, 1 validation, 2 runtime/numeric, 3 I/O. Diagnostics go
to stderr; data only to files.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .errors import MplGraphError
from .graph import Graph, GraphPrior, read_edge_list, write_edge_list
from .gwishart import (GWishartParams, estimate_precision, read_precision_csv,
                       write_precision_csv)
from .metrics import (ScoredEdges, auc_pr, auc_roc, convergence_time, f1_at,
                      pr_plus_minus, write_report_csv)
from .mpl import SufficientStats
from .samplers import (ChainConfig, edge_inclusion, read_probs_csv,
                       read_trace_csv, run_chain, select_graph,
                       write_probs_csv, write_trace_csv)
from .simulate import (InstanceSpec, gen_instance, n_edges_for,
                       nonparanormal_transform, read_data_csv, write_data_csv,
                       write_manifest)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="mplgraph",
                     description="Bayesian graph structure learning via "
                                 "marginal pseudo-likelihood MCMC")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="generate a synthetic instance")
    sim.add_argument("--p", type=int, required=True)
    sim.add_argument("--kind", default="random",
                     choices=["random", "cluster", "scale-free"])
    sim.add_argument("--regime", default="sparse", choices=["sparse", "dense"])
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--clusters", type=int, default=None)
    sim.add_argument("--out-dir", default=".")

    run = sub.add_parser("run", help="run a sampler on a data CSV")
    run.add_argument("--data", required=True)
    run.add_argument("--algorithm", default="bd", choices=["bd", "rj"])
    run.add_argument("--iterations", type=int, required=True)
    run.add_argument("--burn-in", type=int, default=None)
    run.add_argument("--beta", type=float, default=0.2)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--threshold", type=float, default=0.5)
    run.add_argument("--proposal", default="uniform",
                     choices=["uniform", "two-step"])
    run.add_argument("--checkpoint-every", type=int, default=None)
    run.add_argument("--npn", action="store_true",
                     help="apply the rank-based Gaussianizing transform")
    run.add_argument("--out-dir", default=".")

    ev = sub.add_parser("evaluate", help="score edge probabilities vs truth")
    ev.add_argument("--probs", required=True)
    ev.add_argument("--truth", required=True)
    ev.add_argument("--threshold", type=float, default=0.5)
    ev.add_argument("--trace", default=None)
    ev.add_argument("--iterations", type=int, default=None)
    ev.add_argument("--seed", type=int, default=None)
    ev.add_argument("--out", required=True)

    ep = sub.add_parser("estimate-precision",
                        help="posterior-mean precision given a graph")
    ep.add_argument("--data", required=True)
    ep.add_argument("--graph", required=True)
    ep.add_argument("--b", type=float, default=3.0)
    ep.add_argument("--d", default="identity",
                    help="'identity' or a dense CSV path")
    ep.add_argument("--n-draws", type=int, default=100)
    ep.add_argument("--seed", type=int, default=0)
    ep.add_argument("--out", required=True)

    bn = sub.add_parser("bench", help="simulate/run/evaluate over a grid")
    bn.add_argument("--p", default="10", help="comma list")
    bn.add_argument("--kind", default="random", help="comma list")
    bn.add_argument("--regime", default="sparse", help="comma list")
    bn.add_argument("--n", default="350", help="comma list")
    bn.add_argument("--algorithms", default="bd,rj", help="comma list")
    bn.add_argument("--reps", type=int, default=16)
    bn.add_argument("--iterations", type=int, default=30000)
    bn.add_argument("--burn-in", type=int, default=None)
    bn.add_argument("--beta", type=float, default=0.2)
    bn.add_argument("--threshold", type=float, default=0.5)
    bn.add_argument("--seed-base", type=int, default=0)
    bn.add_argument("--workers", type=int,
                    default=int(os.environ.get("MPLGRAPH_WORKERS", "1")))
    bn.add_argument("--out", required=True)
    return parser


def _rep_seed(seed_base: int, cell: str, rep: int) -> int:
    digest = hashlib.sha256(f"{seed_base}|{cell}|{rep}".encode()).digest()
    return int.from_bytes(digest[:8], "big") % (2 ** 63)


def cmd_simulate(args) -> int:
    spec = InstanceSpec(p=args.p, graph_kind=args.kind,
                        density_regime=args.regime, n=args.n, seed=args.seed,
                        clusters=args.clusters)
    g, k, x = gen_instance(spec)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_edge_list(g, out / "graph.txt")
    write_precision_csv(k, out / "precision.csv")
    write_data_csv(x, out / "data.csv")
    write_manifest(spec, n_edges_for(spec), out / "manifest.txt")
    return EXIT_OK


def cmd_run(args) -> int:
    x = read_data_csv(args.data)
    if args.npn:
        x = nonparanormal_transform(x)
    stats = SufficientStats.from_data(x)
    prior = GraphPrior(beta=args.beta)
    cfg = ChainConfig(iterations=args.iterations, burn_in=args.burn_in,
                      seed=args.seed, checkpoint_every=args.checkpoint_every,
                      proposal_kind=args.proposal)
    result = run_chain(args.algorithm, stats, prior, cfg)
    probs = edge_inclusion(result)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_probs_csv(probs, stats.p, out / "probs.csv")
    write_trace_csv(result.trace, out / "trace.csv")
    write_edge_list(select_graph(probs, stats.p, args.threshold),
                    out / "selected.txt")
    return EXIT_OK


def _evaluate_row(probs: np.ndarray, truth: Graph, threshold: float,
                  trace_rows=None, iterations=None, seed=None) -> dict:
    se = ScoredEdges(truth.edge_vector(), probs)
    row = {
        "auc_roc": auc_roc(se),
        "auc_pr": auc_pr(se),
        "f1": f1_at(se, threshold),
        "iterations": iterations,
        "seed": seed,
    }
    row["pr_plus"], row["pr_minus"] = pr_plus_minus(se)
    if trace_rows:
        # edge-count trace as the convergence diagnostic
        pairs = [(r.wall_seconds, float(r.edge_count)) for r in trace_rows]
        row["conv_seconds"] = convergence_time(pairs)
    else:
        row["conv_seconds"] = None
    return row


def cmd_evaluate(args) -> int:
    truth = read_edge_list(args.truth)
    probs = read_probs_csv(args.probs, truth.p)
    trace_rows = read_trace_csv(args.trace) if args.trace else None
    row = _evaluate_row(probs, truth, args.threshold, trace_rows,
                        args.iterations, args.seed)
    write_report_csv([row], args.out)
    return EXIT_OK


def cmd_estimate_precision(args) -> int:
    x = read_data_csv(args.data)
    g = read_edge_list(args.graph)
    stats = SufficientStats.from_data(x)
    if g.p != stats.p:
        raise ValueError("graph and data dimensions disagree")
    d = np.eye(stats.p) if args.d == "identity" else read_precision_csv(args.d)
    params = GWishartParams(args.b, d)
    rng = np.random.default_rng(args.seed)
    k = estimate_precision(stats, g, params, args.n_draws, rng)
    write_precision_csv(k, args.out)
    return EXIT_OK


def _bench_one(job) -> dict:
    (p, kind, regime, n, alg, rep, seed, iterations, burn_in, beta,
     threshold) = job
    spec = InstanceSpec(p=p, graph_kind=kind, density_regime=regime, n=n,
                        seed=seed)
    g, _, x = gen_instance(spec)
    stats = SufficientStats.from_data(x)
    cfg = ChainConfig(iterations=iterations, burn_in=burn_in, seed=seed)
    result = run_chain(alg, stats, GraphPrior(beta=beta), cfg)
    probs = edge_inclusion(result)
    pairs = [(r.wall_seconds, float(r.edge_count)) for r in result.trace]
    se = ScoredEdges(g.edge_vector(), probs)
    pr_plus, pr_minus = pr_plus_minus(se)
    return {
        "p": p, "kind": kind, "regime": regime, "n": n, "algorithm": alg,
        "rep": rep, "seed": seed,
        "auc_roc": auc_roc(se), "auc_pr": auc_pr(se),
        "f1": f1_at(se, threshold), "pr_plus": pr_plus, "pr_minus": pr_minus,
        "conv_seconds": convergence_time(pairs), "iterations": iterations,
    }


_BENCH_COLS = ["p", "kind", "regime", "n", "algorithm", "rep", "seed",
               "auc_roc", "auc_pr", "f1", "pr_plus", "pr_minus",
               "conv_seconds", "iterations"]


def _bench_key(row: dict) -> tuple:
    return (str(row["p"]), row["kind"], row["regime"], str(row["n"]),
            row["algorithm"], str(row["rep"]))


def _write_bench_csv(rows: list[dict], path) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(_BENCH_COLS) + "\n")
        for row in rows:
            fh.write(",".join(
                repr(row[c]) if isinstance(row[c], float) else str(row[c])
                for c in _BENCH_COLS) + "\n")


def _read_bench_csv(path) -> list[dict]:
    rows = []
    with open(path) as fh:
        cols = fh.readline().strip().split(",")
        for line in fh:
            vals = line.strip().split(",")
            rows.append(dict(zip(cols, vals)))
    return rows


def cmd_bench(args) -> int:
    ps = [int(v) for v in args.p.split(",")]
    kinds = args.kind.split(",")
    regimes = args.regime.split(",")
    ns = [int(v) for v in args.n.split(",")]
    algs = args.algorithms.split(",")
    done_keys = set()
    rows: list[dict] = []
    if os.path.exists(args.out):
        for row in _read_bench_csv(args.out):
            if row.get("rep") != "mean":
                rows.append(row)
                done_keys.add(_bench_key(row))
    jobs = []
    for p in ps:
        for kind in kinds:
            for regime in regimes:
                for n in ns:
                    for alg in algs:
                        cell = f"p={p},kind={kind},regime={regime},n={n},alg={alg}"
                        for rep in range(args.reps):
                            key = (str(p), kind, regime, str(n), alg, str(rep))
                            if key in done_keys:
                                continue
                            jobs.append((p, kind, regime, n, alg, rep,
                                         _rep_seed(args.seed_base, cell, rep),
                                         args.iterations, args.burn_in,
                                         args.beta, args.threshold))
    failures = 0
    results = []
    if args.workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            futs = list(pool.map(_bench_one_safe, jobs))
        results = futs
    else:
        results = [_bench_one_safe(job) for job in jobs]
    for job, res in zip(jobs, results):
        if isinstance(res, dict):
            rows.append(res)
        else:
            failures += 1
            print(f"bench cell failed ({job[:6]}): {res}", file=sys.stderr)
    rows.sort(key=_bench_key)
    # per-cell means over replications
    agg_rows = []
    cells = sorted({_bench_key(r)[:5] for r in rows})
    for cell in cells:
        members = [r for r in rows if _bench_key(r)[:5] == cell]
        agg = {"p": cell[0], "kind": cell[1], "regime": cell[2], "n": cell[3],
               "algorithm": cell[4], "rep": "mean", "seed": ""}
        for c in ["auc_roc", "auc_pr", "f1", "pr_plus", "pr_minus",
                  "conv_seconds", "iterations"]:
            agg[c] = float(np.mean([float(r[c]) for r in members]))
        agg_rows.append(agg)
    _write_bench_csv(rows + agg_rows, args.out)
    return EXIT_RUNTIME if failures else EXIT_OK


def _bench_one_safe(job):
    try:
        return _bench_one(job)
    except Exception as exc:  # logged by the caller, remaining cells continue
        return exc


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "simulate": cmd_simulate,
        "run": cmd_run,
        "evaluate": cmd_evaluate,
        "estimate-precision": cmd_estimate_precision,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"mplgraph: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except MplGraphError as exc:
        print(f"mplgraph: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"mplgraph: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
