"""Command-line interface.

Subcommands: gen-grid, run, ensemble, speckmeans, stats. Every command that
writes files also writes a manifest (config echo, input hashes, durations)
next to its primary output. Exit codes: 0 success, 1 bad input or usage,
2 runtime failure (stuck chain, failed eigensolve).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .chain import (
    ALGORITHMS,
    ChainConfig,
    records_to_csv,
    run_chain,
    run_ensemble,
)
from .errors import SolverError, StuckChainError
from .graph import make_grid
from .io import (
    atomic_write_text,
    load_graph,
    load_partition,
    partition_to_document,
    save_graph,
    save_partition,
)
from .metrics import plan_metrics
from .speckmeans import speckmeans


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 on usage errors; this CLI reserves 2 for
        # runtime failures, so remap to 1.
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(ValueError):
    pass


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _write_manifest(primary_output, command, config, inputs, outputs, started):
    manifest = {
        "command": command,
        "version": __version__,
        "config": config,
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in inputs],
        "outputs": [str(p) for p in outputs],
        "duration_seconds": round(time.monotonic() - started, 3),
    }
    path = Path(str(primary_output) + ".manifest.json")
    atomic_write_text(path, json.dumps(manifest, indent=1) + "\n")


def _default_jobs() -> int:
    env = os.environ.get("SPECCHAIN_JOBS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"SPECCHAIN_JOBS must be an integer, got {env!r}")
    return 1


def _load_inputs(args):
    g = load_graph(args.graph)
    p = load_partition(g, args.assignment)
    if p.k != args.k:
        raise _UsageError(f"--k {args.k} does not match assignment with k={p.k}")
    return g, p


def cmd_gen_grid(args) -> int:
    started = time.monotonic()
    g, p = make_grid(args.side, args.k)
    save_graph(g, args.graph_out)
    save_partition(g, p, args.assignment_out)
    _write_manifest(
        args.graph_out,
        "gen-grid",
        {"side": args.side, "k": args.k},
        [],
        [args.graph_out, args.assignment_out],
        started,
    )
    return 0


def cmd_run(args) -> int:
    started = time.monotonic()
    g, p0 = _load_inputs(args)
    cfg = ChainConfig(
        algorithm=args.algorithm,
        steps=args.steps,
        k=args.k,
        master_seed=args.seed,
        eps=args.eps,
    )
    final, records = run_chain(g, p0, cfg, chain_id=0)
    atomic_write_text(args.records_out, records_to_csv(records))
    save_partition(g, final, args.final_out)
    _write_manifest(
        args.final_out,
        "run",
        {
            "algorithm": args.algorithm,
            "steps": args.steps,
            "k": args.k,
            "seed": args.seed,
            "eps": args.eps,
        },
        [args.graph, args.assignment],
        [args.records_out, args.final_out],
        started,
    )
    m = plan_metrics(g, final)
    print(json.dumps({"cut_edges": m.cut_edges, "pop_dev": m.pop_dev}))
    return 0


def cmd_ensemble(args) -> int:
    started = time.monotonic()
    g, p0 = _load_inputs(args)
    cfg = ChainConfig(
        algorithm=args.algorithm,
        steps=args.steps,
        k=args.k,
        master_seed=args.seed,
        eps=args.eps,
    )
    result = run_ensemble(g, p0, cfg, args.count, mode=args.mode, jobs=args.jobs)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    plan_paths = []
    for i, plan in enumerate(result.plans):
        path = out_dir / f"plan_{i:05d}.json"
        save_partition(g, plan, path)
        plan_paths.append(path)
    rows = result.plan_rows()
    lines = ["plan_index,cut_edges,pop_dev,seed,attempts_total"]
    for idx, cuts, dev, seed, attempts in rows:
        lines.append(f"{idx},{cuts},{dev!r},{seed},{attempts}")
    agg = out_dir / "aggregate.csv"
    atomic_write_text(agg, "\n".join(lines) + "\n")
    _write_manifest(
        agg,
        "ensemble",
        {
            "algorithm": args.algorithm,
            "steps": args.steps,
            "k": args.k,
            "count": args.count,
            "mode": args.mode,
            "seed": args.seed,
            "eps": args.eps,
            "jobs": args.jobs,
        },
        [args.graph, args.assignment],
        [str(agg)] + [str(p) for p in plan_paths],
        started,
    )
    return 0


def cmd_speckmeans(args) -> int:
    started = time.monotonic()
    g = load_graph(args.graph)
    p = speckmeans(g, args.k, args.seed)
    save_partition(g, p, args.out)
    _write_manifest(
        args.out,
        "speckmeans",
        {"k": args.k, "seed": args.seed},
        [args.graph],
        [args.out],
        started,
    )
    m = plan_metrics(g, p)
    print(
        json.dumps(
            {
                "cut_edges": m.cut_edges,
                "pop_dev": m.pop_dev,
                "parts_connected": m.parts_connected,
            }
        )
    )
    return 0


def cmd_stats(args) -> int:
    g = load_graph(args.graph)
    p = load_partition(g, args.assignment)
    m = plan_metrics(g, p)
    print(
        json.dumps(
            {
                "k": p.k,
                "cut_edges": m.cut_edges,
                "pop_dev": m.pop_dev,
                "parts_connected": m.parts_connected,
            }
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specchain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gg = sub.add_parser("gen-grid", help="write a grid graph and band assignment")
    gg.add_argument("--side", type=int, required=True, help="grid side length")
    gg.add_argument("--k", type=int, required=True, help="number of row bands")
    gg.add_argument("--graph-out", required=True, help="graph JSON to write")
    gg.add_argument("--assignment-out", required=True, help="assignment JSON to write")
    gg.set_defaults(func=cmd_gen_grid)

    def chain_args(p):
        p.add_argument("--graph", required=True, help="graph JSON")
        p.add_argument("--assignment", required=True, help="starting assignment JSON")
        p.add_argument("--algorithm", choices=ALGORITHMS, required=True,
                       help="proposal kernel")
        p.add_argument("--steps", type=int, required=True,
                       help="accepted steps per chain")
        p.add_argument("--k", type=int, required=True, help="number of parts")
        p.add_argument("--seed", type=int, required=True, help="master seed")
        p.add_argument("--eps", type=float, default=0.01,
                       help="treerecom balance tolerance (default 0.01)")

    run = sub.add_parser("run", help="run one chain and write per-step records")
    chain_args(run)
    run.add_argument("--records-out", required=True, help="per-step CSV to write")
    run.add_argument("--final-out", required=True, help="final assignment JSON to write")
    run.set_defaults(func=cmd_run)

    ens = sub.add_parser("ensemble", help="generate an ensemble of plans")
    chain_args(ens)
    ens.add_argument("--count", type=int, required=True, help="number of plans")
    ens.add_argument("--mode", choices=("independent", "subsample"),
                     default="independent",
                     help="independent chains or one sub-sampled chain")
    ens.add_argument("--out-dir", required=True,
                     help="directory for plan_*.json and aggregate.csv")
    ens.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default SPECCHAIN_JOBS or 1)")
    ens.set_defaults(func=cmd_ensemble)

    km = sub.add_parser("speckmeans", help="spectral k-means baseline plan")
    km.add_argument("--graph", required=True, help="graph JSON")
    km.add_argument("--k", type=int, required=True, help="number of parts")
    km.add_argument("--seed", type=int, required=True, help="center init seed")
    km.add_argument("--out", required=True, help="assignment JSON to write")
    km.set_defaults(func=cmd_speckmeans)

    st = sub.add_parser("stats", help="print metrics for an assignment")
    st.add_argument("--graph", required=True, help="graph JSON")
    st.add_argument("--assignment", required=True, help="assignment JSON")
    st.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) is None:
            args.jobs = _default_jobs()
        if getattr(args, "jobs", 1) < 1:
            raise _UsageError("--jobs must be >= 1")
        return args.func(args)
    except (_UsageError, ValueError, OSError) as exc:
        print(f"specchain: error: {exc}", file=sys.stderr)
        return 1
    except (StuckChainError, SolverError) as exc:
        print(f"specchain: runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
