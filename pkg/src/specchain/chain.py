"""Markov chain driver: repeat a proposal kernel until feasible, N times.

Seeds are derived per chain with a fixed splitting function, so any chain in
an ensemble can be reproduced in isolation and re-runs are byte-identical.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .errors import StuckChainError
from .graph import Graph, Partition, is_connected_partition, verify_partition
from .metrics import pop_dev
from .proposals import balspecrecom_step, specrecom_step, treerecom_step

ALGORITHMS = ("specrecom", "balspecrecom", "treerecom")
CONSTRAINTS = ("connectivity", "popdev-at-most-eps")


@dataclass(frozen=True)
class ChainConfig:
    algorithm: str
    steps: int
    k: int
    master_seed: int
    eps: float = 0.01
    constraints: tuple[str, ...] = ("connectivity",)
    max_attempts_per_step: int = 1000

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.eps < 0:
            raise ValueError("eps must be >= 0")
        if self.max_attempts_per_step < 1:
            raise ValueError("max_attempts_per_step must be >= 1")
        for c in self.constraints:
            if c not in CONSTRAINTS:
                raise ValueError(f"unknown constraint {c!r}")
        if "connectivity" not in self.constraints:
            raise ValueError("the connectivity constraint is not optional")


@dataclass(frozen=True)
class EnsembleRecord:
    chain_id: int
    step_index: int
    cut_edge_count: int
    pop_dev: float
    seed_used: int
    attempts_used: int


def derive_seed(master_seed: int, index: int) -> int:
    """Fixed splitting function: the i-th child seed of a master seed."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def check_constraints(g: Graph, p: Partition, cfg: ChainConfig) -> str | None:
    """Name of the first failing constraint, or None when all pass."""
    for name in cfg.constraints:
        if name == "connectivity":
            if not is_connected_partition(g, p):
                return "connectivity"
        elif name == "popdev-at-most-eps":
            if pop_dev(g, p) > cfg.eps:
                return "popdev-at-most-eps"
    return None


def _kernel(cfg: ChainConfig):
    if cfg.algorithm == "specrecom":
        return specrecom_step
    if cfg.algorithm == "balspecrecom":
        return balspecrecom_step
    return lambda g, p, rng: treerecom_step(g, p, cfg.eps, rng)


def _iter_chain(
    g: Graph, p0: Partition, cfg: ChainConfig, chain_id: int
) -> Iterator[tuple[Partition, EnsembleRecord]]:
    verify_partition(g, p0)
    if p0.k != cfg.k:
        raise ValueError(f"config k={cfg.k} but initial partition has k={p0.k}")
    bad = check_constraints(g, p0, cfg)
    if bad is not None:
        raise ValueError(f"initial partition violates constraint {bad!r}")
    seed = derive_seed(cfg.master_seed, chain_id)
    rng = np.random.default_rng(seed)
    kernel = _kernel(cfg)
    p = p0
    for step in range(1, cfg.steps + 1):
        attempts = 0
        last_reason = "no proposal attempted"
        while True:
            if attempts >= cfg.max_attempts_per_step:
                raise StuckChainError(step, attempts, last_reason)
            attempts += 1
            prop = kernel(g, p, rng)
            if not prop.accepted:
                last_reason = prop.diagnostics.reason or "degenerate proposal"
                continue
            candidate = p.replace_pair(g, prop.replaced, prop.sides)
            bad = check_constraints(g, candidate, cfg)
            if bad is not None:
                last_reason = bad
                continue
            break
        p = candidate
        yield p, EnsembleRecord(
            chain_id=chain_id,
            step_index=step,
            cut_edge_count=len(p.cut_edges),
            pop_dev=pop_dev(g, p),
            seed_used=seed,
            attempts_used=attempts,
        )


def run_chain(
    g: Graph, p0: Partition, cfg: ChainConfig, chain_id: int = 0
) -> tuple[Partition, list[EnsembleRecord]]:
    """Run one chain for cfg.steps accepted steps from p0.

    Returns the final partition and one record per accepted step. Raises
    StuckChainError when max_attempts_per_step proposals in a row are
    rejected at a single step.
    """
    p = p0
    records: list[EnsembleRecord] = []
    for p, rec in _iter_chain(g, p0, cfg, chain_id):
        records.append(rec)
    return p, records


@dataclass(frozen=True)
class EnsembleResult:
    mode: str
    plans: list[Partition]
    records: list[EnsembleRecord]

    def plan_rows(self) -> list[tuple[int, int, float, int, int]]:
        """(plan_index, cut_edges, pop_dev, seed, attempts_total) per plan."""
        per_plan = len(self.records) // len(self.plans) if self.plans else 0
        rows = []
        for i, plan in enumerate(self.plans):
            window = self.records[i * per_plan:(i + 1) * per_plan]
            rows.append(
                (
                    i,
                    len(plan.cut_edges),
                    window[-1].pop_dev if window else 0.0,
                    window[-1].seed_used if window else 0,
                    sum(r.attempts_used for r in window),
                )
            )
        return rows


def _run_indexed(args):
    g, p0, cfg, chain_id = args
    return run_chain(g, p0, cfg, chain_id)


def run_ensemble(
    g: Graph,
    p0: Partition,
    cfg: ChainConfig,
    count: int,
    mode: str = "independent",
    jobs: int = 1,
) -> EnsembleResult:
    """Generate `count` plans, either from independent chains or one long one.

    independent: chain i runs cfg.steps steps with the i-th derived seed.
    subsample: a single chain runs count * cfg.steps steps and the state is
    captured every cfg.steps steps, so count=1 matches run_chain exactly.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if cfg.steps < 1:
        raise ValueError("ensembles need steps >= 1 between captured plans")
    if mode == "independent":
        tasks = [(g, p0, cfg, i) for i in range(count)]
        if jobs > 1:
            with multiprocessing.Pool(jobs) as pool:
                results = pool.map(_run_indexed, tasks)
        else:
            results = [_run_indexed(t) for t in tasks]
        plans = [p for p, _ in results]
        records = [r for _, recs in results for r in recs]
        return EnsembleResult("independent", plans, records)
    if mode == "subsample":
        long_cfg = replace(cfg, steps=cfg.steps * count)
        plans = []
        records = []
        for p, rec in _iter_chain(g, p0, long_cfg, 0):
            records.append(rec)
            if rec.step_index % cfg.steps == 0:
                plans.append(p)
        return EnsembleResult("subsample", plans, records)
    raise ValueError(f"unknown ensemble mode {mode!r}")


RECORDS_HEADER = "chain_id,step_index,cut_edges,pop_dev,seed,attempts"


def records_to_csv(records) -> str:
    """Fixed-format CSV for per-step records; stable across re-runs."""
    lines = [RECORDS_HEADER]
    for r in records:
        lines.append(
            f"{r.chain_id},{r.step_index},{r.cut_edge_count},"
            f"{r.pop_dev!r},{r.seed_used},{r.attempts_used}"
        )
    return "\n".join(lines) + "\n"
