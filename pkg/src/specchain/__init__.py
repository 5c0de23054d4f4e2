"""Spectral recombination Markov chains over vertex-weighted graphs."""

__version__ = "0.1.0"

from .chain import (
    ALGORITHMS,
    ChainConfig,
    EnsembleRecord,
    EnsembleResult,
    check_constraints,
    derive_seed,
    records_to_csv,
    run_chain,
    run_ensemble,
)
from .errors import (
    AssignmentFormatError,
    GraphFormatError,
    SolverError,
    StuckChainError,
)
from .graph import (
    Graph,
    Partition,
    induced_subgraph,
    is_connected,
    is_connected_partition,
    make_grid,
    verify_partition,
)
from .io import (
    graph_from_document,
    graph_to_document,
    load_graph,
    load_partition,
    partition_from_document,
    partition_to_document,
    save_graph,
    save_partition,
)
from .metrics import PlanMetrics, cut_edges, plan_metrics, pop_dev
from .proposals import (
    Diagnostics,
    Proposal,
    ProposalStatus,
    balspecrecom_step,
    select_merge,
    specrecom_step,
    treerecom_step,
    wilson_spanning_tree,
)
from .spectral import (
    FiedlerResult,
    LaplacianView,
    fiedler,
    laplacian,
    sign_split,
    spectral_embedding,
    threshold_split,
)
from .speckmeans import speckmeans

__all__ = [
    "ALGORITHMS",
    "AssignmentFormatError",
    "ChainConfig",
    "Diagnostics",
    "EnsembleRecord",
    "EnsembleResult",
    "FiedlerResult",
    "Graph",
    "GraphFormatError",
    "LaplacianView",
    "Partition",
    "PlanMetrics",
    "Proposal",
    "ProposalStatus",
    "SolverError",
    "StuckChainError",
    "balspecrecom_step",
    "check_constraints",
    "cut_edges",
    "derive_seed",
    "fiedler",
    "graph_from_document",
    "graph_to_document",
    "induced_subgraph",
    "is_connected",
    "is_connected_partition",
    "laplacian",
    "load_graph",
    "load_partition",
    "make_grid",
    "partition_from_document",
    "partition_to_document",
    "plan_metrics",
    "pop_dev",
    "records_to_csv",
    "run_chain",
    "run_ensemble",
    "save_graph",
    "save_partition",
    "select_merge",
    "sign_split",
    "speckmeans",
    "specrecom_step",
    "spectral_embedding",
    "threshold_split",
    "treerecom_step",
    "verify_partition",
    "wilson_spanning_tree",
]
