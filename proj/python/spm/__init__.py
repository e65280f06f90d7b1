"""Overlapping community detection in signed networks."""

from ._spm import (
    DatasetUnavailable,
    FitFailure,
    FitResult,
    GraphError,
    PreconditionError,
    SignedGraph,
    dataset,
    dataset_available,
    dataset_names,
    error_criterion,
    experiment_names,
    fit,
    generate,
    load_edge_list,
    node_accuracy,
    nmi,
    overlap_nodes,
    read_graph,
    run_experiment,
    select_k,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
