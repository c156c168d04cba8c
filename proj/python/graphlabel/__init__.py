"""Node classification on partially labeled graphs.

Thin re-export of the compiled core: build a graph (directly, from point
coordinates, or synthetically), seed it with known labels, and run one of
the classification methods.
"""

from graphlabel._core import (
    Graph,
    LabelMatrix,
    build_graph,
    classify,
    epsilon_graph,
    exp_graph,
    generate_planted,
    holdout_evaluate,
    knn_graph,
    run_rounds,
    seed_matrix,
)

__all__ = [
    "Graph",
    "LabelMatrix",
    "build_graph",
    "classify",
    "epsilon_graph",
    "exp_graph",
    "generate_planted",
    "holdout_evaluate",
    "knn_graph",
    "run_rounds",
    "seed_matrix",
]
