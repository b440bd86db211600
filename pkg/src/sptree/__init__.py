"""Superposition tree reconstruction for symbolic regression.

Arity-constrained spanning trees, primal-dual Steiner forest and
prize-collecting Steiner tree solvers, exact enumeration oracles and a
noise-robustness benchmark.
"""
from .graph import (
    AritySpec,
    PrimitiveSpec,
    StructureError,
    SuperpositionMatrix,
    SuperpositionTree,
    WeightedGraph,
    check_feasible,
    normalize,
    worked_example,
    tree_equal,
)
from .forest import CutFunction, ForestSolution, approximation_factor, gw_solve, steiner_cut_fn
from .pcst import PcstSolution, kmst_via_pcst, pcst_solve
from .reconstruct import Algorithm, greedy_traverse, kmst_reconstruct, prims_reconstruct, reconstruct
from .oracle import SizeBoundError, exact_forest, exact_pcst, exact_superposition
from .bench import ExperimentConfig, QualityReport, add_noise, generate_instance, run_experiment

__version__ = "0.1.0"
