"""Expected coverage times of random and directionally biased walks on torus networks."""

from .coverage import (
    CoverageResult,
    CoverageTrace,
    CrossoverResult,
    SweepResult,
    coverage_time,
    coverage_trace,
    crossover_bias,
    sweep_bias,
)
from .errors import DomainError
from .grid import TorusGrid, neighbor, node_index
from .markov import (
    SparseStochasticMatrix,
    StateDistribution,
    StateIndexing,
    absorb_start,
    build_transition_matrix,
    initial_distribution,
    start_mass,
    step,
)
from .movement import MovementModel, heading_distribution

__all__ = [
    "CoverageResult", "CoverageTrace", "CrossoverResult", "DomainError", "MovementModel",
    "SparseStochasticMatrix", "StateDistribution", "StateIndexing", "SweepResult", "TorusGrid",
    "absorb_start", "build_transition_matrix", "coverage_time", "coverage_trace",
    "crossover_bias", "heading_distribution", "initial_distribution", "neighbor", "node_index",
    "start_mass", "step", "sweep_bias",
]
