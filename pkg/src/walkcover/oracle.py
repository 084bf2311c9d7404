"""Monte-Carlo agent simulation used to cross-check the Markov-chain results.

Run ``i`` of a configuration draws its randomness from its own stream,
``SeedSequence(seed, spawn_key=(i,))``, one uniform per step, so results do
not depend on batching or backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .coverage import DEFAULT_TARGET, coverage_trace
from .errors import DomainError
from .grid import TorusGrid, check_direction, check_node, neighbor, neighbor_table
from .movement import MovementModel, check_model, heading_table

BATCH = 1024


@dataclass(frozen=True)
class SimulationConfig:
    grid: TorusGrid
    model: MovementModel
    runs: int
    max_steps: int
    seed: int = 0
    start: int | None = None
    direction: int | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise DomainError(f"runs must be >= 1, got {self.runs}")
        if self.max_steps < 1:
            raise DomainError(f"max_steps must be >= 1, got {self.max_steps}")
        check_model(self.model, self.grid)

    @property
    def s(self) -> int:
        return self.grid.center() if self.start is None else check_node(self.grid, self.start)

    @property
    def d0(self) -> int:
        return 0 if self.direction is None else check_direction(self.grid, self.direction)


@dataclass(frozen=True, eq=False)
class EmpiricalTrace:
    """returned_by_step[k]: fraction of runs back at the start within k + 1 steps.

    mean_distinct[k] and distinct_sd[k]: distinct nodes visited after k steps.
    coverage_times[i]: first step at which run i reached the target, -1 if never.
    """

    returned_by_step: np.ndarray
    mean_distinct: np.ndarray
    distinct_sd: np.ndarray
    coverage_times: np.ndarray
    runs: int

    def __eq__(self, other):
        if not isinstance(other, EmpiricalTrace):
            return NotImplemented
        return self.runs == other.runs and all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in ("returned_by_step", "mean_distinct", "distinct_sd", "coverage_times"))

    @property
    def mean_coverage_time(self) -> float | None:
        done = self.coverage_times[self.coverage_times >= 0]
        return float(done.mean()) if len(done) == len(self.coverage_times) else None


def run_stream(seed: int, run: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(run,))))


def sampling_table(model: MovementModel, grid: TorusGrid) -> np.ndarray:
    """Cumulative heading probabilities; trailing zero-mass headings are unreachable."""
    q = heading_table(model, grid)
    cdf = np.cumsum(q, axis=1)
    for d in range(grid.degree):
        last = np.flatnonzero(q[d] > 0)[-1]
        cdf[d, last:] = np.inf
    return cdf


def simulate_run(grid: TorusGrid, model: MovementModel, s: int, d0: int,
                 rng: np.random.Generator, max_steps: int | None = None) -> Iterator[int]:
    """Yield the visited nodes, starting with `s`; endless unless `max_steps` is given."""
    check_model(model, grid)
    cdf = sampling_table(model, grid)
    node, heading = check_node(grid, s), check_direction(grid, d0)
    yield node
    k = 0
    while max_steps is None or k < max_steps:
        heading = int(np.argmax(rng.random() < cdf[heading]))
        node = neighbor(grid, node, heading)
        yield node
        k += 1


def empirical_trace(config: SimulationConfig, target_fraction: float = DEFAULT_TARGET) -> EmpiricalTrace:
    grid, steps = config.grid, config.max_steps
    nbr = neighbor_table(grid)
    cdf = sampling_table(config.model, grid)
    need = target_fraction * grid.N

    returned = np.zeros(steps, dtype=np.int64)
    dsum = np.zeros(steps + 1, dtype=np.int64)
    dsumsq = np.zeros(steps + 1, dtype=np.int64)
    cover = []
    for lo in range(0, config.runs, BATCH):
        hi = min(lo + BATCH, config.runs)
        uniforms = np.stack([run_stream(config.seed, i).random(steps) for i in range(lo, hi)])
        r, s1, s2, c = kernels.simulate_batch(nbr, cdf, config.s, config.d0, uniforms, need)
        returned += r
        dsum += s1
        dsumsq += s2
        cover.append(c)

    n = config.runs
    mean = dsum / n
    var = np.maximum(dsumsq / n - mean**2, 0.0) * (n / (n - 1) if n > 1 else 0.0)
    return EmpiricalTrace(
        returned_by_step=returned / n,
        mean_distinct=mean,
        distinct_sd=np.sqrt(var),
        coverage_times=np.concatenate(cover),
        runs=n,
    )


@dataclass(frozen=True)
class ComparisonRow:
    step: int
    macro_start_mass: float
    empirical_returned: float
    returned_z: float
    macro_C: float
    empirical_distinct: float
    distinct_z: float


@dataclass(frozen=True)
class ValidationReport:
    grid: TorusGrid
    model: MovementModel
    runs: int
    bands: float
    macro_coverage_time: int | None
    rows: list[ComparisonRow]

    @property
    def max_returned_z(self) -> float:
        return max((abs(r.returned_z) for r in self.rows if not math.isnan(r.returned_z)), default=0.0)

    @property
    def max_distinct_z(self) -> float:
        return max(abs(r.distinct_z) for r in self.rows)

    @property
    def passed(self) -> bool:
        return self.max_returned_z <= self.bands and self.max_distinct_z <= self.bands


def _z(diff: float, se: float, exact_tol: float) -> float:
    if se > 0:
        return diff / se
    return 0.0 if abs(diff) <= exact_tol else math.inf


def validate_against_macro(grid: TorusGrid, model: MovementModel, runs: int, seed: int = 0,
                           s: int | None = None, d0: int | None = None,
                           target_fraction: float = DEFAULT_TARGET, bands: float = 4.0,
                           max_steps: int | None = None) -> ValidationReport:
    """Compare macro start mass and C_k with their Monte-Carlo estimates, step by step.

    Steps run from 0 to the macro coverage time (or `max_steps` if truncated).
    Returns are scored with the binomial standard error at the macro probability,
    distinct counts with the empirical standard error of the mean.
    """
    macro = coverage_trace(grid, model, s=s, d0=d0, target_fraction=target_fraction,
                           max_steps=max_steps)
    K = len(macro.trace) - 1
    if K < 1:
        raise DomainError("target is met at step 0; nothing to compare")
    config = SimulationConfig(grid, model, runs, K, seed, macro.start,
                              macro.direction if model.directional else None)
    emp = empirical_trace(config, target_fraction)

    rows = []
    for k in range(K + 1):
        C = float(macro.trace.C[k])
        dz = _z(emp.mean_distinct[k] - C, emp.distinct_sd[k] / math.sqrt(runs), 1e-9)
        if k < K:
            m = float(macro.trace.start_mass[k + 1])
            e = float(emp.returned_by_step[k])
            rz = _z(e - m, math.sqrt(m * (1 - m) / runs), 1e-12)
        else:
            m = e = rz = math.nan
        rows.append(ComparisonRow(k, m, e, rz, C, float(emp.mean_distinct[k]), dz))
    return ValidationReport(grid, model, runs, bands, macro.coverage_time, rows)
