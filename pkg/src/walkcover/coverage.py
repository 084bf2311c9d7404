"""Expected coverage traces, coverage times, bias sweeps and the cross-over bias."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError
from .grid import TorusGrid
from .markov import absorbing_chain
from .movement import MovementModel

DEFAULT_TARGET = 0.99


def default_max_steps(grid: TorusGrid) -> int:
    return 200 * grid.N * grid.degree


@dataclass(frozen=True, eq=False)
class CoverageTrace:
    """gamma[k] is the expected number of new nodes at step k; C is its running sum.

    start_mass[k] (k >= 1) is the absorbed start mass that produced gamma[k];
    start_mass[0] is NaN because step 0 only covers the start node.
    """

    start_mass: np.ndarray
    gamma: np.ndarray
    C: np.ndarray
    N: int
    truncated: bool
    stalled: bool = False

    def __len__(self) -> int:
        return len(self.C)


@dataclass(frozen=True, eq=False)
class CoverageResult:
    coverage_time: int | None
    target_fraction: float
    trace: CoverageTrace
    model: MovementModel
    grid: TorusGrid
    start: int
    direction: int | None

    @property
    def truncated(self) -> bool:
        return self.trace.truncated


def check_target(target_fraction: float) -> None:
    if not 0.0 < target_fraction <= 1.0:
        raise DomainError(f"target fraction {target_fraction} outside (0, 1]")


def coverage_trace(grid: TorusGrid, model: MovementModel, s: int | None = None,
                   d0: int | None = None, target_fraction: float = DEFAULT_TARGET,
                   max_steps: int | None = None) -> CoverageResult:
    check_target(target_fraction)
    if max_steps is None:
        max_steps = default_max_steps(grid)
    if max_steps < 1:
        raise DomainError(f"max_steps must be >= 1, got {max_steps}")

    chain = absorbing_chain(grid, model, s, d0)
    need = target_fraction * grid.N
    if 1.0 >= need:
        masses = np.empty(0)
        status = kernels.REACHED
    else:
        M = chain.matrix
        masses, status = kernels.absorbed_start_mass(
            M.indptr, M.indices, M.data, chain.v0.entries,
            chain.indexing.node_states(chain.start), need, max_steps)

    gamma = np.concatenate(([1.0], 1.0 - masses))
    trace = CoverageTrace(
        start_mass=np.concatenate(([np.nan], masses)),
        gamma=gamma,
        C=np.add.accumulate(gamma),
        N=grid.N,
        truncated=status != kernels.REACHED,
        stalled=status == kernels.STUCK,
    )
    return CoverageResult(
        coverage_time=len(masses) if status == kernels.REACHED else None,
        target_fraction=target_fraction,
        trace=trace,
        model=model,
        grid=grid,
        start=chain.start,
        direction=chain.direction,
    )


def coverage_time(grid: TorusGrid, model: MovementModel, **kwargs) -> int | None:
    return coverage_trace(grid, model, **kwargs).coverage_time


def bias_model(p: float, r: float) -> MovementModel:
    return MovementModel.biased(p) if r == 0 else MovementModel.biased_random(p, r)


@dataclass(frozen=True)
class SweepResult:
    points: list[tuple[float, int | None]]
    baseline: int | None
    r: float
    grid: TorusGrid
    target_fraction: float

    @property
    def biases(self) -> list[float]:
        return [p for p, _ in self.points]

    @property
    def times(self) -> list[int | None]:
        return [t for _, t in self.points]


def sweep_bias(grid: TorusGrid, biases, r: float = 0.0, target_fraction: float = DEFAULT_TARGET,
               max_steps: int | None = None, s: int | None = None, d0: int | None = None,
               workers: int | None = None) -> SweepResult:
    biases = [float(p) for p in biases]
    if not biases:
        raise DomainError("bias list is empty")
    models = [bias_model(p, r) for p in biases]  # validates every p before any work
    kw = dict(s=s, target_fraction=target_fraction, max_steps=max_steps)

    def one(model):
        return coverage_trace(grid, model, d0=d0, **kw).coverage_time

    baseline = coverage_trace(grid, MovementModel.uniform(), **kw).coverage_time
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            times = list(pool.map(one, models))
    else:
        times = [one(m) for m in models]
    return SweepResult(list(zip(biases, times)), baseline, r, grid, target_fraction)


@dataclass
class CrossoverResult:
    p_star: float | None
    bracket: tuple[float, float] | None
    baseline: int | None
    r: float
    ambiguous: bool = False
    iterates: list[tuple[float, int | None]] = field(default_factory=list)
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.p_star is not None


def crossover_bias(grid: TorusGrid, r: float = 0.0, target_fraction: float = DEFAULT_TARGET,
                   max_steps: int | None = None, tolerance: float = 0.005,
                   lo: float = 0.0, hi: float = 0.95, s: int | None = None,
                   d0: int | None = None) -> CrossoverResult:
    """Bias at which the biased walk's coverage time meets the uniform baseline.

    Bisects on the sign of coverage_time(p) - baseline. A truncated (never
    covering) biased walk counts as slower than the baseline.
    """
    if tolerance <= 0:
        raise DomainError(f"tolerance must be positive, got {tolerance}")
    if not 0.0 <= lo < hi <= 1.0:
        raise DomainError(f"bad bias range [{lo}, {hi}]")
    kw = dict(s=s, target_fraction=target_fraction, max_steps=max_steps)
    baseline = coverage_trace(grid, MovementModel.uniform(), **kw).coverage_time
    result = CrossoverResult(None, None, baseline, r)
    if baseline is None:
        result.reason = "uniform baseline did not reach the target"
        return result

    cache: dict[float, int | None] = {}

    def sign(p: float) -> int:
        if p not in cache:
            cache[p] = coverage_trace(grid, bias_model(p, r), d0=d0, **kw).coverage_time
            result.iterates.append((p, cache[p]))
        t = cache[p]
        return 1 if t is None else int(np.sign(t - baseline))

    if not (sign(lo) < 0 < sign(hi)):
        result.reason = "no cross-over in range"
        return result

    def edge(a: float, b: float, strict: bool) -> tuple[float, float]:
        # Shrink [a, b] onto the point where sign leaves (< 0) or (<= 0 when strict).
        while b - a > tolerance:
            mid = (a + b) / 2
            below = sign(mid) <= 0 if strict else sign(mid) < 0
            a, b = (mid, b) if below else (a, mid)
        return a, b

    a, b = lo, hi
    while b - a > tolerance:
        mid = (a + b) / 2
        sm = sign(mid)
        if sm < 0:
            a = mid
        elif sm > 0:
            b = mid
        else:
            # Coverage time equals the baseline on a plateau; take its centre.
            la, lb = edge(a, mid, strict=False)
            ua, ub = edge(mid, b, strict=True)
            result.bracket = (la, ub)
            result.p_star = ((la + lb) / 2 + (ua + ub) / 2) / 2
            result.ambiguous = _non_monotone(sign, la, ub)
            return result

    result.bracket = (a, b)
    result.p_star = (a + b) / 2
    result.ambiguous = _non_monotone(sign, a, b)
    return result


def _non_monotone(sign, a: float, b: float, probes: int = 3) -> bool:
    ps = [a + (b - a) * i / (probes + 1) for i in range(probes + 2)]
    signs = [sign(p) for p in ps]
    return any(x > y for x, y in zip(signs, signs[1:]))
