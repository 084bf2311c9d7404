"""Sparse transition matrices, the absorbing-start transformation, and state evolution."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TextIO

import numpy as np

from . import kernels
from .errors import DomainError
from .grid import TorusGrid, check_direction, check_node, neighbor_table
from .movement import MovementModel, check_model, heading_table


class Scheme(str, Enum):
    PLAIN = "plain"
    DIRECTION_AUGMENTED = "direction-augmented"


@dataclass(frozen=True)
class StateIndexing:
    scheme: Scheme
    N: int
    degree: int

    @classmethod
    def for_model(cls, grid: TorusGrid, model: MovementModel) -> StateIndexing:
        scheme = Scheme.DIRECTION_AUGMENTED if model.directional else Scheme.PLAIN
        return cls(scheme, grid.N, grid.degree)

    @property
    def dim(self) -> int:
        return self.N if self.scheme is Scheme.PLAIN else self.degree * self.N

    def state(self, node: int, d: int | None = None) -> int:
        if self.scheme is Scheme.PLAIN:
            return node
        return d * self.N + node

    def node_states(self, node: int) -> np.ndarray:
        """All chain states that sit on `node` (one per heading when augmented)."""
        if self.scheme is Scheme.PLAIN:
            return np.array([node], dtype=np.int64)
        return np.arange(self.degree, dtype=np.int64) * self.N + node


@dataclass(frozen=True, eq=False)
class SparseStochasticMatrix:
    """Row-compressed matrix: row i holds columns indices[indptr[i]:indptr[i+1]]."""

    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.indptr) - 1

    @property
    def nnz(self) -> int:
        return len(self.data)

    def row(self, i: int) -> list[tuple[int, float]]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return [(int(j), float(x)) for j, x in zip(self.indices[lo:hi], self.data[lo:hi])]

    def row_nnz(self) -> np.ndarray:
        return np.diff(self.indptr)

    def row_sums(self) -> np.ndarray:
        return np.add.reduceat(self.data, self.indptr[:-1]) if self.nnz else np.zeros(self.dim)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        rows = np.repeat(np.arange(self.dim), self.row_nnz())
        out[rows, self.indices] = self.data
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseStochasticMatrix):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.data, other.data))

    def dump(self, out: TextIO) -> None:
        """Write one `row col prob` line per nonzero, rows ascending."""
        for i in range(self.dim):
            for j, x in self.row(i):
                out.write(f"{i} {j} {x:.12g}\n")

    @classmethod
    def from_rows(cls, rows: list[list[tuple[int, float]]]) -> SparseStochasticMatrix:
        indptr = np.zeros(len(rows) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(r) for r in rows])
        indices = np.array([j for r in rows for j, _ in r], dtype=np.int64)
        data = np.array([x for r in rows for _, x in r], dtype=np.float64)
        return cls(indptr, indices, data)


@dataclass(frozen=True, eq=False)
class StateDistribution:
    entries: np.ndarray
    step: int = 0

    def __len__(self) -> int:
        return len(self.entries)


def build_transition_matrix(grid: TorusGrid, model: MovementModel) -> SparseStochasticMatrix:
    check_model(model, grid)
    nbr = neighbor_table(grid)
    N, n = grid.N, grid.degree
    if not model.directional:
        rows = [sorted((int(j), 1.0 / n) for j in nbr[i]) for i in range(N)]
        return SparseStochasticMatrix.from_rows(rows)

    q = heading_table(model, grid)
    rows = []
    for d in range(n):
        for i in range(N):
            row = [(d2 * N + int(nbr[i, d2]), q[d, d2]) for d2 in range(n) if q[d, d2] > 0]
            rows.append(sorted(row))
    return SparseStochasticMatrix.from_rows(rows)


def absorb_start(M: SparseStochasticMatrix, indexing: StateIndexing, s: int) -> SparseStochasticMatrix:
    if M.dim != indexing.dim:
        raise DomainError(f"matrix dim {M.dim} does not match indexing dim {indexing.dim}")
    if not 0 <= s < indexing.N:
        raise DomainError(f"start node {s} outside [0, {indexing.N})")
    absorbing = set(indexing.node_states(s).tolist())
    rows = [[(i, 1.0)] if i in absorbing else M.row(i) for i in range(M.dim)]
    return SparseStochasticMatrix.from_rows(rows)


def initial_distribution(M: SparseStochasticMatrix, indexing: StateIndexing, s: int,
                         d0: int | None = None) -> StateDistribution:
    """One step of the unabsorbed chain from a point mass at `s` (heading `d0` if augmented)."""
    if not 0 <= s < indexing.N:
        raise DomainError(f"start node {s} outside [0, {indexing.N})")
    if indexing.scheme is Scheme.PLAIN:
        if d0 is not None:
            raise DomainError("initial direction given for a plain (uniform) chain")
    elif d0 is None:
        raise DomainError("direction-augmented chain needs an initial direction")
    elif not 0 <= d0 < indexing.degree:
        raise DomainError(f"direction {d0} outside [0, {indexing.degree})")
    point = np.zeros(M.dim)
    point[indexing.state(s, d0)] = 1.0
    return StateDistribution(kernels.vecmat(M.indptr, M.indices, M.data, point), 0)


def step(v: StateDistribution, M: SparseStochasticMatrix) -> StateDistribution:
    if len(v) != M.dim:
        raise DomainError(f"distribution length {len(v)} does not match matrix dim {M.dim}")
    return StateDistribution(kernels.vecmat(M.indptr, M.indices, M.data, v.entries), v.step + 1)


def start_mass(v: StateDistribution, indexing: StateIndexing, s: int) -> float:
    if not 0 <= s < indexing.N:
        raise DomainError(f"start node {s} outside [0, {indexing.N})")
    entries = v.entries
    total = 0.0
    for state in indexing.node_states(s):
        total += entries[state]
    return float(total)


@dataclass(frozen=True)
class AbsorbingChain:
    """Everything needed to iterate one coverage computation."""

    indexing: StateIndexing
    start: int
    direction: int | None
    matrix: SparseStochasticMatrix
    v0: StateDistribution


def absorbing_chain(grid: TorusGrid, model: MovementModel, s: int | None = None,
                    d0: int | None = None) -> AbsorbingChain:
    """Build M, the initial distribution and the absorbed M' for one start state.

    Defaults: centre node, and heading 0 (east) for directional models.
    """
    s = grid.center() if s is None else check_node(grid, s)
    indexing = StateIndexing.for_model(grid, model)
    if model.directional:
        d0 = 0 if d0 is None else check_direction(grid, d0)
    elif d0 is not None:
        raise DomainError("uniform walk takes no initial direction")
    M = build_transition_matrix(grid, model)
    v0 = initial_distribution(M, indexing, s, d0)
    return AbsorbingChain(indexing, s, d0, absorb_start(M, indexing, s), v0)
