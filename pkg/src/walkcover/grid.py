"""Ring and 8-neighbour torus topologies with row-major node numbering."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError


class Kind(str, Enum):
    RING = "ring"
    TORUS8 = "torus8"


# (drow, dcol) per direction index, counter-clockwise from east; north is -row.
TORUS8_OFFSETS = (
    (0, 1),    # 0 east
    (-1, 1),   # 1 northeast
    (-1, 0),   # 2 north
    (-1, -1),  # 3 northwest
    (0, -1),   # 4 west
    (1, -1),   # 5 southwest
    (1, 0),    # 6 south
    (1, 1),    # 7 southeast
)
RING_OFFSETS = ((0, 1), (0, -1))

TORUS8_NAMES = ("east", "northeast", "north", "northwest",
                "west", "southwest", "south", "southeast")
RING_NAMES = ("east", "west")

EAST = 0


@dataclass(frozen=True)
class TorusGrid:
    kind: Kind
    rows: int
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.RING:
            if self.rows != 1:
                raise DomainError(f"ring must have rows=1, got {self.rows}")
            if self.cols < 3:
                raise DomainError(f"ring needs at least 3 nodes, got {self.cols}")
        elif self.rows < 3 or self.cols < 3:
            raise DomainError(
                f"torus8 needs rows, cols >= 3, got {self.rows}x{self.cols}")

    @classmethod
    def ring(cls, n: int) -> TorusGrid:
        return cls(Kind.RING, 1, n)

    @classmethod
    def torus(cls, rows: int, cols: int | None = None) -> TorusGrid:
        return cls(Kind.TORUS8, rows, rows if cols is None else cols)

    @property
    def N(self) -> int:
        return self.rows * self.cols

    @property
    def degree(self) -> int:
        return 2 if self.kind is Kind.RING else 8

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        return RING_OFFSETS if self.kind is Kind.RING else TORUS8_OFFSETS

    @property
    def direction_names(self) -> tuple[str, ...]:
        return RING_NAMES if self.kind is Kind.RING else TORUS8_NAMES

    def center(self) -> int:
        return node_index(self, self.rows // 2, self.cols // 2)

    def __str__(self) -> str:
        if self.kind is Kind.RING:
            return f"ring{self.cols}"
        return f"{self.rows}x{self.cols}"


def node_index(grid: TorusGrid, row: int, col: int) -> int:
    if not (0 <= row < grid.rows and 0 <= col < grid.cols):
        raise DomainError(f"({row}, {col}) outside {grid.rows}x{grid.cols} grid")
    return row * grid.cols + col


def check_node(grid: TorusGrid, node: int) -> int:
    if not 0 <= node < grid.N:
        raise DomainError(f"node {node} outside [0, {grid.N})")
    return int(node)


def check_direction(grid: TorusGrid, d: int) -> int:
    if not 0 <= d < grid.degree:
        raise DomainError(f"direction {d} outside [0, {grid.degree})")
    return int(d)


def direction_angle(grid: TorusGrid, d: int) -> float:
    check_direction(grid, d)
    return d * 2 * math.pi / grid.degree


def opposite(grid: TorusGrid, d: int) -> int:
    return (check_direction(grid, d) + grid.degree // 2) % grid.degree


def turn(grid: TorusGrid, d: int, k: int) -> int:
    """Rotate heading `d` by `k` direction steps (positive = counter-clockwise)."""
    return (check_direction(grid, d) + k) % grid.degree


def parse_direction(grid: TorusGrid, token: str | int) -> int:
    if isinstance(token, int) or str(token).isdigit():
        return check_direction(grid, int(token))
    try:
        return grid.direction_names.index(str(token).lower())
    except ValueError:
        raise DomainError(
            f"unknown direction {token!r}; expected one of {grid.direction_names}"
        ) from None


def neighbor(grid: TorusGrid, node: int, d: int) -> int:
    check_node(grid, node)
    dr, dc = grid.offsets[check_direction(grid, d)]
    row, col = divmod(node, grid.cols)
    return ((row + dr) % grid.rows) * grid.cols + (col + dc) % grid.cols


def neighbor_table(grid: TorusGrid) -> np.ndarray:
    """Array of shape (N, degree): entry [i, d] is the node one step from i in direction d."""
    rows, cols = np.divmod(np.arange(grid.N), grid.cols)
    out = np.empty((grid.N, grid.degree), dtype=np.int64)
    for d, (dr, dc) in enumerate(grid.offsets):
        out[:, d] = ((rows + dr) % grid.rows) * grid.cols + (cols + dc) % grid.cols
    return out


def neighbors(grid: TorusGrid, node: int) -> list[int]:
    return [neighbor(grid, node, d) for d in range(grid.degree)]
