"""Heading-selection rules for the uniform, biased and biased-with-random-steps walks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .grid import Kind, TorusGrid, check_direction


class ModelKind(str, Enum):
    UNIFORM = "uniform"
    BIASED = "biased"
    BIASED_RANDOM = "biased-random"


@dataclass(frozen=True)
class MovementModel:
    kind: ModelKind
    p: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        for name in ("p", "r"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name}={value} outside [0, 1]")

    @classmethod
    def uniform(cls) -> MovementModel:
        return cls(ModelKind.UNIFORM)

    @classmethod
    def biased(cls, p: float) -> MovementModel:
        return cls(ModelKind.BIASED, p=p)

    @classmethod
    def biased_random(cls, p: float, r: float) -> MovementModel:
        return cls(ModelKind.BIASED_RANDOM, p=p, r=r)

    @property
    def directional(self) -> bool:
        """True when the chain state has to carry the current heading."""
        return self.kind is not ModelKind.UNIFORM

    def label(self) -> str:
        if self.kind is ModelKind.UNIFORM:
            return "uniform"
        if self.kind is ModelKind.BIASED:
            return f"biased(p={self.p:g})"
        return f"biased-random(p={self.p:g}, r={self.r:g})"


def check_model(model: MovementModel, grid: TorusGrid) -> None:
    if model.kind is ModelKind.BIASED_RANDOM and grid.kind is Kind.RING:
        raise DomainError("random-step model is only defined on the 8-neighbour torus")


def heading_distribution(model: MovementModel, grid: TorusGrid, current: int) -> np.ndarray:
    """Probabilities of each next heading given the current heading `current`."""
    check_model(model, grid)
    check_direction(grid, current)
    n = grid.degree
    if model.kind is ModelKind.UNIFORM:
        return np.full(n, 1.0 / n)

    q = np.zeros(n)
    if grid.kind is Kind.RING:
        # Both side headings are the reverse heading on a ring.
        q[current] = model.p
        q[(current + 1) % n] += 1.0 - model.p
        return q

    side = (1.0 - model.p) / 2
    q[current] = model.p
    q[(current + 1) % n] = side
    q[(current - 1) % n] = side
    if model.kind is ModelKind.BIASED_RANDOM:
        q = model.r / n + (1.0 - model.r) * q
    return q


def heading_table(model: MovementModel, grid: TorusGrid) -> np.ndarray:
    """(degree, degree) matrix whose row d is heading_distribution(model, grid, d)."""
    return np.array([heading_distribution(model, grid, d) for d in range(grid.degree)])
