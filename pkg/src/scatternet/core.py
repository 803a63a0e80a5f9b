"""Domain types and geometric primitives shared by every deployment mode.

All types are immutable after construction and all operations are pure
functions, so they can be shared freely between concurrent workers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Union

import numpy as np

if TYPE_CHECKING:
    from .planned import DeploymentPlan

__all__ = [
    "ConfigError",
    "NetworkConfig",
    "LayerSet",
    "Annulus",
    "Disk",
    "Rect",
    "Shape",
    "Sector",
    "Deployment",
    "annulus_area",
    "sector_area",
    "sector_density",
    "validate_config",
]

MAX_UINT64 = 2**64 - 1


class ConfigError(ValueError):
    """A deployment configuration violates one or more of its invariants.

    Carries every violated constraint in ``violations``, not just the first
    one found, so callers can report the full picture at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class NetworkConfig:
    """Designer inputs for an automatic layered deployment.

    radius      extent of the circular region (arbitrary length unit)
    max_layers  upper bound on the randomly sampled layer count
    nodes       total number of nodes to place
    seed        64-bit unsigned RNG seed
    """

    radius: float
    max_layers: int
    nodes: int
    seed: int = 0


def validate_config(config: NetworkConfig) -> NetworkConfig:
    """Return ``config`` unchanged if every invariant holds.

    Raises :class:`ConfigError` listing all violated invariants otherwise.
    ``nodes >= max_layers`` is required so that even the largest possible
    layer count leaves at least one node for every outer layer.
    """
    violations = []
    if not (config.radius > 0 and math.isfinite(config.radius)):
        violations.append(f"radius must be a positive finite number, got {config.radius}")
    if config.max_layers < 2:
        violations.append(f"max_layers must be at least 2, got {config.max_layers}")
    if config.nodes < config.max_layers:
        violations.append(
            f"nodes must be at least max_layers ({config.max_layers}) so every "
            f"layer receives at least one node, got {config.nodes}"
        )
    if not (0 <= config.seed <= MAX_UINT64):
        violations.append(f"seed must fit in an unsigned 64-bit integer, got {config.seed}")
    if violations:
        raise ConfigError(violations)
    return config


@dataclass(frozen=True)
class LayerSet:
    """Sorted radial boundaries splitting a disk into concentric annuli.

    ``boundaries`` holds the layer_count - 1 interior radii in ascending
    order; layer 1 spans [0, boundaries[0]] and the outermost layer ends at
    ``radius``.  Equal adjacent boundaries are tolerated (they can only arise
    from a floating-point collision between independent draws) and denote a
    zero-width annulus whose nodes all sit at that radius.
    """

    radius: float
    boundaries: tuple

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")
        if len(self.boundaries) < 1:
            raise ValueError("at least one interior boundary is required (two layers)")
        prev = 0.0
        for b in self.boundaries:
            if not (0.0 <= b < self.radius):
                raise ValueError(f"boundary {b} outside [0, {self.radius})")
            if b < prev:
                raise ValueError("boundaries must be ascending")
            prev = b

    @property
    def layer_count(self) -> int:
        return len(self.boundaries) + 1

    @property
    def widths(self) -> tuple:
        """Radial width of each layer, innermost first."""
        edges = (0.0,) + tuple(self.boundaries) + (self.radius,)
        return tuple(edges[i + 1] - edges[i] for i in range(len(edges) - 1))

    def bounds(self, index: int):
        """Inner and outer radius of layer ``index`` (1-based)."""
        if not 1 <= index <= self.layer_count:
            raise IndexError(f"layer index {index} outside 1..{self.layer_count}")
        inner = 0.0 if index == 1 else self.boundaries[index - 2]
        outer = self.radius if index == self.layer_count else self.boundaries[index - 1]
        return inner, outer

    def layer_of(self, r):
        """1-based layer index for radius ``r`` (scalar or array).

        Membership intervals are half-open [inner, outer), closing to
        [inner, radius] for the outermost layer.
        """
        edges = np.asarray(self.boundaries, dtype=np.float64)
        return np.searchsorted(edges, r, side="right") + 1


@dataclass(frozen=True)
class Annulus:
    """Origin-centered annulus with inner radius ``inner`` and outer ``outer``."""

    inner: float
    outer: float

    def __post_init__(self):
        if not (0.0 <= self.inner < self.outer):
            raise ValueError(f"annulus requires 0 <= inner < outer, got ({self.inner}, {self.outer})")

    def area(self) -> float:
        return annulus_area(self.inner, self.outer)

    def contains(self, x, y):
        r2 = np.asarray(x) ** 2 + np.asarray(y) ** 2
        return (r2 >= self.inner**2) & (r2 <= self.outer**2)


@dataclass(frozen=True)
class Disk:
    """Origin-centered disk of radius ``radius``."""

    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"disk radius must be positive, got {self.radius}")

    def area(self) -> float:
        return math.pi * self.radius**2

    def contains(self, x, y):
        return np.asarray(x) ** 2 + np.asarray(y) ** 2 <= self.radius**2


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle spanning [x0, x1] x [y0, y1]."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError(
                f"rect requires x0 < x1 and y0 < y1, got "
                f"({self.x0}, {self.y0}, {self.x1}, {self.y1})"
            )

    def area(self) -> float:
        return (self.x1 - self.x0) * (self.y1 - self.y0)

    def contains(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        return (x >= self.x0) & (x <= self.x1) & (y >= self.y0) & (y <= self.y1)


Shape = Union[Annulus, Disk, Rect]


@dataclass(frozen=True)
class Sector:
    """A sub-region of the deployment area together with its node quota."""

    shape: Shape
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"sector node count must be at least 1, got {self.count}")


def annulus_area(inner: float, outer: float) -> float:
    """Area of the origin-centered annulus between ``inner`` and ``outer``."""
    if not (0.0 <= inner < outer):
        raise ValueError(f"annulus_area requires 0 <= inner < outer, got ({inner}, {outer})")
    return math.pi * (outer * outer - inner * inner)


def sector_area(sector: Sector) -> float:
    """Surface area of a sector's shape."""
    return sector.shape.area()


def sector_density(sector: Sector) -> float:
    """Areal node density of a sector: count divided by area."""
    return sector.count / sector_area(sector)


@dataclass(frozen=True)
class Deployment:
    """A generated point set with 1-based per-point sector tags.

    Exactly one of ``config`` (automatic mode) and ``plan`` (planned mode) is
    set; automatic deployments also carry the sampled ``layer_set`` and the
    inner/outer node quotas.  ``sector`` may legitimately be shorter than the
    coordinate arrays only for malformed external inputs, which downstream
    tallies reject.
    """

    x: np.ndarray
    y: np.ndarray
    sector: np.ndarray
    config: Optional[NetworkConfig] = None
    plan: Optional["DeploymentPlan"] = None
    layer_set: Optional[LayerSet] = None
    inner_count: Optional[int] = None
    outer_count: Optional[int] = None

    def __post_init__(self):
        if self.x.shape != self.y.shape:
            raise ValueError("x and y must have identical shapes")

    def __len__(self) -> int:
        return int(self.x.size)
