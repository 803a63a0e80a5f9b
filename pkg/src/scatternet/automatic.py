"""Automatic layered deployment over a disk.

One run resolves three nested sources of randomness in a pinned draw order:
the number of concentric layers, the sorted radii delimiting them, and the
polar position of every node inside its layer.  Nodes are split so the
innermost layer absorbs the division remainder and each outer layer gets an
equal quota; within a layer the radial transform r = sqrt(L1^2 + u * (L2^2 -
L1^2)) makes points uniform over the annulus area rather than over the
radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Deployment, LayerSet, NetworkConfig, validate_config
from .rng import discrete_uniform_via_threshold

__all__ = [
    "LayerPlan",
    "sample_layer_count",
    "split_nodes",
    "sample_layer_radii",
    "sample_point_in_annulus",
    "deploy_automatic",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LayerPlan:
    """Resolved randomness of a run before any node is placed."""

    layer_count: int
    inner_count: int
    outer_count: int
    layer_set: LayerSet

    def __post_init__(self):
        if self.layer_count < 2:
            raise ValueError(f"layer_count must be at least 2, got {self.layer_count}")
        if self.outer_count < 1 or self.inner_count < self.outer_count:
            raise ValueError(
                f"node quotas must satisfy inner_count >= outer_count >= 1, "
                f"got ({self.inner_count}, {self.outer_count})"
            )
        if self.layer_set.layer_count != self.layer_count:
            raise ValueError(
                f"layer_set has {self.layer_set.layer_count} layers, expected {self.layer_count}"
            )

    @property
    def total_nodes(self) -> int:
        return self.inner_count + (self.layer_count - 1) * self.outer_count


def sample_layer_count(max_layers: int, stream) -> int:
    """Draw the layer count, uniform on {2, ..., max_layers}.

    At least two layers are required for any density contrast to exist.
    """
    if max_layers < 2:
        raise ValueError(f"max_layers must be at least 2, got {max_layers}")
    return discrete_uniform_via_threshold(stream, max_layers)


def split_nodes(total: int, layers: int):
    """Split ``total`` nodes over ``layers`` layers.

    Every layer but the innermost receives ``floor(total / layers)`` nodes;
    the innermost absorbs the remainder, so
    ``inner + (layers - 1) * outer == total`` exactly.

    Returns ``(inner_count, outer_count)``.
    """
    if layers < 2:
        raise ValueError(f"layers must be at least 2, got {layers}")
    if total < layers:
        raise ValueError(
            f"total nodes ({total}) must be at least the layer count ({layers}) "
            f"so outer layers are not empty"
        )
    outer = total // layers
    inner = total - (layers - 1) * outer
    return inner, outer


def sample_layer_radii(radius: float, layers: int, stream) -> LayerSet:
    """Draw ``layers - 1`` radii uniform on [0, radius) and sort them ascending."""
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if layers < 2:
        raise ValueError(f"layers must be at least 2, got {layers}")
    draws = np.asarray(stream.uniform_block(layers - 1), dtype=np.float64) * radius
    draws.sort()
    return LayerSet(radius=radius, boundaries=tuple(float(r) for r in draws))


def sample_point_in_annulus(inner: float, outer: float, stream):
    """One point uniform over the annulus area between ``inner`` and ``outer``.

    Consumes two variates in a fixed order: the first sets the radius through
    the inverse of the area CDF, the second sets the angle.
    """
    if not (0.0 <= inner < outer):
        raise ValueError(f"annulus sampling requires 0 <= inner < outer, got ({inner}, {outer})")
    u_radial = stream.uniform01()
    u_angular = stream.uniform01()
    r = math.sqrt(inner * inner + u_radial * (outer * outer - inner * inner))
    theta = TWO_PI * u_angular
    return r * math.cos(theta), r * math.sin(theta)


_POINT_CHUNK = 1 << 14


def _fill_annulus_points(x, y, inner: float, outer: float, stream):
    # Same draw order as len(x) scalar calls: (radial, angular) per point.
    # Unlike the public scalar sampler this tolerates inner == outer (a
    # zero-width layer from a floating-point radius collision): every node
    # lands at the shared radius, and the stream still advances two draws
    # per node.  Work proceeds in cache-sized chunks over reused scratch so
    # cost stays linear in n.
    n = x.size
    inner_sq = inner * inner
    span = outer * outer - inner * inner
    m_max = min(n, _POINT_CHUNK)
    draws = np.empty(2 * m_max, dtype=np.float64)
    radius = np.empty(m_max, dtype=np.float64)
    angle = np.empty(m_max, dtype=np.float64)
    scratch = np.empty(m_max, dtype=np.float64)
    for start in range(0, n, _POINT_CHUNK):
        stop = min(start + _POINT_CHUNK, n)
        m = stop - start
        stream.uniform_fill(draws[: 2 * m])
        np.multiply(draws[0 : 2 * m : 2], span, out=radius[:m])
        radius[:m] += inner_sq
        np.sqrt(radius[:m], out=radius[:m])
        np.multiply(draws[1 : 2 * m : 2], TWO_PI, out=angle[:m])
        np.cos(angle[:m], out=scratch[:m])
        np.multiply(radius[:m], scratch[:m], out=x[start:stop])
        np.sin(angle[:m], out=scratch[:m])
        np.multiply(radius[:m], scratch[:m], out=y[start:stop])


def _sample_annulus_block(inner: float, outer: float, n: int, stream):
    x = np.empty(n, dtype=np.float64)
    y = np.empty(n, dtype=np.float64)
    _fill_annulus_points(x, y, inner, outer, stream)
    return x, y


def plan_run(config: NetworkConfig, stream, force_layer_count=None) -> LayerPlan:
    """Resolve layer count, node quotas and layer radii for one run.

    ``force_layer_count`` pins the layer count without consuming the
    layer-count draw; it exists for worst-case cost benchmarking and must lie
    in {2, ..., max_layers}.
    """
    validate_config(config)
    if force_layer_count is None:
        layers = sample_layer_count(config.max_layers, stream)
    else:
        if not 2 <= force_layer_count <= config.max_layers:
            raise ValueError(
                f"force_layer_count must lie in [2, {config.max_layers}], got {force_layer_count}"
            )
        layers = int(force_layer_count)
    inner_count, outer_count = split_nodes(config.nodes, layers)
    layer_set = sample_layer_radii(config.radius, layers, stream)
    return LayerPlan(
        layer_count=layers,
        inner_count=inner_count,
        outer_count=outer_count,
        layer_set=layer_set,
    )


def deploy_automatic(config: NetworkConfig, stream, *, force_layer_count=None) -> Deployment:
    """Generate one automatic deployment.

    Parameters
    ----------
    config : NetworkConfig
        Validated designer inputs (radius, max_layers, nodes, seed).
    stream : RandomStream
        Variate source; the caller owns seeding, typically one substream per
        run.
    force_layer_count : int, optional
        Benchmarking hook: pin the layer count instead of sampling it.

    Returns
    -------
    Deployment
        Exactly ``config.nodes`` points tagged with their 1-based layer
        index, plus the resolved layer geometry and node quotas.
    """
    plan = plan_run(config, stream, force_layer_count)
    total = plan.total_nodes
    x = np.empty(total, dtype=np.float64)
    y = np.empty(total, dtype=np.float64)
    tags = np.empty(total, dtype=np.int64)
    offset = 0
    for layer in range(1, plan.layer_count + 1):
        inner, outer = plan.layer_set.bounds(layer)
        quota = plan.inner_count if layer == 1 else plan.outer_count
        _fill_annulus_points(x[offset : offset + quota], y[offset : offset + quota], inner, outer, stream)
        tags[offset : offset + quota] = layer
        offset += quota
    return Deployment(
        x=x,
        y=y,
        sector=tags,
        config=config,
        layer_set=plan.layer_set,
        inner_count=plan.inner_count,
        outer_count=plan.outer_count,
    )
