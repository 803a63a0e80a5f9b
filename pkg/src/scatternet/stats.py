"""Goodness-of-fit machinery for validating generated deployments.

Every test here is a deterministic function of its input point set.  KS
critical values come from the asymptotic Kolmogorov distribution (valid for
the n >= 30 samples we ever feed it); chi-square thresholds come from the
exact quantile via the regularized incomplete gamma function.  Default
significance levels are 0.01 for KS and 0.001 for chi-square tests, chosen
to keep many-seed validation runs quiet; the upstream algorithm makes no
quantitative distributional claim of its own, so these thresholds are tool
decisions, not reproduced numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import special

from .core import Annulus, Deployment, Disk, Rect

__all__ = [
    "InsufficientSampleError",
    "GofResult",
    "SectorStat",
    "StatReport",
    "radial_ks",
    "angular_chi2",
    "areal_chi2",
    "rect_chi2",
    "equal_area_boundaries",
    "count_per_sector",
    "empirical_density_profile",
    "check_membership",
    "evaluate_deployment",
    "DEFAULT_KS_ALPHA",
    "DEFAULT_CHI2_ALPHA",
]

DEFAULT_KS_ALPHA = 0.01
DEFAULT_CHI2_ALPHA = 0.001
MIN_KS_POINTS = 30
MIN_EXPECTED_PER_BIN = 5


class InsufficientSampleError(ValueError):
    """The point set is too small for the requested test to be meaningful."""


@dataclass(frozen=True)
class GofResult:
    statistic: float
    threshold: float
    passed: bool
    dof: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"statistic": self.statistic, "threshold": self.threshold, "passed": self.passed}
        if self.dof is not None:
            out["dof"] = self.dof
        return out


def _chi2_threshold(alpha: float, dof: int) -> float:
    # Quantile of the chi-square distribution through the regularized
    # incomplete gamma inverse; accurate far beyond the 1e-8 we need.
    return float(special.chdtri(dof, alpha))


def _pearson_chi2(observed: np.ndarray, expected: np.ndarray, alpha: float) -> GofResult:
    stat = float(np.sum((observed - expected) ** 2 / expected))
    dof = observed.size - 1
    threshold = _chi2_threshold(alpha, dof)
    return GofResult(statistic=stat, threshold=threshold, passed=stat < threshold, dof=dof)


def radial_ks(x, y, inner: float, outer: float, alpha: float = DEFAULT_KS_ALPHA) -> GofResult:
    """One-sample KS test of radii against the annulus area-uniform law.

    The reference CDF is F(r) = (r^2 - inner^2) / (outer^2 - inner^2); the
    critical value is the asymptotic c(alpha) / sqrt(n), with c(0.01) = 1.628.
    All points are assumed to lie in the annulus (membership is checked
    separately).
    """
    if not (0.0 <= inner < outer):
        raise ValueError(f"radial_ks requires 0 <= inner < outer, got ({inner}, {outer})")
    r = np.hypot(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    n = r.size
    if n < MIN_KS_POINTS:
        raise InsufficientSampleError(f"radial KS needs at least {MIN_KS_POINTS} points, got {n}")
    r = np.sort(r)
    cdf = (r * r - inner * inner) / (outer * outer - inner * inner)
    steps = np.arange(1, n + 1, dtype=np.float64) / n
    d_plus = float(np.max(steps - cdf))
    d_minus = float(np.max(cdf - (steps - 1.0 / n)))
    stat = max(d_plus, d_minus)
    threshold = float(special.kolmogi(alpha)) / math.sqrt(n)
    return GofResult(statistic=stat, threshold=threshold, passed=stat < threshold)


def angular_chi2(x, y, bins: int = 36, alpha: float = DEFAULT_CHI2_ALPHA) -> GofResult:
    """Pearson chi-square of point angles against uniformity on [0, 2pi)."""
    if bins < 2:
        raise ValueError(f"angular chi-square needs at least 2 bins, got {bins}")
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.size
    if n < MIN_EXPECTED_PER_BIN * bins:
        raise InsufficientSampleError(
            f"angular chi-square with {bins} bins needs at least "
            f"{MIN_EXPECTED_PER_BIN * bins} points, got {n}"
        )
    angles = np.mod(np.arctan2(y, x), 2.0 * math.pi)
    observed, _ = np.histogram(angles, bins=bins, range=(0.0, 2.0 * math.pi))
    expected = np.full(bins, n / bins)
    return _pearson_chi2(observed.astype(np.float64), expected, alpha)


def equal_area_boundaries(inner: float, outer: float, shells: int) -> np.ndarray:
    """Radii splitting an annulus into ``shells`` annuli of identical area."""
    if not (0.0 <= inner < outer):
        raise ValueError(f"equal_area_boundaries requires 0 <= inner < outer, got ({inner}, {outer})")
    if shells < 1:
        raise ValueError(f"shell count must be positive, got {shells}")
    fractions = np.arange(shells + 1, dtype=np.float64) / shells
    return np.sqrt(inner * inner + fractions * (outer * outer - inner * inner))


def areal_chi2(
    x,
    y,
    inner: float,
    outer: float,
    radial_bins: int = 8,
    angular_bins: int = 8,
    alpha: float = DEFAULT_CHI2_ALPHA,
) -> GofResult:
    """Two-dimensional uniformity test over an annulus.

    The annulus is cut into ``radial_bins`` equal-area shells crossed with
    ``angular_bins`` equal wedges, so every cell has the same expected count
    under area uniformity.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    cells = radial_bins * angular_bins
    if cells < 2:
        raise ValueError("areal chi-square needs at least 2 cells")
    n = x.size
    if n < MIN_EXPECTED_PER_BIN * cells:
        raise InsufficientSampleError(
            f"areal chi-square with {radial_bins}x{angular_bins} cells needs at least "
            f"{MIN_EXPECTED_PER_BIN * cells} points, got {n}"
        )
    r = np.hypot(x, y)
    shell_edges = equal_area_boundaries(inner, outer, radial_bins)
    shell = np.clip(np.searchsorted(shell_edges[1:-1], r, side="right"), 0, radial_bins - 1)
    angles = np.mod(np.arctan2(y, x), 2.0 * math.pi)
    wedge = np.clip(
        (angles * (angular_bins / (2.0 * math.pi))).astype(np.int64), 0, angular_bins - 1
    )
    observed = np.bincount(shell * angular_bins + wedge, minlength=cells).astype(np.float64)
    expected = np.full(cells, n / cells)
    return _pearson_chi2(observed, expected, alpha)


def rect_chi2(
    x,
    y,
    rect: Rect,
    x_bins: int = 8,
    y_bins: int = 8,
    alpha: float = DEFAULT_CHI2_ALPHA,
) -> GofResult:
    """Uniformity test over a rectangle via an equal-size (hence equal-area) grid."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    cells = x_bins * y_bins
    if cells < 2:
        raise ValueError("rect chi-square needs at least 2 cells")
    n = x.size
    if n < MIN_EXPECTED_PER_BIN * cells:
        raise InsufficientSampleError(
            f"rect chi-square with {x_bins}x{y_bins} cells needs at least "
            f"{MIN_EXPECTED_PER_BIN * cells} points, got {n}"
        )
    col = np.clip(((x - rect.x0) * (x_bins / (rect.x1 - rect.x0))).astype(np.int64), 0, x_bins - 1)
    row = np.clip(((y - rect.y0) * (y_bins / (rect.y1 - rect.y0))).astype(np.int64), 0, y_bins - 1)
    observed = np.bincount(row * x_bins + col, minlength=cells).astype(np.float64)
    expected = np.full(cells, n / cells)
    return _pearson_chi2(observed, expected, alpha)


def count_per_sector(deployment: Deployment):
    """Exact per-sector tallies as a list of (index, count), 1-based."""
    tags = np.asarray(deployment.sector)
    if tags.size != deployment.x.size or tags.size == 0:
        raise ValueError("deployment has untagged points: sector labels do not match the point set")
    if np.any(tags < 1):
        raise ValueError("sector tags must be 1-based positive integers")
    counts = np.bincount(tags)[1:]
    return [(i + 1, int(c)) for i, c in enumerate(counts)]


def _sector_geometry(deployment: Deployment):
    """(index, shape) pairs describing each sector's domain, 1-based."""
    if deployment.layer_set is not None:
        ls = deployment.layer_set
        out = []
        for i in range(1, ls.layer_count + 1):
            inner, outer = ls.bounds(i)
            if outer > inner:
                shape = Annulus(inner, outer) if inner > 0 else Disk(outer)
            else:
                shape = None  # zero-width collision layer, area 0
            out.append((i, shape))
        return out
    if deployment.plan is not None:
        return [(i, sec.shape) for i, sec in enumerate(deployment.plan.sectors, start=1)]
    raise ValueError("deployment carries neither a layer set nor a plan; sector geometry unknown")


def empirical_density_profile(deployment: Deployment):
    """Realized density of every sector as a list of (index, count / area)."""
    counts = dict(count_per_sector(deployment))
    out = []
    for index, shape in _sector_geometry(deployment):
        count = counts.get(index, 0)
        area = shape.area() if shape is not None else 0.0
        out.append((index, count / area if area > 0 else math.inf))
    return out


def check_membership(deployment: Deployment) -> np.ndarray:
    """Indices of points lying outside their tagged sector's domain.

    For automatic deployments the layer intervals are checked closed on both
    ends so that a boundary radius produced by floating rounding never
    trips the check; genuinely displaced points remain detectable.
    """
    tags = np.asarray(deployment.sector)
    violations = []
    for index, shape in _sector_geometry(deployment):
        mask = tags == index
        if not np.any(mask):
            continue
        if shape is None:
            # zero-width layer: all nodes must sit exactly at the shared radius
            inner, _ = deployment.layer_set.bounds(index)
            ok = np.isclose(np.hypot(deployment.x[mask], deployment.y[mask]), inner)
        else:
            ok = shape.contains(deployment.x[mask], deployment.y[mask])
        bad = np.flatnonzero(mask)[~np.asarray(ok)]
        violations.append(bad)
    if not violations:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(violations))


@dataclass(frozen=True)
class SectorStat:
    index: int
    count: int
    area: float
    density: float

    def to_dict(self) -> dict:
        return {"index": self.index, "count": self.count, "area": self.area, "density": self.density}


@dataclass(frozen=True)
class StatReport:
    """Bundle of per-sector statistics and goodness-of-fit outcomes."""

    per_sector: tuple
    radial: tuple  # (sector index, GofResult) pairs
    areal: tuple  # (sector index, GofResult) pairs
    angular: Optional[GofResult]
    ks_alpha: float
    chi2_alpha: float
    skipped: tuple = field(default_factory=tuple)  # (sector index, test name, reason)

    def all_passed(self) -> bool:
        results = [res for _, res in self.radial] + [res for _, res in self.areal]
        if self.angular is not None:
            results.append(self.angular)
        return all(res.passed for res in results)

    def failures(self):
        out = [("radial_ks", idx, res) for idx, res in self.radial if not res.passed]
        out += [("areal_chi2", idx, res) for idx, res in self.areal if not res.passed]
        if self.angular is not None and not self.angular.passed:
            out.append(("angular_chi2", None, self.angular))
        return out

    def to_dict(self) -> dict:
        return {
            "ks_alpha": self.ks_alpha,
            "chi2_alpha": self.chi2_alpha,
            "per_sector": [s.to_dict() for s in self.per_sector],
            "radial_ks": [{"sector": idx, **res.to_dict()} for idx, res in self.radial],
            "areal_chi2": [{"sector": idx, **res.to_dict()} for idx, res in self.areal],
            "angular_chi2": self.angular.to_dict() if self.angular is not None else None,
            "skipped": [
                {"sector": idx, "test": test, "reason": reason} for idx, test, reason in self.skipped
            ],
            "all_passed": self.all_passed(),
        }


def evaluate_deployment(
    deployment: Deployment,
    ks_alpha: float = DEFAULT_KS_ALPHA,
    chi2_alpha: float = DEFAULT_CHI2_ALPHA,
    angular_bins: int = 36,
    areal_shells: int = 8,
    areal_wedges: int = 8,
) -> StatReport:
    """Run every applicable distribution test and assemble a report.

    Tests whose sample-size preconditions are not met by a sector are
    recorded as skipped rather than failed; the network-wide angular test
    only applies when every sector is origin-centered.
    """
    counts = dict(count_per_sector(deployment))
    geometry = _sector_geometry(deployment)
    tags = np.asarray(deployment.sector)

    per_sector = []
    radial = []
    areal = []
    skipped = []
    all_circular = True
    for index, shape in geometry:
        count = counts.get(index, 0)
        area = shape.area() if shape is not None else 0.0
        density = count / area if area > 0 else math.inf
        per_sector.append(SectorStat(index=index, count=count, area=area, density=density))
        mask = tags == index
        sx = deployment.x[mask]
        sy = deployment.y[mask]
        if isinstance(shape, (Annulus, Disk)):
            inner = shape.inner if isinstance(shape, Annulus) else 0.0
            outer = shape.outer if isinstance(shape, Annulus) else shape.radius
            if count >= MIN_KS_POINTS:
                radial.append((index, radial_ks(sx, sy, inner, outer, alpha=ks_alpha)))
            else:
                skipped.append((index, "radial_ks", f"{count} < {MIN_KS_POINTS} points"))
            min_areal = MIN_EXPECTED_PER_BIN * areal_shells * areal_wedges
            if count >= min_areal:
                areal.append(
                    (index, areal_chi2(sx, sy, inner, outer, areal_shells, areal_wedges, alpha=chi2_alpha))
                )
            else:
                skipped.append((index, "areal_chi2", f"{count} < {min_areal} points"))
        elif isinstance(shape, Rect):
            all_circular = False
            min_areal = MIN_EXPECTED_PER_BIN * areal_shells * areal_wedges
            if count >= min_areal:
                areal.append(
                    (index, rect_chi2(sx, sy, shape, areal_shells, areal_wedges, alpha=chi2_alpha))
                )
            else:
                skipped.append((index, "areal_chi2", f"{count} < {min_areal} points"))
            skipped.append((index, "radial_ks", "not applicable to rectangular sectors"))
        else:
            skipped.append((index, "radial_ks", "zero-width layer"))
            skipped.append((index, "areal_chi2", "zero-width layer"))

    angular = None
    if all_circular:
        if len(deployment) >= MIN_EXPECTED_PER_BIN * angular_bins:
            angular = angular_chi2(deployment.x, deployment.y, bins=angular_bins, alpha=chi2_alpha)
        else:
            skipped.append((None, "angular_chi2", f"{len(deployment)} points < {MIN_EXPECTED_PER_BIN * angular_bins}"))
    else:
        skipped.append((None, "angular_chi2", "plan contains non-circular sectors"))

    return StatReport(
        per_sector=tuple(per_sector),
        radial=tuple(radial),
        areal=tuple(areal),
        angular=angular,
        ks_alpha=ks_alpha,
        chi2_alpha=chi2_alpha,
        skipped=tuple(skipped),
    )
