"""On-disk formats for deployments, metadata, plans, plot data and reports.

Coordinates are serialized with Python's shortest round-trip decimal
representation, so points written and re-read compare bitwise equal and
identical runs produce byte-identical files on every platform.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import Annulus, Deployment, Disk, LayerSet, NetworkConfig, Rect, Sector
from .planned import DeploymentPlan

__all__ = [
    "FormatError",
    "write_points",
    "read_points",
    "automatic_metadata",
    "planned_metadata",
    "write_metadata",
    "read_metadata",
    "deployment_from_files",
    "load_plan",
    "save_plan",
    "write_plot_data",
    "write_report",
]

POINTS_HEADER = "x,y,sector"


class FormatError(ValueError):
    """A file does not conform to its declared schema."""


def _fmt(value: float) -> str:
    return repr(float(value))


def write_points(path, deployment: Deployment, fmt: str = "csv") -> None:
    """Write the point set as CSV (``x,y,sector`` rows) or JSON."""
    path = Path(path)
    rows = zip(deployment.x, deployment.y, deployment.sector)
    if fmt == "csv":
        lines = [POINTS_HEADER]
        lines.extend(f"{_fmt(x)},{_fmt(y)},{int(s)}" for x, y, s in rows)
        path.write_text("\n".join(lines) + "\n")
    elif fmt == "json":
        payload = {
            "columns": ["x", "y", "sector"],
            "points": [[float(x), float(y), int(s)] for x, y, s in rows],
        }
        path.write_text(json.dumps(payload) + "\n")
    else:
        raise ValueError(f"unknown points format {fmt!r}")


def read_points(path):
    """Read a points file (CSV or JSON, judged by suffix) back into arrays."""
    path = Path(path)
    if path.suffix == ".json":
        try:
            payload = json.loads(path.read_text())
            triples = payload["points"]
            x = np.array([p[0] for p in triples], dtype=np.float64)
            y = np.array([p[1] for p in triples], dtype=np.float64)
            sector = np.array([int(p[2]) for p in triples], dtype=np.int64)
        except (json.JSONDecodeError, KeyError, IndexError, TypeError, ValueError) as exc:
            raise FormatError(f"{path}: not a valid points JSON file ({exc})") from exc
        return x, y, sector
    text = path.read_text()
    lines = text.splitlines()
    if not lines or lines[0].strip() != POINTS_HEADER:
        raise FormatError(f"{path}: expected header {POINTS_HEADER!r}")
    xs, ys, tags = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise FormatError(f"{path}:{lineno}: expected 3 comma-separated fields")
        try:
            xs.append(float(parts[0]))
            ys.append(float(parts[1]))
            tags.append(int(parts[2]))
        except ValueError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return (
        np.array(xs, dtype=np.float64),
        np.array(ys, dtype=np.float64),
        np.array(tags, dtype=np.int64),
    )


def automatic_metadata(deployment: Deployment, run: int) -> dict:
    """Metadata record for an automatic run; key names are part of the format."""
    cfg = deployment.config
    ls = deployment.layer_set
    return {
        "L": float(cfg.radius),
        "n_Lmax": int(cfg.max_layers),
        "n_S": int(cfg.nodes),
        "seed": int(cfg.seed),
        "run": int(run),
        "n_L": int(ls.layer_count),
        "radii": [float(r) for r in ls.boundaries],
        "n_in": int(deployment.inner_count),
        "n_out": int(deployment.outer_count),
    }


def planned_metadata(deployment: Deployment, run: int, seed: int) -> dict:
    return {
        "seed": int(seed),
        "run": int(run),
        "plan": [_sector_to_obj(sec) for sec in deployment.plan.sectors],
    }


def write_metadata(path, meta: dict) -> None:
    Path(path).write_text(json.dumps(meta) + "\n")


def read_metadata(path) -> dict:
    path = Path(path)
    try:
        meta = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(meta, dict):
        raise FormatError(f"{path}: metadata must be a JSON object")
    return meta


def deployment_from_files(points_path, meta_path) -> Deployment:
    """Rebuild a Deployment (including its geometry) from a run's two files."""
    x, y, sector = read_points(points_path)
    meta = read_metadata(meta_path)
    if "n_L" in meta:
        required = {"L", "n_Lmax", "n_S", "seed", "run", "n_L", "radii", "n_in", "n_out"}
        missing = required - meta.keys()
        if missing:
            raise FormatError(f"{meta_path}: missing metadata keys {sorted(missing)}")
        config = NetworkConfig(
            radius=float(meta["L"]),
            max_layers=int(meta["n_Lmax"]),
            nodes=int(meta["n_S"]),
            seed=int(meta["seed"]),
        )
        layer_set = LayerSet(radius=float(meta["L"]), boundaries=tuple(float(r) for r in meta["radii"]))
        return Deployment(
            x=x,
            y=y,
            sector=sector,
            config=config,
            layer_set=layer_set,
            inner_count=int(meta["n_in"]),
            outer_count=int(meta["n_out"]),
        )
    if "plan" in meta:
        plan = DeploymentPlan(sectors=tuple(_obj_to_sector(obj, i) for i, obj in enumerate(meta["plan"], 1)))
        return Deployment(x=x, y=y, sector=sector, plan=plan)
    raise FormatError(f"{meta_path}: metadata carries neither 'n_L' nor 'plan'")


def _sector_to_obj(sector: Sector) -> dict:
    shape = sector.shape
    if isinstance(shape, Annulus):
        return {"shape": "annulus", "r_inner": shape.inner, "r_outer": shape.outer, "n": sector.count}
    if isinstance(shape, Disk):
        return {"shape": "disk", "r": shape.radius, "n": sector.count}
    return {"shape": "rect", "x0": shape.x0, "y0": shape.y0, "x1": shape.x1, "y1": shape.y1, "n": sector.count}


def _obj_to_sector(obj, index: int) -> Sector:
    if not isinstance(obj, dict):
        raise FormatError(f"sector {index}: must be a JSON object")
    kind = obj.get("shape")
    try:
        if kind == "annulus":
            shape = Annulus(float(obj["r_inner"]), float(obj["r_outer"]))
        elif kind == "disk":
            shape = Disk(float(obj["r"]))
        elif kind == "rect":
            shape = Rect(float(obj["x0"]), float(obj["y0"]), float(obj["x1"]), float(obj["y1"]))
        else:
            raise FormatError(f"sector {index}: unknown shape {kind!r}")
        return Sector(shape=shape, count=int(obj["n"]))
    except KeyError as exc:
        raise FormatError(f"sector {index}: missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"sector {index}: {exc}") from exc


def load_plan(path) -> DeploymentPlan:
    """Parse a plan file: a JSON array of sector objects."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, list) or not data:
        raise FormatError(f"{path}: plan must be a non-empty JSON array of sector objects")
    sectors = tuple(_obj_to_sector(obj, i) for i, obj in enumerate(data, start=1))
    return DeploymentPlan(sectors=sectors)


def save_plan(path, plan: DeploymentPlan) -> None:
    Path(path).write_text(json.dumps([_sector_to_obj(sec) for sec in plan.sectors], indent=2) + "\n")


def write_plot_data(xy_path, rings_path, deployment: Deployment) -> None:
    """Whitespace-separated scatter data plus ring boundaries for external plotting.

    The rings file lists the interior layer radii followed by the outer
    radius; it is only written for automatic deployments.
    """
    xy_path = Path(xy_path)
    lines = [
        f"{_fmt(x)} {_fmt(y)} {int(s)}"
        for x, y, s in zip(deployment.x, deployment.y, deployment.sector)
    ]
    xy_path.write_text("\n".join(lines) + "\n")
    if deployment.layer_set is not None and rings_path is not None:
        ls = deployment.layer_set
        radii = list(ls.boundaries) + [ls.radius]
        Path(rings_path).write_text("\n".join(_fmt(r) for r in radii) + "\n")


def write_report(path, report) -> None:
    Path(path).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
