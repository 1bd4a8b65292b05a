"""Additively-weighted centroidal Voronoi treemap on a sample grid.

Cells are sets of grid samples: the tessellation assigns each sample to the
site minimizing euclidean(p, q) - r, then iterates centroid moves and radius
adjustments until every cell's area fraction is within tolerance of its
weight fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class TreemapNode:
    name: str
    weight: float = 0.0
    children: list = field(default_factory=list)

    def __post_init__(self):
        if self.children:
            child_sum = sum(c.weight for c in self.children)
            if self.weight <= 0:
                self.weight = child_sum
            elif self.weight < child_sum:
                raise ValueError(
                    f"{self.name}: weight {self.weight} below children sum {child_sum}")
        if self.weight <= 0:
            raise ValueError(f"{self.name}: weight must be positive")

    @classmethod
    def from_json(cls, doc) -> "TreemapNode":
        return cls(name=doc["name"], weight=float(doc.get("weight", 0)),
                   children=[cls.from_json(c) for c in doc.get("children", [])])


@dataclass
class SiteState:
    x: float
    y: float
    radius: float
    target_fraction: float


@dataclass(frozen=True)
class LayoutParams:
    resolution: int = 256
    max_iterations: int = 100
    area_tolerance: float = 0.02
    seed: int = 0

    def __post_init__(self):
        if self.resolution < 32:
            raise ValueError("resolution must be >= 32")
        if self.area_tolerance <= 0:
            raise ValueError("area tolerance must be positive")


@dataclass
class CellLayout:
    name: str
    site: SiteState
    samples: np.ndarray        # (k, 2) float sample coordinates
    area_fraction: float
    children: list = field(default_factory=list)


# iterate on at most this many samples; the final assignment always runs
# over the full region so the partition stays exact
_COARSE_SAMPLES = 16384


def _assign_sites(points: np.ndarray, positions: np.ndarray,
                  radii: np.ndarray) -> np.ndarray:
    """Index of the site minimizing euclidean(p, site) - radius per sample.

    Expands ||p - c||^2 = |p|^2 - 2 p.c + |c|^2 so the heavy term is a
    matmul instead of an (n, k, 2) broadcast.
    """
    d = (np.einsum("ij,ij->i", points, points)[:, None]
         - 2.0 * (points @ positions.T)
         + np.einsum("ij,ij->i", positions, positions)[None, :])
    np.maximum(d, 0.0, out=d)
    np.sqrt(d, out=d)
    d -= radii[None, :]
    return np.argmin(d, axis=1)


def _initial_sites(count: int, xs, ys, rng) -> list[tuple[float, float]]:
    """Deterministic jittered picks from the region's samples."""
    n = len(xs)
    idx = np.linspace(0, n - 1, count).astype(int)
    jitter = rng.integers(0, max(n // max(count, 1), 1), size=count)
    idx = np.clip(idx + jitter, 0, n - 1)
    # keep positions distinct
    chosen = []
    used = set()
    for i in idx:
        j = int(i)
        while j in used:
            j = (j + 1) % n
        used.add(j)
        chosen.append((float(xs[j]), float(ys[j])))
    return chosen


def layout_siblings(points: np.ndarray, weights, params: LayoutParams,
                    rng=None):
    """Partition the region samples among one site per weight.

    ``points`` is an (n, 2) array of region sample coordinates. Returns
    (assignment array of site indices, list of SiteState, converged flag,
    iterations used).
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    weights = [float(w) for w in weights]
    if any(w <= 0 for w in weights):
        raise ValueError("non-positive weight")
    k = len(weights)
    if k < 1 or n == 0:
        raise ValueError("empty region or no sites")
    if k > n:
        raise ValueError(f"site count {k} exceeds sample count {n}")

    total_w = sum(weights)
    targets = np.array([w / total_w for w in weights])
    if rng is None:
        rng = np.random.default_rng(params.seed)

    positions = np.array(_initial_sites(k, points[:, 0], points[:, 1], rng))
    span_x = float(np.ptp(points[:, 0])) + 1.0
    span_y = float(np.ptp(points[:, 1])) + 1.0
    radii = np.full(k, 0.05 * math.sqrt(span_x * span_y / k))

    if k == 1:
        site = SiteState(float(positions[0, 0]), float(positions[0, 1]), 0.0, 1.0)
        return np.zeros(n, dtype=int), [site], True, 0

    # iterate on a subsample of large regions; the geometry transfers to the
    # full grid in the final assignment below
    if n > _COARSE_SAMPLES:
        work = points[rng.choice(n, _COARSE_SAMPLES, replace=False)]
    else:
        work = points
    m = len(work)

    converged = False
    iterations = 0
    for iterations in range(1, params.max_iterations + 1):
        # additively weighted assignment; ties go to the lowest site index
        assignment = _assign_sites(work, positions, radii)

        counts = np.bincount(assignment, minlength=k).astype(float)
        fractions = counts / m

        # stop before mutating state so the converged geometry is returned
        rel_err = np.abs(fractions - targets) / targets
        if float(rel_err.max()) <= params.area_tolerance:
            converged = True
            break

        # move sites to their cell centroids; empty cells are re-seeded
        sum_x = np.bincount(assignment, weights=work[:, 0], minlength=k)
        sum_y = np.bincount(assignment, weights=work[:, 1], minlength=k)
        filled = counts > 0
        positions[filled, 0] = sum_x[filled] / counts[filled]
        positions[filled, 1] = sum_y[filled] / counts[filled]
        for i in np.flatnonzero(~filled):
            j = int(rng.integers(0, m))
            positions[i] = work[j] + rng.normal(0, 1e-6, size=2)

        # grow/shrink each site's additive radius toward its target area
        scale = np.sqrt(targets / np.maximum(fractions, 1.0 / m))
        radii = radii * np.clip(scale, 0.5, 2.0)

    assignment = _assign_sites(points, positions, radii)

    sites = [
        SiteState(float(positions[i, 0]), float(positions[i, 1]),
                  float(radii[i]), float(targets[i]))
        for i in range(k)
    ]
    return assignment, sites, converged, iterations


def rectangle_samples(width: float, height: float, resolution: int) -> np.ndarray:
    """Uniform sample grid over a width x height rectangle."""
    xs = (np.arange(resolution) + 0.5) * (width / resolution)
    ys = (np.arange(resolution) + 0.5) * (height / resolution)
    gx, gy = np.meshgrid(xs, ys)
    return np.column_stack([gx.ravel(), gy.ravel()])


def layout_hierarchy(root: TreemapNode, points: np.ndarray,
                     params: LayoutParams) -> CellLayout:
    """Recursively partition the region among the hierarchy's children."""
    rng = np.random.default_rng(params.seed)
    return _layout_node(root, np.asarray(points, dtype=float), 1.0, params, rng, [])


def _layout_node(node: TreemapNode, points, fraction, params, rng, path) -> CellLayout:
    cell = CellLayout(
        name=node.name,
        site=SiteState(float(points[:, 0].mean()), float(points[:, 1].mean()),
                       0.0, fraction),
        samples=points,
        area_fraction=fraction,
    )
    if not node.children:
        return cell
    weights = [c.weight for c in node.children]
    try:
        assignment, sites, _, _ = layout_siblings(points, weights, params, rng=rng)
    except ValueError as exc:
        raise ValueError("/".join(path + [node.name]) + f": {exc}") from None
    total_w = sum(weights)
    for i, child in enumerate(node.children):
        child_points = points[assignment == i]
        child_cell = _layout_node(child, child_points,
                                  fraction * weights[i] / total_w,
                                  params, rng, path + [node.name])
        child_cell.site = sites[i]
        cell.children.append(child_cell)
    return cell


def leaf_cells(layout: CellLayout) -> list[CellLayout]:
    if not layout.children:
        return [layout]
    out = []
    for child in layout.children:
        out.extend(leaf_cells(child))
    return out


def aspect_ratios(layout: CellLayout) -> dict[str, float]:
    """Bounding-box max/min side ratio per leaf cell (>= 1; 1 by convention
    for degenerate single-sample cells)."""
    ratios = {}
    for cell in leaf_cells(layout):
        pts = cell.samples
        if len(pts) < 2:
            ratios[cell.name] = 1.0
            continue
        w = float(pts[:, 0].max() - pts[:, 0].min())
        h = float(pts[:, 1].max() - pts[:, 1].min())
        lo, hi = sorted([w, h])
        ratios[cell.name] = hi / lo if lo > 0 else 1.0
    return ratios


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull; returns vertices counter-clockwise."""
    pts = sorted(set(map(tuple, np.asarray(points, dtype=float))))
    if len(pts) <= 2:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])
