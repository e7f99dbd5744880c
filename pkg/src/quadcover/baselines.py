"""Reference estimators for Area(P ∩ ∪C) used in comparison studies.

Five deliberately simple methods: rejection Monte Carlo over the polygon's
bounding box, midpoint counting on a uniform grid, a uniform grid with a
sub-stencil on straddling cells, plain adaptive subdivision that halves
undecided cells, and an ear-clipping triangulation that integrates each
triangle against each circle separately. The triangulation variant sums
per-circle areas without subtracting overlaps on purpose — it is the
textbook shortcut whose overlap blindness the adaptive estimator is
measured against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPolygonError
from .geometry import Scene, _poly_circle_area, points_in_polygon, signed_area
from .quadtree import _QUAD_X, _QUAD_Y, _classify_arrays, _root_square, _SceneData
from .rng import substream

__all__ = [
    "McEstimate",
    "monte_carlo",
    "uniform_grid",
    "grid_integration",
    "adaptive_subdivision",
    "triangulation",
]

_Z_95 = 1.959964
_CHUNK = 1 << 18


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate with a conservative 95% confidence half-width."""

    area: float
    half_width: float
    n_samples: int
    n_inside: int


def _polygon_bbox(scene: Scene) -> tuple[float, float, float, float]:
    verts = scene.polygon.vertices
    x_min = float(verts[:, 0].min())
    y_min = float(verts[:, 1].min())
    return (
        x_min,
        y_min,
        float(verts[:, 0].max()) - x_min,
        float(verts[:, 1].max()) - y_min,
    )


def _points_in_scene(px: np.ndarray, py: np.ndarray, data: _SceneData) -> np.ndarray:
    """Membership of points in the covered region: inside the polygon and
    inside at least one circle."""
    covered = np.zeros(px.shape, dtype=bool)
    for k in range(len(data.r)):
        dx = px - data.cx[k]
        dy = py - data.cy[k]
        covered |= dx * dx + dy * dy <= data.r2[k]
    if covered.any():
        covered &= points_in_polygon(np.column_stack([px, py]), data.verts)
    return covered


def monte_carlo(scene: Scene, n_samples: int, seed: int = 0) -> McEstimate:
    """Rejection sampling over the polygon's bounding box.

    Unbiased; the half-width is the distribution-free bound
    z·A_bbox/(2√N), valid for any hit fraction.
    """
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    data = _SceneData(scene)
    bx, by, bw, bh = _polygon_bbox(scene)
    bbox_area = bw * bh
    rng = substream(int(seed))
    n_inside = 0
    remaining = n_samples
    while remaining > 0:
        k = min(remaining, _CHUNK)
        pts = rng.random((k, 2))
        px = bx + bw * pts[:, 0]
        py = by + bh * pts[:, 1]
        n_inside += int(np.count_nonzero(_points_in_scene(px, py, data)))
        remaining -= k
    return McEstimate(
        area=bbox_area * (n_inside / n_samples),
        half_width=_Z_95 * bbox_area / (2.0 * math.sqrt(n_samples)),
        n_samples=n_samples,
        n_inside=n_inside,
    )


def _grid_cells(scene: Scene, resolution: int) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Min corners and cell size of a resolution×resolution tiling of the
    polygon's bounding box."""
    bx, by, bw, bh = _polygon_bbox(scene)
    res = int(resolution)
    steps = np.arange(res, dtype=np.float64) / res
    x_edges = bx + bw * steps
    y_edges = by + bh * steps
    gx, gy = np.meshgrid(x_edges, y_edges)
    return gx.ravel(), gy.ravel(), bw / res, bh / res


def uniform_grid(scene: Scene, resolution: int) -> float:
    """Midpoint counting: cell area times the number of grid-cell centers
    lying in the covered region."""
    resolution = int(resolution)
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    data = _SceneData(scene)
    x0, y0, w, h = _grid_cells(scene, resolution)
    cx = x0 + 0.5 * w
    cy = y0 + 0.5 * h
    count = 0
    for i in range(0, len(cx), _CHUNK):
        count += int(np.count_nonzero(_points_in_scene(cx[i : i + _CHUNK], cy[i : i + _CHUNK], data)))
    return (w * h) * count


_STENCIL = (np.arange(5, dtype=np.float64) + 0.5) / 5.0
_STENCIL_U, _STENCIL_V = (g.ravel() for g in np.meshgrid(_STENCIL, _STENCIL))


def grid_integration(scene: Scene, resolution: int) -> float:
    """Uniform grid with exact handling of decided cells.

    Cells entirely inside the covered region contribute their full area,
    cells entirely outside contribute nothing, and straddling cells are
    scored by the fraction of a fixed 5×5 midpoint stencil that lands
    inside the region.
    """
    resolution = int(resolution)
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    data = _SceneData(scene)
    x0, y0, w, h = _grid_cells(scene, resolution)
    labels, _, _, _ = _classify_arrays(x0, y0, w, h, data)
    total = float(np.count_nonzero(labels == 1)) * (w * h)
    mixed = np.nonzero(labels == 2)[0]
    for i in range(0, len(mixed), 4096):
        block = mixed[i : i + 4096]
        sx = (x0[block][:, None] + w * _STENCIL_U[None, :]).ravel()
        sy = (y0[block][:, None] + h * _STENCIL_V[None, :]).ravel()
        hits = _points_in_scene(sx, sy, data).reshape(len(block), 25).sum(axis=1)
        total += (w * h) * float(np.sum(hits)) / 25.0
    return total


def adaptive_subdivision(scene: Scene, max_depth: int) -> float:
    """Plain quadtree subdivision without boundary resolution.

    Splits undecided cells of the square hull of the polygon's bounding box
    until ``max_depth``, where each surviving undecided cell contributes
    half its area.
    """
    max_depth = int(max_depth)
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    data = _SceneData(scene)
    rx, ry, side = _root_square(scene)
    x0 = np.array([rx])
    y0 = np.array([ry])
    total = 0.0
    for depth in range(max_depth + 1):
        labels, _, _, _ = _classify_arrays(x0, y0, side, side, data)
        total += float(np.count_nonzero(labels == 1)) * (side * side)
        undecided = labels == 2
        if depth == max_depth:
            total += float(np.count_nonzero(undecided)) * (side * side * 0.5)
            break
        if not undecided.any():
            break
        half = side * 0.5
        px = np.repeat(x0[undecided], 4)
        py = np.repeat(y0[undecided], 4)
        quads = np.tile(np.arange(4), int(undecided.sum()))
        x0 = px + half * _QUAD_X[quads]
        y0 = py + half * _QUAD_Y[quads]
        side = half
    return total


def _point_in_or_on_triangle(p: np.ndarray, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> bool:
    s1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    s2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
    s3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
    return s1 >= 0.0 and s2 >= 0.0 and s3 >= 0.0


def _ear_clip(verts: np.ndarray) -> list[np.ndarray]:
    """Ear-clipping triangulation of a counter-clockwise simple polygon."""
    remaining = list(range(len(verts)))
    triangles: list[np.ndarray] = []
    while len(remaining) > 3:
        m = len(remaining)
        clipped = False
        for j in range(m):
            ia, ib, ic = remaining[(j - 1) % m], remaining[j], remaining[(j + 1) % m]
            a, b, c = verts[ia], verts[ib], verts[ic]
            convex = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if convex <= 0.0:
                continue
            if any(
                _point_in_or_on_triangle(verts[k], a, b, c)
                for k in remaining
                if k not in (ia, ib, ic)
            ):
                continue
            triangles.append(np.array([a, b, c]))
            del remaining[j]
            clipped = True
            break
        if not clipped:
            raise InvalidPolygonError(
                "ear clipping found no ear; polygon is degenerate or self-intersecting"
            )
    triangles.append(np.array([verts[i] for i in remaining]))
    return triangles


def triangulation(scene: Scene) -> float:
    """Triangulate the polygon and integrate each triangle against each
    circle separately.

    Each triangle contributes min(Area(T), Σ_k Area(T ∩ C_k)); circle
    overlaps inside a triangle are double counted up to that cap, which is
    exactly the failure mode this baseline exists to exhibit. The total is
    additionally capped at Area(P).
    """
    verts = scene.polygon.vertices
    data = _SceneData(scene)
    total = 0.0
    for tri in _ear_clip(verts):
        tri_area = signed_area(tri)
        if tri_area <= 0.0:
            continue
        per_circle = sum(
            float(_poly_circle_area(tri, float(data.cx[k]), float(data.cy[k]), float(data.r[k])))
            for k in range(len(data.r))
        )
        total += min(tri_area, per_circle)
    return min(total, signed_area(verts))
