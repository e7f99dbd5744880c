"""Adaptive quadtree area estimator with boundary-focused subsampling.

The estimator refines a square root cell over the polygon until every leaf is
certainly inside the covered region, certainly outside it, or small enough,
then resolves the surviving boundary leaves: cells swallowed by some disk
contribute their clipped polygon area exactly, cells crossed by one circle
get a closed-form disk integration, and only cells where several circle
boundaries tangle fall back to Monte Carlo, with a per-cell sample budget
scaled by how many boundaries cross and how sharply they curve.

All refinement and sampling formulas are evaluated on a normalized copy of
the scene (polygon diameter 1); areas are mapped back by the squared scale.
Every boundary leaf that samples draws from its own RNG substream keyed by
depth and quadrant path, and contributions are reduced in a canonical
depth-first leaf order, so results are bitwise reproducible regardless of
evaluation schedule.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import SceneError
from .geometry import (
    Cell,
    Circle,
    Point,
    Polygon,
    RegionClass,
    Scene,
    _clip_area,
    _clip_ring,
    _disk_rect_area,
    _poly_circle_area,
    _rects_vs_circles,
    _rects_vs_polygon,
    points_in_polygon,
    polygon_diameter,
)
from .rng import substream

__all__ = [
    "AqbfParams",
    "CellCoverageInfo",
    "QuadNode",
    "AreaResult",
    "max_refinement_depth",
    "normalize_scene",
    "classify_cell",
    "cell_coverage",
    "subsample_count",
    "cell_contribution",
    "partition",
    "compute_area",
]


@dataclass(frozen=True)
class AqbfParams:
    """Tuning knobs of the adaptive estimator.

    ``partition_tol`` sets the refinement depth (boundary cells are split
    until their side is at most √partition_tol of the root side),
    ``sampling_tol`` the per-cell Monte Carlo budget. ``multiplicity_weighted``
    switches the fully-covered-cell rule to a variant that counts a cell once
    per containing circle; it exists for comparison studies and deliberately
    overcounts overlapping disks.
    """

    partition_tol: float = 1e-6
    sampling_tol: float = 1e-4
    sample_factor: float = 4.0
    min_samples: int = 450
    max_samples: int = 1_000_000
    seed: int = 0
    multiplicity_weighted: bool = False

    def __post_init__(self) -> None:
        if not (0.0 < self.partition_tol <= 1.0):
            raise ValueError("partition_tol must be in (0, 1]")
        if not (0.0 < self.sampling_tol <= 1.0):
            raise ValueError("sampling_tol must be in (0, 1]")
        if not self.sample_factor > 0.0:
            raise ValueError("sample_factor must be positive")
        if int(self.min_samples) < 1:
            raise ValueError("min_samples must be at least 1")
        if int(self.max_samples) < int(self.min_samples):
            raise ValueError("max_samples must be at least min_samples")
        if int(self.seed) < 0:
            raise ValueError("seed must be a non-negative integer")
        object.__setattr__(self, "min_samples", int(self.min_samples))
        object.__setattr__(self, "max_samples", int(self.max_samples))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class CellCoverageInfo:
    """How the circles relate to one boundary cell.

    ``containing`` lists circles that fully contain the cell, ``crossing``
    the circles whose boundary passes through it; ``curvature_sum`` adds up
    the inverse radii of the crossing circles, and ``area_in_polygon`` is
    the exact area of cell ∩ polygon.
    """

    containing: tuple[int, ...]
    crossing: tuple[int, ...]
    curvature_sum: float
    area_in_polygon: float

    @property
    def multiplicity(self) -> int:
        return len(self.crossing)


@dataclass(frozen=True)
class QuadNode:
    """One node of the refinement tree; children are ordered SW, SE, NW, NE."""

    cell: Cell
    depth: int
    classification: RegionClass
    children: tuple["QuadNode", ...] = ()


@dataclass(frozen=True)
class AreaResult:
    """Computed area with tree and sampling diagnostics."""

    area: float
    n_leaf: int
    n_interior: int
    n_boundary: int
    n_exterior: int
    total_subsamples: int
    max_depth_reached: int
    wall_time_seconds: float


def max_refinement_depth(partition_tol: float) -> int:
    """Depth at which boundary refinement stops: ⌈log₂(1/√partition_tol)⌉."""
    if not (0.0 < partition_tol <= 1.0):
        raise ValueError("partition_tol must be in (0, 1]")
    return max(0, math.ceil(-0.5 * math.log2(partition_tol)))


def normalize_scene(scene: Scene) -> tuple[Scene, float]:
    """Rescale a scene so the polygon has diameter 1.

    Translates the polygon's bounding-box corner to the origin and divides
    every coordinate by the polygon diameter ``L``; areas computed on the
    normalized scene map back through multiplication by L².
    """
    verts = scene.polygon.vertices
    scale = polygon_diameter(verts)
    if not (scale > 0.0 and math.isfinite(scale)):
        raise SceneError("polygon has zero or non-finite diameter")
    inv = 1.0 / scale
    tx = float(verts[:, 0].min())
    ty = float(verts[:, 1].min())
    new_verts = (verts - (tx, ty)) * inv
    circles = tuple(
        Circle(Point((c.center.x - tx) * inv, (c.center.y - ty) * inv), c.radius * inv)
        for c in scene.circles
    )
    return Scene(Polygon(new_verts), circles), scale


class _SceneData:
    """Array views of a scene shared by the batched refinement kernels."""

    __slots__ = ("verts", "cx", "cy", "r", "r2")

    def __init__(self, scene: Scene) -> None:
        self.verts = scene.polygon.vertices
        self.cx = np.array([c.center.x for c in scene.circles], dtype=np.float64)
        self.cy = np.array([c.center.y for c in scene.circles], dtype=np.float64)
        self.r = np.array([c.radius for c in scene.circles], dtype=np.float64)
        self.r2 = self.r * self.r


_CLASSIFY_CHUNK = 16384


def _classify_arrays(
    x0: np.ndarray, y0: np.ndarray, width: float, height: float, data: _SceneData
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Scene classification of axis-aligned cells given by min corners.

    Returns (labels, polygon_labels, inside, crossing): labels use
    0=exterior, 1=interior, 2=boundary; polygon_labels use 0/1/2 against the
    polygon alone; inside/crossing are per-cell-per-circle masks.
    """
    k = len(x0)
    if k > _CLASSIFY_CHUNK:
        parts = [
            _classify_arrays(
                x0[i : i + _CLASSIFY_CHUNK], y0[i : i + _CLASSIFY_CHUNK], width, height, data
            )
            for i in range(0, k, _CLASSIFY_CHUNK)
        ]
        return tuple(np.concatenate(col) for col in zip(*parts))  # type: ignore[return-value]
    inside, crossing = _rects_vs_circles(x0, y0, width, height, data.cx, data.cy, data.r)
    plabels = _rects_vs_polygon(x0, y0, width, height, data.verts)
    all_circles_out = ~(inside | crossing)
    exterior = (plabels == 0) | all_circles_out.all(axis=1)
    interior = (plabels == 1) & inside.any(axis=1) & ~crossing.any(axis=1)
    labels = np.full(k, 2, dtype=np.int8)
    labels[interior] = 1
    labels[exterior] = 0
    return labels, plabels, inside, crossing


@dataclass
class _Level:
    depth: int
    side: float
    x0: np.ndarray
    y0: np.ndarray
    codes: np.ndarray
    labels: np.ndarray
    plabels: np.ndarray
    inside: np.ndarray
    crossing: np.ndarray
    refine: np.ndarray


_QUAD_X = np.array([0.0, 1.0, 0.0, 1.0])
_QUAD_Y = np.array([0.0, 0.0, 1.0, 1.0])


def _root_square(scene: Scene) -> tuple[float, float, float]:
    """Smallest square covering the polygon bbox, anchored at its min corner.

    The covered region lies inside the polygon, so circles (which may stick
    far out of it) never enlarge the root.
    """
    verts = scene.polygon.vertices
    x_min = float(verts[:, 0].min())
    y_min = float(verts[:, 1].min())
    side = float(max(verts[:, 0].max() - x_min, verts[:, 1].max() - y_min))
    return x_min, y_min, side


def _refine_levels(scene: Scene, params: AqbfParams, data: _SceneData) -> list[_Level]:
    """Level-synchronous refinement: split every boundary cell until the
    depth cap; interior/exterior cells become leaves immediately."""
    depth_cap = max_refinement_depth(params.partition_tol)
    rx, ry, side = _root_square(scene)
    x0 = np.array([rx])
    y0 = np.array([ry])
    codes = np.zeros(1, dtype=np.int64)
    levels: list[_Level] = []
    for depth in range(depth_cap + 1):
        labels, plabels, inside, crossing = _classify_arrays(x0, y0, side, side, data)
        refine = (labels == 2) if depth < depth_cap else np.zeros(len(x0), dtype=bool)
        levels.append(
            _Level(depth, side, x0, y0, codes, labels, plabels, inside, crossing, refine)
        )
        if not refine.any():
            break
        half = side * 0.5
        px = np.repeat(x0[refine], 4)
        py = np.repeat(y0[refine], 4)
        pc = np.repeat(codes[refine], 4)
        quads = np.tile(np.arange(4, dtype=np.int64), int(refine.sum()))
        x0 = px + half * _QUAD_X[quads]
        y0 = py + half * _QUAD_Y[quads]
        codes = pc * 4 + quads
        side = half
    return levels


def classify_cell(cell: Cell, scene: Scene) -> RegionClass:
    """Classify a cell against the covered region P ∩ ∪C.

    Exterior when the cell misses the polygon or every circle; interior when
    it is inside the polygon, inside at least one circle, and crossed by no
    circle boundary; boundary otherwise.
    """
    data = _SceneData(scene)
    labels, _, _, _ = _classify_arrays(
        np.array([cell.x_min]), np.array([cell.y_min]), cell.side, cell.side, data
    )
    return (RegionClass.OUTSIDE, RegionClass.INSIDE, RegionClass.BOUNDARY)[int(labels[0])]


def cell_coverage(cell: Cell, scene: Scene) -> CellCoverageInfo:
    """Coverage bookkeeping for one cell: containing/crossing circles, summed
    inverse radii of the crossers, and the exact cell ∩ polygon area."""
    data = _SceneData(scene)
    x0 = np.array([cell.x_min])
    y0 = np.array([cell.y_min])
    _, plabels, inside, crossing = _classify_arrays(x0, y0, cell.side, cell.side, data)
    containing = tuple(int(i) for i in np.nonzero(inside[0])[0])
    crossers = np.nonzero(crossing[0])[0]
    curvature = float(np.sum(1.0 / data.r[crossers]))
    plabel = int(plabels[0])
    if plabel == 1:
        area_in_poly = cell.area
    elif plabel == 2:
        area_in_poly = _clip_area(data.verts, cell.x_min, cell.x_max, cell.y_min, cell.y_max)
    else:
        area_in_poly = 0.0
    return CellCoverageInfo(
        containing=containing,
        crossing=tuple(int(i) for i in crossers),
        curvature_sum=curvature,
        area_in_polygon=area_in_poly,
    )


def subsample_count(info: CellCoverageInfo, cell: Cell, params: AqbfParams) -> int:
    """Monte Carlo budget for a multi-circle boundary cell.

    ⌈sample_factor · multiplicity · curvature_sum · Area(cell) /
    sampling_tol²⌉, floored at ``min_samples`` and capped at ``max_samples``.
    Meaningful in normalized coordinates (see :func:`normalize_scene`).
    """
    raw = (
        params.sample_factor
        * info.multiplicity
        * info.curvature_sum
        * cell.area
        / (params.sampling_tol * params.sampling_tol)
    )
    if not math.isfinite(raw) or raw >= params.max_samples:
        return params.max_samples
    return min(params.max_samples, max(params.min_samples, math.ceil(raw)))


def _mc_cell_estimate(
    x0: float,
    y0: float,
    width: float,
    height: float,
    n_samples: int,
    rng: np.random.Generator,
    data: _SceneData,
    circle_indices: np.ndarray,
    needs_polygon_test: bool,
) -> float:
    """Shared Monte Carlo kernel: fraction of uniform cell points lying in
    the polygon and in the union of the given circles, times the cell area."""
    pts = rng.random((n_samples, 2))
    px = x0 + width * pts[:, 0]
    py = y0 + height * pts[:, 1]
    covered = np.zeros(n_samples, dtype=bool)
    for k in circle_indices:
        dx = px - data.cx[k]
        dy = py - data.cy[k]
        covered |= dx * dx + dy * dy <= data.r2[k]
    if needs_polygon_test:
        covered &= points_in_polygon(np.column_stack([px, py]), data.verts)
    return (width * height) * (np.count_nonzero(covered) / n_samples)


def _single_circle_area(
    k: int, plabel: int, x_min: float, y_min: float, x_max: float, y_max: float,
    data: _SceneData,
) -> float:
    """Exact Area(cell ∩ P ∩ circle k) for a cell crossed by circle k alone."""
    if plabel == 1:
        return float(
            _disk_rect_area(
                data.cx[k : k + 1], data.cy[k : k + 1], data.r[k : k + 1],
                np.array([x_min]), np.array([x_max]),
                np.array([y_min]), np.array([y_max]),
            )[0]
        )
    ring = _clip_ring(data.verts, x_min, x_max, y_min, y_max)
    if ring.shape[0] < 3:
        return 0.0
    return _poly_circle_area(ring, float(data.cx[k]), float(data.cy[k]), float(data.r[k]))


def _mc_circle_indices(inside_row: np.ndarray, crossing_row: np.ndarray) -> np.ndarray:
    union = np.nonzero(inside_row | crossing_row)[0]
    return union


def _boundary_leaf_value(
    x_min: float,
    y_min: float,
    x_max: float,
    y_max: float,
    plabel: int,
    inside_row: np.ndarray,
    crossing_row: np.ndarray,
    data: _SceneData,
    params: AqbfParams,
    rng: np.random.Generator,
) -> tuple[float, int]:
    """Contribution of one boundary leaf and the subsamples it spent.

    Mirrors the vectorized engine branch for branch: full coverage, single
    crossing circle, then multi-circle Monte Carlo.
    """
    width = x_max - x_min
    height = y_max - y_min
    area = width * height
    n_in = int(np.count_nonzero(inside_row))
    n_cross = int(np.count_nonzero(crossing_row))

    def area_in_polygon() -> float:
        if plabel == 1:
            return area
        if plabel == 2:
            return _clip_area(data.verts, x_min, x_max, y_min, y_max)
        return 0.0

    if params.multiplicity_weighted:
        if n_cross == 0:
            return n_in * area_in_polygon(), 0
    else:
        if n_in > 0:
            return area_in_polygon(), 0
        if n_cross == 0:
            return 0.0, 0

    if n_cross == 1:
        k = int(np.argmax(crossing_row))
        return _single_circle_area(k, plabel, x_min, y_min, x_max, y_max, data), 0

    crossers = np.nonzero(crossing_row)[0]
    info = CellCoverageInfo(
        containing=tuple(int(i) for i in np.nonzero(inside_row)[0]),
        crossing=tuple(int(i) for i in crossers),
        curvature_sum=float(np.sum(1.0 / data.r[crossers])),
        area_in_polygon=0.0,
    )
    n = subsample_count(info, Cell(x_min, x_max, y_min, y_max), params)
    value = _mc_cell_estimate(
        x_min, y_min, width, height, n, rng, data,
        _mc_circle_indices(inside_row, crossing_row), plabel == 2,
    )
    return value, n


def cell_contribution(
    cell: Cell, scene: Scene, params: AqbfParams, rng_stream: np.random.Generator
) -> float:
    """Area contribution of a single leaf cell.

    Interior leaves contribute their full area, exterior leaves nothing.
    Boundary leaves resolve in order: fully contained in some circle → exact
    cell ∩ polygon area; crossed by exactly one circle → closed-form disk
    integration of cell ∩ polygon ∩ circle; several crossers → Monte Carlo
    from ``rng_stream`` over the circles touching the cell. Expects the
    normalized coordinates that :func:`compute_area` uses internally.
    """
    data = _SceneData(scene)
    x0 = np.array([cell.x_min])
    y0 = np.array([cell.y_min])
    labels, plabels, inside, crossing = _classify_arrays(x0, y0, cell.side, cell.side, data)
    label = int(labels[0])
    if label == 0:
        return 0.0
    if label == 1:
        return cell.area
    value, _ = _boundary_leaf_value(
        cell.x_min, cell.y_min, cell.x_max, cell.y_max,
        int(plabels[0]), inside[0], crossing[0], data, params, rng_stream,
    )
    return value


def partition(scene: Scene, params: AqbfParams) -> QuadNode:
    """Build the refinement tree for a scene, in the scene's own coordinates.

    The root is the smallest square covering the polygon's bounding box;
    boundary cells split into four until the depth cap ⌈log₂(1/√ε)⌉ is
    reached, so the deepest leaves sit at exactly that depth whenever any
    boundary survives to the bottom.
    """
    data = _SceneData(scene)
    levels = _refine_levels(scene, params, data)
    label_map = (RegionClass.OUTSIDE, RegionClass.INSIDE, RegionClass.BOUNDARY)
    children_below: list[QuadNode] = []
    for level in reversed(levels):
        x1 = level.x0 + level.side
        y1 = level.y0 + level.side
        nodes: list[QuadNode] = []
        taken = 0
        for i in range(len(level.x0)):
            if level.refine[i]:
                kids = tuple(children_below[taken : taken + 4])
                taken += 4
            else:
                kids = ()
            nodes.append(
                QuadNode(
                    cell=Cell(float(level.x0[i]), float(x1[i]), float(level.y0[i]), float(y1[i])),
                    depth=level.depth,
                    classification=label_map[int(level.labels[i])],
                    children=kids,
                )
            )
        children_below = nodes
    return children_below[0]


def _evaluate_boundary_leaves(
    level: _Level,
    leaf_positions: np.ndarray,
    values: np.ndarray,
    data: _SceneData,
    params: AqbfParams,
) -> int:
    """Fill contributions of the boundary leaves of one level into ``values``
    (indexed like ``leaf_positions``); returns subsamples spent.

    Vectorizes the two dominant branches (full coverage and single-circle
    inside the polygon) and loops only over clipped and Monte Carlo cells.
    """
    labels = level.labels[leaf_positions]
    bpos = np.nonzero(labels == 2)[0]
    if len(bpos) == 0:
        return 0
    sel = leaf_positions[bpos]
    x0 = level.x0[sel]
    y0 = level.y0[sel]
    x1 = x0 + level.side
    y1 = y0 + level.side
    width = x1 - x0
    height = y1 - y0
    area = width * height
    pl = level.plabels[sel]
    inside = level.inside[sel]
    crossing = level.crossing[sel]
    n_in = inside.sum(axis=1)
    n_cross = crossing.sum(axis=1)
    bvalues = np.zeros(len(bpos), dtype=np.float64)

    if params.multiplicity_weighted:
        full = n_cross == 0
        weight = n_in.astype(np.float64)
    else:
        full = n_in > 0
        weight = np.ones(len(bpos), dtype=np.float64)
    single = (n_cross == 1) & ~full
    multi = (n_cross >= 2) & ~full

    full_in = full & (pl == 1)
    bvalues[full_in] = weight[full_in] * area[full_in]
    for j in np.nonzero(full & (pl == 2))[0]:
        bvalues[j] = weight[j] * _clip_area(
            data.verts, float(x0[j]), float(x1[j]), float(y0[j]), float(y1[j])
        )

    single_in = single & (pl == 1)
    if single_in.any():
        k = np.argmax(crossing[single_in], axis=1)
        bvalues[single_in] = _disk_rect_area(
            data.cx[k], data.cy[k], data.r[k],
            x0[single_in], x1[single_in], y0[single_in], y1[single_in],
        )
    for j in np.nonzero(single & (pl == 2))[0]:
        k = int(np.argmax(crossing[j]))
        bvalues[j] = _single_circle_area(
            k, 2, float(x0[j]), float(y0[j]), float(x1[j]), float(y1[j]), data
        )

    spent = 0
    for j in np.nonzero(multi)[0]:
        crossers = np.nonzero(crossing[j])[0]
        info = CellCoverageInfo(
            containing=tuple(int(i) for i in np.nonzero(inside[j])[0]),
            crossing=tuple(int(i) for i in crossers),
            curvature_sum=float(np.sum(1.0 / data.r[crossers])),
            area_in_polygon=0.0,
        )
        n = subsample_count(
            info, Cell(float(x0[j]), float(x1[j]), float(y0[j]), float(y1[j])), params
        )
        rng = substream(params.seed, level.depth, int(level.codes[sel[j]]))
        bvalues[j] = _mc_cell_estimate(
            float(x0[j]), float(y0[j]), float(width[j]), float(height[j]), n, rng, data,
            _mc_circle_indices(inside[j], crossing[j]), int(pl[j]) == 2,
        )
        spent += n

    values[bpos] = bvalues
    return spent


def compute_area(scene: Scene, params: AqbfParams | None = None) -> AreaResult:
    """Estimate Area(P ∩ ∪C) by adaptive refinement with boundary focusing.

    Deterministic for a fixed (scene, params): every sampling leaf draws
    from a substream keyed by (seed, depth, quadrant path) and contributions
    are summed in canonical depth-first leaf order.
    """
    if params is None:
        params = AqbfParams()
    t_start = time.perf_counter()
    normalized, scale = normalize_scene(scene)
    data = _SceneData(normalized)
    levels = _refine_levels(normalized, params, data)
    depth_cap = max_refinement_depth(params.partition_tol)

    contributions: list[np.ndarray] = []
    span_keys: list[np.ndarray] = []
    n_interior = 0
    n_exterior = 0
    n_boundary = 0
    total_subsamples = 0

    for level in levels:
        leaf_positions = np.nonzero(~level.refine)[0]
        if len(leaf_positions) == 0:
            continue
        labels = level.labels[leaf_positions]
        values = np.zeros(len(leaf_positions), dtype=np.float64)

        interior = labels == 1
        if interior.any():
            pos = leaf_positions[interior]
            x0 = level.x0[pos]
            y0 = level.y0[pos]
            values[interior] = ((x0 + level.side) - x0) * ((y0 + level.side) - y0)
        n_interior += int(interior.sum())
        n_exterior += int((labels == 0).sum())
        n_boundary += int((labels == 2).sum())

        total_subsamples += _evaluate_boundary_leaves(level, leaf_positions, values, data, params)

        contributions.append(values)
        span_keys.append(level.codes[leaf_positions] * (4 ** (depth_cap - level.depth)))

    all_values = np.concatenate(contributions)
    all_keys = np.concatenate(span_keys)
    order = np.argsort(all_keys, kind="stable")
    total = float(np.sum(all_values[order]))

    return AreaResult(
        area=scale * scale * total,
        n_leaf=len(all_values),
        n_interior=n_interior,
        n_boundary=n_boundary,
        n_exterior=n_exterior,
        total_subsamples=total_subsamples,
        max_depth_reached=levels[-1].depth,
        wall_time_seconds=time.perf_counter() - t_start,
    )
