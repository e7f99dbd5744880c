"""Planar primitives for scenes built from one simple polygon and many circles.

Every estimator in the package reduces to a small set of exact predicates and
areas on points, segments, axis-aligned cells, arcs, and disks. They live
here: in scalar form for single queries, and in private vectorized form used
by the batched quadtree refinement and the grid baselines.

Conventions:

- polygons are simple, counterclockwise, stored as ``(m, 2)`` float64 arrays;
- predicates treat boundaries as inclusive unless noted otherwise;
- cell classifications are conservative: a cell is labeled INSIDE or OUTSIDE
  only when the relation is certain, and BOUNDARY whenever in doubt, so a
  wrong-side misclassification is never possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidCircleError, InvalidPolygonError

__all__ = [
    "Point",
    "Circle",
    "Polygon",
    "Rect",
    "Cell",
    "RegionClass",
    "Scene",
    "signed_area",
    "polygon_diameter",
    "point_in_polygon",
    "points_in_polygon",
    "is_simple_polygon",
    "classify_cell_vs_circle",
    "classify_cell_vs_polygon",
    "clip_polygon_to_cell",
    "segment_circle_intersections",
    "circle_circle_intersection_angles",
    "polygon_circle_area",
]

TWO_PI = 2.0 * math.pi


class Point(NamedTuple):
    """A point in the plane."""

    x: float
    y: float


@dataclass(frozen=True)
class Circle:
    """A circle given by center and positive radius."""

    center: Point
    radius: float

    def __post_init__(self) -> None:
        cx, cy = self.center
        if not (math.isfinite(cx) and math.isfinite(cy)):
            raise InvalidCircleError(f"non-finite circle center {self.center!r}")
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise InvalidCircleError(f"circle radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "center", Point(float(cx), float(cy)))
        object.__setattr__(self, "radius", float(self.radius))


@dataclass(frozen=True, eq=False)
class Polygon:
    """A simple polygon with counterclockwise vertex order.

    Construction checks vertex count, finiteness, consecutive duplicates, and
    orientation. The quadratic simplicity check is intentionally separate
    (:func:`is_simple_polygon`); loaders run it, hot paths do not.
    """

    vertices: np.ndarray

    def __post_init__(self) -> None:
        verts = np.asarray(self.vertices, dtype=np.float64)
        if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
            raise InvalidPolygonError("polygon needs an (m, 2) array with m >= 3")
        if not np.all(np.isfinite(verts)):
            raise InvalidPolygonError("polygon vertices must be finite")
        if np.any(np.all(verts == np.roll(verts, -1, axis=0), axis=1)):
            raise InvalidPolygonError("polygon has repeated consecutive vertices")
        if signed_area(verts) <= 0.0:
            raise InvalidPolygonError("polygon must be counterclockwise with positive area")
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    def __len__(self) -> int:
        return int(self.vertices.shape[0])


@dataclass(frozen=True)
class Rect:
    """An axis-aligned rectangle (used for scene bounding boxes)."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("rectangle must have positive extent")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min


@dataclass(frozen=True)
class Cell:
    """A square axis-aligned cell of the quadtree."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        w = self.x_max - self.x_min
        h = self.y_max - self.y_min
        if not (w > 0.0 and h > 0.0):
            raise ValueError("cell must have positive extent")
        if abs(w - h) > 1e-12 * max(w, h):
            raise ValueError("cell must be square")

    @property
    def side(self) -> float:
        return self.x_max - self.x_min

    @property
    def area(self) -> float:
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)


class RegionClass(Enum):
    """Relation of a cell to a region: certainly inside, certainly outside,
    or crossed by the region's boundary."""

    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY = "boundary"


@dataclass(frozen=True, eq=False)
class Scene:
    """A simple polygon together with a finite set of circles."""

    polygon: Polygon
    circles: tuple[Circle, ...]

    def __post_init__(self) -> None:
        circles = tuple(self.circles)
        for c in circles:
            if not isinstance(c, Circle):
                raise InvalidCircleError(f"expected Circle, got {type(c).__name__}")
        object.__setattr__(self, "circles", circles)

    @property
    def bbox(self) -> Rect:
        """Smallest axis-aligned rectangle covering the polygon and every disk."""
        verts = self.polygon.vertices
        x_min = float(verts[:, 0].min())
        x_max = float(verts[:, 0].max())
        y_min = float(verts[:, 1].min())
        y_max = float(verts[:, 1].max())
        for c in self.circles:
            x_min = min(x_min, c.center.x - c.radius)
            x_max = max(x_max, c.center.x + c.radius)
            y_min = min(y_min, c.center.y - c.radius)
            y_max = max(y_max, c.center.y + c.radius)
        return Rect(x_min, x_max, y_min, y_max)


def _vertex_array(polygon: Polygon | np.ndarray | Sequence) -> np.ndarray:
    if isinstance(polygon, Polygon):
        return polygon.vertices
    verts = np.asarray(polygon, dtype=np.float64)
    if verts.ndim != 2 or verts.shape[1] != 2 or verts.shape[0] < 3:
        raise InvalidPolygonError("expected an (m, 2) vertex array with m >= 3")
    return verts


def signed_area(polygon: Polygon | np.ndarray | Sequence) -> float:
    """Shoelace signed area: positive for counterclockwise vertex order."""
    v = _vertex_array(polygon)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_diameter(polygon: Polygon | np.ndarray | Sequence) -> float:
    """Largest pairwise vertex distance, by exact O(m^2) comparison."""
    v = _vertex_array(polygon)
    d2_max = 0.0
    # Row-chunked broadcast keeps memory flat for coastline-sized inputs.
    step = max(1, int(4_000_000 // max(len(v), 1)))
    for i in range(0, len(v), step):
        block = v[i : i + step]
        dx = block[:, None, 0] - v[None, :, 0]
        dy = block[:, None, 1] - v[None, :, 1]
        d2 = dx * dx + dy * dy
        d2_max = max(d2_max, float(d2.max()))
    return math.sqrt(d2_max)


def points_in_polygon(points: np.ndarray, polygon: Polygon | np.ndarray) -> np.ndarray:
    """Vectorized even-odd crossing test for many points.

    Points exactly on the boundary may land on either side; callers that need
    boundary-inclusive semantics for a single point use
    :func:`point_in_polygon` instead.
    """
    v = _vertex_array(polygon)
    pts = np.asarray(points, dtype=np.float64)
    squeeze = pts.ndim == 1
    pts = np.atleast_2d(pts)
    px, py = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    x1, y1 = v[:, 0], v[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    for i in range(len(v)):
        crosses = (y1[i] > py) != (y2[i] > py)
        if not crosses.any():
            continue
        x_at = x1[i] + (py - y1[i]) * (x2[i] - x1[i]) / (y2[i] - y1[i])
        inside ^= crosses & (px < x_at)
    return inside[0] if squeeze else inside


def point_in_polygon(
    point: Point | Sequence[float],
    polygon: Polygon | np.ndarray,
    tol: float | None = None,
) -> bool:
    """Boundary-inclusive point-in-polygon test.

    A point within ``tol`` of an edge counts as inside; ``tol`` defaults to
    1e-12 times the polygon bounding-box diagonal.
    """
    v = _vertex_array(polygon)
    px, py = float(point[0]), float(point[1])
    if tol is None:
        spans = v.max(axis=0) - v.min(axis=0)
        tol = 1e-12 * math.hypot(float(spans[0]), float(spans[1]))
    ax, ay = v[:, 0], v[:, 1]
    bx, by = np.roll(ax, -1), np.roll(ay, -1)
    ex, ey = bx - ax, by - ay
    wx, wy = px - ax, py - ay
    seg_len2 = ex * ex + ey * ey
    t = np.clip((wx * ex + wy * ey) / np.where(seg_len2 == 0.0, 1.0, seg_len2), 0.0, 1.0)
    dx = wx - t * ex
    dy = wy - t * ey
    if float(np.min(dx * dx + dy * dy)) <= tol * tol:
        return True
    return bool(points_in_polygon(np.array([[px, py]]), v)[0])


def is_simple_polygon(polygon: Polygon | np.ndarray) -> bool:
    """True iff no two non-adjacent edges intersect or touch.

    Exact brute-force check over all edge pairs; quadratic, meant for
    validation at load/generation time rather than inner loops.
    """
    v = _vertex_array(polygon)
    m = len(v)
    a = v
    b = np.roll(v, -1, axis=0)
    i_idx, j_idx = np.triu_indices(m, k=1)
    adjacent = (j_idx - i_idx == 1) | ((i_idx == 0) & (j_idx == m - 1))
    i_idx, j_idx = i_idx[~adjacent], j_idx[~adjacent]
    if len(i_idx) == 0:
        return True
    p, q = a[i_idx], b[i_idx]
    r, s = a[j_idx], b[j_idx]

    def orient(o, u, w):
        return (u[:, 0] - o[:, 0]) * (w[:, 1] - o[:, 1]) - (u[:, 1] - o[:, 1]) * (w[:, 0] - o[:, 0])

    d1 = orient(p, q, r)
    d2 = orient(p, q, s)
    d3 = orient(r, s, p)
    d4 = orient(r, s, q)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0)) & (d1 != 0) & (d2 != 0) & (d3 != 0) & (d4 != 0)
    if proper.any():
        return False

    def on_segment(o, e, w, d):
        collinear = d == 0.0
        within = (
            (w[:, 0] >= np.minimum(o[:, 0], e[:, 0]))
            & (w[:, 0] <= np.maximum(o[:, 0], e[:, 0]))
            & (w[:, 1] >= np.minimum(o[:, 1], e[:, 1]))
            & (w[:, 1] <= np.maximum(o[:, 1], e[:, 1]))
        )
        return collinear & within

    touching = (
        on_segment(p, q, r, d1)
        | on_segment(p, q, s, d2)
        | on_segment(r, s, p, d3)
        | on_segment(r, s, q, d4)
    )
    return not bool(touching.any())


# ---------------------------------------------------------------------------
# Cell classification (scalar wrappers around the vectorized kernels below)
# ---------------------------------------------------------------------------


def classify_cell_vs_circle(cell: Cell, circle: Circle) -> RegionClass:
    """INSIDE iff the whole cell is within the disk, OUTSIDE iff the whole
    cell is outside it; ties (tangency through a corner or an edge) resolve
    to the certain side when exact, BOUNDARY otherwise."""
    x0 = np.array([cell.x_min])
    y0 = np.array([cell.y_min])
    inside, cross = _rects_vs_circles(
        x0, y0, cell.side, cell.side,
        np.array([circle.center.x]), np.array([circle.center.y]), np.array([circle.radius]),
    )
    if inside[0, 0]:
        return RegionClass.INSIDE
    if cross[0, 0]:
        return RegionClass.BOUNDARY
    return RegionClass.OUTSIDE


def classify_cell_vs_polygon(cell: Cell, polygon: Polygon | np.ndarray) -> RegionClass:
    """Conservative cell-vs-polygon classification, exact in area.

    INSIDE means Area(cell ∩ P) = Area(cell): all four corners inside the
    closed polygon and no edge passing through the cell's open interior (an
    edge running along the cell border does not disqualify). OUTSIDE means
    the intersection has zero area: every corner strictly outside, no edge
    touching the closed cell, and no polygon vertex inside it (which catches
    a polygon wholly contained in the cell). Everything else is BOUNDARY.
    """
    v = _vertex_array(polygon)
    labels = _rects_vs_polygon(
        np.array([cell.x_min]), np.array([cell.y_min]), cell.side, cell.side, v
    )
    return (RegionClass.OUTSIDE, RegionClass.INSIDE, RegionClass.BOUNDARY)[int(labels[0])]


def _rects_vs_circles(
    x0: np.ndarray,
    y0: np.ndarray,
    hx: float,
    hy: float,
    cx: np.ndarray,
    cy: np.ndarray,
    cr: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """For each (rect, circle) pair: is the rect fully inside the disk, and
    does the circle boundary meet the rect. Shapes (k, n)."""
    x1 = x0 + hx
    y1 = y0 + hy
    dx_near = np.maximum(np.maximum(x0[:, None] - cx[None, :], cx[None, :] - x1[:, None]), 0.0)
    dy_near = np.maximum(np.maximum(y0[:, None] - cy[None, :], cy[None, :] - y1[:, None]), 0.0)
    near2 = dx_near * dx_near + dy_near * dy_near
    dx_far = np.maximum(np.abs(cx[None, :] - x0[:, None]), np.abs(cx[None, :] - x1[:, None]))
    dy_far = np.maximum(np.abs(cy[None, :] - y0[:, None]), np.abs(cy[None, :] - y1[:, None]))
    far2 = dx_far * dx_far + dy_far * dy_far
    r2 = (cr * cr)[None, :]
    inside = far2 <= r2
    outside = (near2 >= r2) & ~inside
    cross = ~inside & ~outside
    return inside, cross


def _segments_hit_rects(
    x1: np.ndarray, y1: np.ndarray, x2: np.ndarray, y2: np.ndarray,
    rx0: np.ndarray, rx1: np.ndarray, ry0: np.ndarray, ry1: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Liang-Barsky segment-vs-rect tests.

    Returns two masks: a closed-rect hit (touching counts) and an
    open-interior hit (the clipped piece has positive length and does not
    run along a rect border line).
    """
    dx = x2 - x1
    dy = y2 - y1
    t0 = np.zeros_like(x1)
    t1 = np.ones_like(x1)
    ok = np.ones(x1.shape, dtype=bool)
    for p, q in ((-dx, x1 - rx0), (dx, rx1 - x1), (-dy, y1 - ry0), (dy, ry1 - y1)):
        with np.errstate(divide="ignore", invalid="ignore"):
            r = q / p
        neg = p < 0
        pos = p > 0
        t0 = np.where(neg, np.maximum(t0, r), t0)
        t1 = np.where(pos, np.minimum(t1, r), t1)
        ok &= ~((p == 0) & (q < 0))
    closed = ok & (t0 <= t1)
    on_border_line = ((dx == 0.0) & ((x1 == rx0) | (x1 == rx1))) | (
        (dy == 0.0) & ((y1 == ry0) | (y1 == ry1))
    )
    open_interior = ok & (t0 < t1) & ~on_border_line
    return closed, open_interior


def _points_on_polygon_edges(px: np.ndarray, py: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Exact test for points lying on some polygon edge (zero cross product
    inside the edge's bounding box). Complements the parity test, which is
    unreliable exactly on the boundary."""
    on = np.zeros(px.shape, dtype=bool)
    vx, vy = verts[:, 0], verts[:, 1]
    wx, wy = np.roll(vx, -1), np.roll(vy, -1)
    for i in range(len(verts)):
        cross = (wx[i] - vx[i]) * (py - vy[i]) - (wy[i] - vy[i]) * (px - vx[i])
        within = (
            (px >= min(vx[i], wx[i])) & (px <= max(vx[i], wx[i]))
            & (py >= min(vy[i], wy[i])) & (py <= max(vy[i], wy[i]))
        )
        on |= (cross == 0.0) & within
    return on


def _rects_vs_polygon(
    x0: np.ndarray, y0: np.ndarray, hx: float, hy: float, verts: np.ndarray
) -> np.ndarray:
    """Label each rect against the polygon: 0 outside, 1 inside, 2 boundary.

    Inside/outside are exact up to zero-area contact: corners on the
    boundary count as inside, and edges running along a rect border do not
    demote an otherwise-interior rect.
    """
    k = len(x0)
    x1 = x0 + hx
    y1 = y0 + hy

    corners_x = np.concatenate([x0, x1, x0, x1])
    corners_y = np.concatenate([y0, y0, y1, y1])
    parity = points_in_polygon(np.column_stack([corners_x, corners_y]), verts)
    on_edge = _points_on_polygon_edges(corners_x, corners_y, verts)
    corner_in = (parity | on_edge).reshape(4, k)
    all_in = corner_in.all(axis=0)
    none_in = ~corner_in.any(axis=0)

    vx, vy = verts[:, 0], verts[:, 1]
    vertex_in = (
        (vx[None, :] >= x0[:, None]) & (vx[None, :] <= x1[:, None])
        & (vy[None, :] >= y0[:, None]) & (vy[None, :] <= y1[:, None])
    ).any(axis=1)

    ex0, ey0 = vx, vy
    ex1, ey1 = np.roll(vx, -1), np.roll(vy, -1)
    ebx0, ebx1 = np.minimum(ex0, ex1), np.maximum(ex0, ex1)
    eby0, eby1 = np.minimum(ey0, ey1), np.maximum(ey0, ey1)
    overlap = (
        (ebx0[None, :] <= x1[:, None]) & (ebx1[None, :] >= x0[:, None])
        & (eby0[None, :] <= y1[:, None]) & (eby1[None, :] >= y0[:, None])
    )
    edge_touch = np.zeros(k, dtype=bool)
    edge_cross = np.zeros(k, dtype=bool)
    ci, ei = np.nonzero(overlap)
    if len(ci):
        closed, open_interior = _segments_hit_rects(
            ex0[ei], ey0[ei], ex1[ei], ey1[ei],
            x0[ci], x1[ci], y0[ci], y1[ci],
        )
        np.logical_or.at(edge_touch, ci[closed], True)
        np.logical_or.at(edge_cross, ci[open_interior], True)

    labels = np.full(k, 2, dtype=np.int8)
    labels[all_in & ~edge_cross] = 1
    labels[none_in & ~edge_touch & ~vertex_in] = 0
    return labels


# ---------------------------------------------------------------------------
# Clipping
# ---------------------------------------------------------------------------


def _clip_ring(verts: np.ndarray, x0: float, x1: float, y0: float, y1: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a ring to an axis-aligned rectangle.

    Non-convex subjects may come back with doubled bridge edges; those cancel
    exactly in any signed-area or arc-decomposition use downstream.
    """
    ring = verts
    for axis, bound, keep_le in ((0, x1, True), (0, x0, False), (1, y1, True), (1, y0, False)):
        n = ring.shape[0]
        if n == 0:
            return ring
        v = ring[:, axis]
        inside = (v <= bound) if keep_le else (v >= bound)
        if inside.all():
            continue
        if not inside.any():
            return ring[:0]
        prev = np.concatenate([ring[-1:], ring[:-1]])
        pv = prev[:, axis]
        prev_inside = np.concatenate([inside[-1:], inside[:-1]])
        denom = v - pv
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (bound - pv) / denom
        t = np.where(denom == 0.0, 0.0, t)
        crossings = prev + t[:, None] * (ring - prev)
        crossings[:, axis] = bound
        emit_cross = inside != prev_inside
        buf = np.empty((2 * n, 2), dtype=np.float64)
        take = np.empty(2 * n, dtype=bool)
        buf[0::2] = crossings
        buf[1::2] = ring
        take[0::2] = emit_cross
        take[1::2] = inside
        ring = buf[take]
    return ring


def _clip_area(verts: np.ndarray, x0: float, x1: float, y0: float, y1: float) -> float:
    ring = _clip_ring(verts, x0, x1, y0, y1)
    if ring.shape[0] < 3:
        return 0.0
    x, y = ring[:, 0], ring[:, 1]
    xn = np.concatenate([x[1:], x[:1]])
    yn = np.concatenate([y[1:], y[:1]])
    area = 0.5 * float(np.sum(x * yn - xn * y))
    return max(area, 0.0)


def clip_polygon_to_cell(polygon: Polygon | np.ndarray, cell: Cell) -> float:
    """Exact area of ``polygon`` ∩ ``cell``."""
    v = _vertex_array(polygon)
    return _clip_area(v, cell.x_min, cell.x_max, cell.y_min, cell.y_max)


# ---------------------------------------------------------------------------
# Segment/circle and circle/circle intersections
# ---------------------------------------------------------------------------


def _seg_circle_ts(
    ax: float, ay: float, bx: float, by: float, cx: float, cy: float, r: float
) -> tuple[float, ...]:
    """Parameters t in [0, 1] where the segment meets the circle |p| = r."""
    dx = bx - ax
    dy = by - ay
    wx = ax - cx
    wy = ay - cy
    a = dx * dx + dy * dy
    if a == 0.0:
        return ()
    b = 2.0 * (dx * wx + dy * wy)
    c = wx * wx + wy * wy - r * r
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return ()
    if disc == 0.0:
        t = -b / (2.0 * a)
        return (t,) if 0.0 <= t <= 1.0 else ()
    sq = math.sqrt(disc)
    # Citardauq pairing avoids cancellation for small roots.
    q = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else 0.5 * sq
    t_pair = sorted((q / a, c / q if q != 0.0 else 0.0))
    return tuple(t for t in t_pair if 0.0 <= t <= 1.0)


def segment_circle_intersections(
    p1: Point | Sequence[float], p2: Point | Sequence[float], circle: Circle
) -> list[float]:
    """Sorted parameters ``t`` in [0, 1] where segment p1→p2 crosses the circle."""
    ts = _seg_circle_ts(
        float(p1[0]), float(p1[1]), float(p2[0]), float(p2[1]),
        circle.center.x, circle.center.y, circle.radius,
    )
    return list(ts)


def circle_circle_intersection_angles(c1: Circle, c2: Circle) -> tuple[list[float], bool]:
    """Angles on ``c1`` (in [0, 2π)) where the two circle boundaries cross.

    Returns ``(angles, degenerate)``. Identical circles are degenerate: they
    intersect everywhere, signaled by an empty list with the flag set.
    Disjoint, nested, and externally/internally tangent pairs return no
    angles (tangency is a measure-zero contact).
    """
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    if d == 0.0 and c1.radius == c2.radius:
        return [], True
    if d >= c1.radius + c2.radius or d <= abs(c1.radius - c2.radius):
        return [], False
    cos_half = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d * c1.radius)
    half = math.acos(min(1.0, max(-1.0, cos_half)))
    base = math.atan2(dy, dx)
    angles = sorted(((base - half) % TWO_PI, (base + half) % TWO_PI))
    return angles, False


# ---------------------------------------------------------------------------
# Exact polygon/disk intersection area
# ---------------------------------------------------------------------------


def _wedge_area(ax: float, ay: float, bx: float, by: float, r: float) -> float:
    """Signed area of disk(origin, r) ∩ triangle(origin, a, b).

    Splits the chord a→b at its circle crossings; pieces inside the disk
    contribute triangle area, pieces outside contribute circular sectors.
    Summed over a closed ring this yields the ring/disk intersection area,
    with containment and winding handled implicitly.
    """
    ts = _seg_circle_ts(ax, ay, bx, by, 0.0, 0.0, r)
    knots = (0.0,) + ts + (1.0,)
    dx = bx - ax
    dy = by - ay
    r2 = r * r
    total = 0.0
    for t0, t1 in zip(knots[:-1], knots[1:]):
        if t1 <= t0:
            continue
        px = ax + t0 * dx
        py = ay + t0 * dy
        qx = ax + t1 * dx
        qy = ay + t1 * dy
        tm = 0.5 * (t0 + t1)
        mx = ax + tm * dx
        my = ay + tm * dy
        cross = px * qy - py * qx
        if mx * mx + my * my <= r2:
            total += 0.5 * cross
        else:
            total += 0.5 * r2 * math.atan2(cross, px * qx + py * qy)
    return total


def _poly_circle_area(verts: np.ndarray, cx: float, cy: float, r: float) -> float:
    total = 0.0
    n = verts.shape[0]
    for i in range(n):
        ax = verts[i, 0] - cx
        ay = verts[i, 1] - cy
        j = i + 1 if i + 1 < n else 0
        bx = verts[j, 0] - cx
        by = verts[j, 1] - cy
        total += _wedge_area(ax, ay, bx, by, r)
    return float(max(total, 0.0))


def polygon_circle_area(polygon: Polygon | np.ndarray, circle: Circle) -> float:
    """Exact area of ``polygon`` ∩ ``disk(circle)``.

    Works for any simple polygon in any position relative to the disk,
    including full containment either way and disjoint layouts.
    """
    v = _vertex_array(polygon)
    return _poly_circle_area(v, circle.center.x, circle.center.y, circle.radius)


# ---------------------------------------------------------------------------
# Vectorized disk ∩ rectangle area (used by the single-circle fast path)
# ---------------------------------------------------------------------------


def _g_slice(t: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Antiderivative of the half-chord sqrt(r^2 - t^2), for t in [-r, r]."""
    t2 = np.clip(r * r - t * t, 0.0, None)
    return 0.5 * (t * np.sqrt(t2) + r * r * np.arcsin(np.clip(t / r, -1.0, 1.0)))


def _corner_area_nonneg(a: np.ndarray, b: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Area of disk(0, r) ∩ {x <= a, y <= b} for b >= 0."""
    a_cl = np.clip(a, -r, r)
    xb = np.sqrt(np.clip(r * r - b * b, 0.0, None))
    e1 = np.minimum(a_cl, -xb)
    e2 = np.clip(a_cl, -xb, xb)
    e3 = np.maximum(a_cl, xb)
    return (
        2.0 * (_g_slice(e1, r) - _g_slice(-r, r))
        + (_g_slice(e2, r) - _g_slice(-xb, r))
        + b * (e2 + xb)
        + 2.0 * (_g_slice(e3, r) - _g_slice(xb, r))
    )


def _corner_area(a: np.ndarray, b: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Area of disk(0, r) ∩ {x <= a, y <= b} for any signs."""
    pos = _corner_area_nonneg(a, np.abs(b), r)
    a_cl = np.clip(a, -r, r)
    half = 2.0 * (_g_slice(a_cl, r) - _g_slice(-r, r))
    return np.where(b >= 0.0, pos, half - pos)


def _disk_rect_area(
    cx: np.ndarray, cy: np.ndarray, r: np.ndarray,
    x0: np.ndarray, x1: np.ndarray, y0: np.ndarray, y1: np.ndarray,
) -> np.ndarray:
    """Exact area of disk ∩ rectangle, elementwise over matched arrays."""
    a0 = x0 - cx
    a1 = x1 - cx
    b0 = y0 - cy
    b1 = y1 - cy
    area = (
        _corner_area(a1, b1, r)
        - _corner_area(a0, b1, r)
        - _corner_area(a1, b0, r)
        + _corner_area(a0, b0, r)
    )
    return np.clip(area, 0.0, None)
