"""Exact area of polygon ∩ (union of disks) by boundary integration.

The intersection region Ω = P ∩ ∪ₖ Dₖ is bounded by two kinds of curves:
pieces of polygon edges that lie inside the disk union, and arcs of circle
boundaries that lie inside the polygon but outside every other disk. Green's
theorem turns Area(Ω) = ∮ ½(x dy − y dx) into a finite sum of closed-form
segment and arc contributions, so the result is exact up to floating-point
rounding. This module is the reference every estimator is measured against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .geometry import (
    TWO_PI,
    Point,
    Scene,
    circle_circle_intersection_angles,
    point_in_polygon,
    segment_circle_intersections,
)

__all__ = [
    "ArcInterval",
    "EdgePiece",
    "green_segment",
    "green_arc",
    "circle_boundary_arcs",
    "polygon_edge_pieces_in_union",
    "exact_area",
]


@dataclass(frozen=True)
class ArcInterval:
    """A maximal arc of one circle's boundary that bounds the covered region.

    Angles satisfy 0 ≤ theta_start < theta_end ≤ 2π; arcs wrapping through
    zero are stored split at 2π.
    """

    circle_index: int
    theta_start: float
    theta_end: float


@dataclass(frozen=True)
class EdgePiece:
    """A sub-segment of polygon edge ``edge_index``, parameterized by t in [0, 1]."""

    edge_index: int
    t_start: float
    t_end: float


def green_segment(p1: Point | Sequence[float], p2: Point | Sequence[float]) -> float:
    """Line-integral contribution ∮ ½(x dy − y dx) of the segment p1→p2."""
    return 0.5 * (float(p1[0]) * float(p2[1]) - float(p2[0]) * float(p1[1]))


def green_arc(
    center: Point | Sequence[float], radius: float,
    theta_start: float, theta_end: float,
) -> float:
    """Contribution of a counterclockwise arc of the circle (center, radius).

    Closed form of ∮ ½(x dy − y dx) along (cx + r cosθ, cy + r sinθ):
    ½[r²·Δθ + cx·r·(sinθ₂ − sinθ₁) − cy·r·(cosθ₂ − cosθ₁)].
    """
    cx, cy = float(center[0]), float(center[1])
    return 0.5 * (
        radius * radius * (theta_end - theta_start)
        + cx * radius * (math.sin(theta_end) - math.sin(theta_start))
        - cy * radius * (math.cos(theta_end) - math.cos(theta_start))
    )


def _geometric_tolerance(scene: Scene) -> float:
    bbox = scene.bbox
    return 1e-12 * math.hypot(bbox.width, bbox.height)


def circle_boundary_arcs(index: int, scene: Scene) -> list[ArcInterval]:
    """Arcs of circle ``index`` on the boundary of P ∩ ∪ₖ Dₖ.

    An arc qualifies when its points lie inside the closed polygon and
    outside every other open disk. Candidate endpoints are the angles where
    the circle meets another circle or a polygon edge; each sub-arc between
    consecutive events is kept or dropped wholesale by testing its midpoint,
    and adjacent kept sub-arcs are merged into maximal intervals (split only
    at 2π). When two circles coincide exactly, the lower index owns the
    shared boundary and the higher returns nothing.
    """
    circle = scene.circles[index]
    cx, cy, r = circle.center.x, circle.center.y, circle.radius
    tol = _geometric_tolerance(scene)

    blockers: list[int] = []
    events: list[float] = [0.0, TWO_PI]
    for j, other in enumerate(scene.circles):
        if j == index:
            continue
        angles, degenerate = circle_circle_intersection_angles(circle, other)
        if degenerate:
            if j < index:
                return []
            continue
        blockers.append(j)
        events.extend(angles)

    verts = scene.polygon.vertices
    m = verts.shape[0]
    for i in range(m):
        a = verts[i]
        b = verts[(i + 1) % m]
        for t in segment_circle_intersections((a[0], a[1]), (b[0], b[1]), circle):
            px = a[0] + t * (b[0] - a[0])
            py = a[1] + t * (b[1] - a[1])
            events.append(math.atan2(py - cy, px - cx) % TWO_PI)

    events = sorted(set(min(max(e, 0.0), TWO_PI) for e in events))

    arcs: list[ArcInterval] = []
    for t0, t1 in zip(events[:-1], events[1:]):
        if t1 - t0 <= 0.0:
            continue
        tm = 0.5 * (t0 + t1)
        px = cx + r * math.cos(tm)
        py = cy + r * math.sin(tm)
        if not point_in_polygon((px, py), scene.polygon, tol=tol):
            continue
        covered = False
        for j in blockers:
            other = scene.circles[j]
            dx = px - other.center.x
            dy = py - other.center.y
            if math.hypot(dx, dy) < other.radius - tol:
                covered = True
                break
        if covered:
            continue
        if arcs and arcs[-1].theta_end == t0:
            arcs[-1] = ArcInterval(index, arcs[-1].theta_start, t1)
        else:
            arcs.append(ArcInterval(index, t0, t1))
    return arcs


def polygon_edge_pieces_in_union(scene: Scene) -> list[EdgePiece]:
    """Maximal sub-segments of polygon edges lying inside the closed disk
    union, disjoint and sorted per edge."""
    tol = _geometric_tolerance(scene)
    verts = scene.polygon.vertices
    m = verts.shape[0]
    pieces: list[EdgePiece] = []
    for i in range(m):
        a = verts[i]
        b = verts[(i + 1) % m]
        knots = {0.0, 1.0}
        for circle in scene.circles:
            knots.update(segment_circle_intersections((a[0], a[1]), (b[0], b[1]), circle))
        cuts = sorted(knots)
        for t0, t1 in zip(cuts[:-1], cuts[1:]):
            if t1 - t0 <= 0.0:
                continue
            tm = 0.5 * (t0 + t1)
            px = a[0] + tm * (b[0] - a[0])
            py = a[1] + tm * (b[1] - a[1])
            keep = False
            for circle in scene.circles:
                dx = px - circle.center.x
                dy = py - circle.center.y
                if math.hypot(dx, dy) <= circle.radius + tol:
                    keep = True
                    break
            if not keep:
                continue
            if pieces and pieces[-1].edge_index == i and pieces[-1].t_end == t0:
                pieces[-1] = EdgePiece(i, pieces[-1].t_start, t1)
            else:
                pieces.append(EdgePiece(i, t0, t1))
    return pieces


def _warn_near_tangencies(scene: Scene, tol: float) -> None:
    circles = scene.circles
    for i in range(len(circles)):
        for j in range(i + 1, len(circles)):
            a, b = circles[i], circles[j]
            d = math.hypot(b.center.x - a.center.x, b.center.y - a.center.y)
            if d == 0.0 and a.radius == b.radius:
                continue
            external = abs(d - (a.radius + b.radius))
            internal = abs(d - abs(a.radius - b.radius))
            if min(external, internal) <= tol:
                warnings.warn(
                    f"circles {i} and {j} are tangent within tolerance; "
                    "their contact is treated as measure-zero",
                    RuntimeWarning,
                    stacklevel=3,
                )
                return


def exact_area(scene: Scene) -> float:
    """Exact area of polygon ∩ (union of disks).

    Sums Green's-theorem contributions of all boundary pieces in a fixed
    order (edges by index then parameter, circles by index then angle) with
    compensated summation, so the result is deterministic across runs.
    Orientation is automatic: polygon edges run in the polygon's
    counterclockwise order and arcs counterclockwise on their own circle,
    which keeps the covered region on the left on every boundary component,
    holes included.
    """
    _warn_near_tangencies(scene, _geometric_tolerance(scene))
    terms: list[float] = []
    verts = scene.polygon.vertices
    m = verts.shape[0]
    for piece in polygon_edge_pieces_in_union(scene):
        a = verts[piece.edge_index]
        b = verts[(piece.edge_index + 1) % m]
        dx = b[0] - a[0]
        dy = b[1] - a[1]
        x1 = a[0] + piece.t_start * dx
        y1 = a[1] + piece.t_start * dy
        x2 = a[0] + piece.t_end * dx
        y2 = a[1] + piece.t_end * dy
        terms.append(green_segment((x1, y1), (x2, y2)))
    for index, circle in enumerate(scene.circles):
        for arc in circle_boundary_arcs(index, scene):
            terms.append(
                green_arc(circle.center, circle.radius, arc.theta_start, arc.theta_end)
            )
    return max(math.fsum(terms), 0.0)
