"""Problem-instance provisioning.

Seeded synthetic scene generators (star-shaped polygons plus uniformly
placed circles), JSON persistence for scenes, GeoJSON coastline ingestion,
and a Caribbean sensor-deployment preset. Generators are pure functions of
their GenSpec: the polygon and the circles draw from independent substreams
of its seed, so either can be regenerated alone.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    GeoJsonError,
    InvalidCircleError,
    InvalidPolygonError,
    SceneFormatError,
)
from .geometry import (
    TWO_PI,
    Circle,
    Point,
    Polygon,
    Rect,
    Scene,
    is_simple_polygon,
    polygon_diameter,
    signed_area,
)
from .rng import substream

__all__ = [
    "GenSpec",
    "gen_polygon",
    "gen_circles",
    "gen_scene",
    "save_scene",
    "load_scene",
    "ingest_geojson",
    "caribbean_preset",
]

_MAX_POLYGON_ATTEMPTS = 64


@dataclass(frozen=True)
class GenSpec:
    """Parameters of the synthetic scene generator."""

    n_vertices: int
    n_circles: int
    diameter: float = 10.0
    center_box: Rect = field(default_factory=lambda: Rect(-4.0, 4.0, -4.0, 4.0))
    radius_range: tuple[float, float] = (1.0, 2.5)
    seed: int = 42

    def __post_init__(self) -> None:
        if int(self.n_vertices) < 3:
            raise ValueError("n_vertices must be at least 3")
        if int(self.n_circles) < 0:
            raise ValueError("n_circles must be non-negative")
        if not (self.diameter > 0.0 and math.isfinite(self.diameter)):
            raise ValueError("diameter must be positive and finite")
        lo, hi = self.radius_range
        if not (0.0 < lo <= hi):
            raise ValueError("radius_range must satisfy 0 < low <= high")
        if int(self.seed) < 0:
            raise ValueError("seed must be a non-negative integer")
        object.__setattr__(self, "n_vertices", int(self.n_vertices))
        object.__setattr__(self, "n_circles", int(self.n_circles))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "radius_range", (float(lo), float(hi)))


def gen_polygon(spec: GenSpec) -> Polygon:
    """Generate a star-shaped simple polygon.

    Vertices sit at sorted uniform angles with radii uniform in
    [0.3, 1]·(diameter/2), rescaled so the vertex diameter equals
    ``spec.diameter`` exactly. Draws whose radial wrap-around would
    self-intersect (possible when all angles fall in a half-plane) are
    rejected and redrawn from the same stream.
    """
    rng = substream(spec.seed, 0)
    half = spec.diameter / 2.0
    for _ in range(_MAX_POLYGON_ATTEMPTS):
        angles = np.sort(rng.random(spec.n_vertices)) * TWO_PI
        radii = (0.3 + 0.7 * rng.random(spec.n_vertices)) * half
        verts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        area = signed_area(verts)
        if area == 0.0:
            continue
        if area < 0.0:
            verts = verts[::-1].copy()
        if not is_simple_polygon(verts):
            continue
        scale = spec.diameter / polygon_diameter(verts)
        try:
            return Polygon(verts * scale)
        except InvalidPolygonError:
            continue
    raise InvalidPolygonError(
        f"no simple polygon with {spec.n_vertices} vertices found "
        f"in {_MAX_POLYGON_ATTEMPTS} attempts (seed {spec.seed})"
    )


def gen_circles(spec: GenSpec) -> list[Circle]:
    """Generate circles with centers uniform in ``spec.center_box`` and
    radii uniform in ``spec.radius_range``."""
    rng = substream(spec.seed, 1)
    box = spec.center_box
    centers = rng.random((spec.n_circles, 2))
    radii_u = rng.random(spec.n_circles)
    lo, hi = spec.radius_range
    return [
        Circle(
            Point(
                box.x_min + box.width * centers[i, 0],
                box.y_min + box.height * centers[i, 1],
            ),
            lo + (hi - lo) * radii_u[i],
        )
        for i in range(spec.n_circles)
    ]


def gen_scene(spec: GenSpec) -> Scene:
    """Generate a full scene; polygon and circles use independent substreams."""
    return Scene(gen_polygon(spec), tuple(gen_circles(spec)))


def save_scene(scene: Scene, path: str | Path) -> None:
    """Write a scene as JSON: an open polygon ring plus a circle list."""
    payload = {
        "polygon": [[float(x), float(y)] for x, y in scene.polygon.vertices],
        "circles": [
            {"cx": float(c.center.x), "cy": float(c.center.y), "r": float(c.radius)}
            for c in scene.circles
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _require_finite_number(value: object, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SceneFormatError(f"{what} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise SceneFormatError(f"{what} must be finite, got {value!r}")
    return out


def load_scene(path: str | Path) -> Scene:
    """Read and validate a scene JSON file.

    The polygon ring must be open (no repeated closing vertex) and simple;
    clockwise rings are reversed with a warning. Circles must have positive
    radii.
    """
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SceneFormatError("scene file must hold a JSON object")
    ring = payload.get("polygon")
    circles_raw = payload.get("circles")
    if not isinstance(ring, list) or not isinstance(circles_raw, list):
        raise SceneFormatError("scene file needs 'polygon' and 'circles' lists")

    verts = []
    for i, pair in enumerate(ring):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SceneFormatError(f"polygon vertex {i} must be an [x, y] pair")
        verts.append(
            [
                _require_finite_number(pair[0], f"polygon vertex {i} x"),
                _require_finite_number(pair[1], f"polygon vertex {i} y"),
            ]
        )
    if len(verts) < 3:
        raise SceneFormatError("polygon needs at least 3 vertices")
    if verts[0] == verts[-1]:
        raise SceneFormatError("polygon ring must be open (no repeated closing vertex)")
    arr = np.array(verts, dtype=np.float64)
    if signed_area(arr) < 0.0:
        warnings.warn(
            "polygon ring was clockwise; reversed to counterclockwise", stacklevel=2
        )
        arr = arr[::-1].copy()
    if not is_simple_polygon(arr):
        raise InvalidPolygonError("polygon is self-intersecting")
    polygon = Polygon(arr)

    circles = []
    for i, entry in enumerate(circles_raw):
        if not isinstance(entry, dict) or not {"cx", "cy", "r"} <= set(entry):
            raise SceneFormatError(f"circle {i} must be an object with cx, cy, r")
        cx = _require_finite_number(entry["cx"], f"circle {i} cx")
        cy = _require_finite_number(entry["cy"], f"circle {i} cy")
        r = _require_finite_number(entry["r"], f"circle {i} r")
        if r <= 0.0:
            raise InvalidCircleError(f"circle {i} radius must be positive, got {r!r}")
        circles.append(Circle(Point(cx, cy), r))
    return Scene(polygon, tuple(circles))


def _exterior_rings(geometry: object, rings: list) -> None:
    if not isinstance(geometry, dict):
        return
    kind = geometry.get("type")
    if kind == "FeatureCollection":
        for feature in geometry.get("features") or []:
            if isinstance(feature, dict):
                _exterior_rings(feature.get("geometry"), rings)
    elif kind == "Feature":
        _exterior_rings(geometry.get("geometry"), rings)
    elif kind == "GeometryCollection":
        for sub in geometry.get("geometries") or []:
            _exterior_rings(sub, rings)
    elif kind == "Polygon":
        coords = geometry.get("coordinates") or []
        if coords:
            rings.append(coords[0])
    elif kind == "MultiPolygon":
        for poly in geometry.get("coordinates") or []:
            if poly:
                rings.append(poly[0])


def _ring_vertices(ring: object) -> np.ndarray:
    if not isinstance(ring, list):
        raise GeoJsonError("ring coordinates must be a list of positions")
    pts = []
    for pos in ring:
        if not isinstance(pos, (list, tuple)) or len(pos) < 2:
            raise GeoJsonError(f"bad ring position {pos!r}")
        pts.append([float(pos[0]), float(pos[1])])
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts = pts[:-1]
    if len(pts) < 3:
        raise GeoJsonError("selected ring has fewer than 3 distinct vertices")
    return np.array(pts, dtype=np.float64)


def ingest_geojson(path: str | Path, ring_selector: int | str = "largest") -> Polygon:
    """Extract one exterior ring from a GeoJSON file as a Polygon.

    Accepts FeatureCollection, Feature, GeometryCollection, Polygon, and
    MultiPolygon inputs; coordinates are taken as planar without projection.
    ``ring_selector`` is either "largest" (largest absolute area, the
    default) or the index of the ring in document order. The duplicate
    closing vertex is dropped and counterclockwise orientation enforced.
    """
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GeoJsonError(f"not valid JSON: {exc}") from exc
    rings: list = []
    _exterior_rings(document, rings)
    if not rings:
        raise GeoJsonError("no Polygon or MultiPolygon geometry found")

    if ring_selector == "largest":
        best = None
        best_area = -1.0
        for ring in rings:
            verts = _ring_vertices(ring)
            area = abs(signed_area(verts))
            if area > best_area:
                best, best_area = verts, area
        assert best is not None
        verts = best
    elif isinstance(ring_selector, int) and not isinstance(ring_selector, bool):
        if not 0 <= ring_selector < len(rings):
            raise GeoJsonError(
                f"ring index {ring_selector} out of range for {len(rings)} rings"
            )
        verts = _ring_vertices(rings[ring_selector])
    else:
        raise GeoJsonError(f"ring_selector must be 'largest' or an index, got {ring_selector!r}")

    if signed_area(verts) < 0.0:
        verts = verts[::-1].copy()
    return Polygon(verts)


_KM_TO_DEGREES = 1.0 / 111.32

_CARIBBEAN_REGIONS: tuple[tuple[str, int, Rect, tuple[float, float]], ...] = (
    ("cuba", 15, Rect(-85.0, -74.0, 19.5, 23.5), (30.0, 120.0)),
    ("hispaniola", 12, Rect(-75.0, -68.0, 17.5, 20.0), (25.0, 100.0)),
    ("trinidad", 9, Rect(-62.0, -60.5, 10.0, 11.0), (20.0, 80.0)),
    ("area_a", 15, Rect(-86.0, -84.0, 14.0, 16.0), (40.0, 100.0)),
    ("area_b", 20, Rect(-75.0, -65.0, 9.5, 10.5), (35.0, 90.0)),
)


def caribbean_preset(seed: int = 42, degrees_per_km: float = _KM_TO_DEGREES) -> list[Circle]:
    """Sensor circles for five Caribbean coverage regions.

    Each region draws its node centers uniformly in a longitude/latitude
    box and its ranges uniformly in a kilometre interval, converted to
    degrees by ``degrees_per_km``. Coordinates stay unprojected, so areas
    computed against these circles are in square degrees.
    """
    if not (degrees_per_km > 0.0 and math.isfinite(degrees_per_km)):
        raise ValueError("degrees_per_km must be positive and finite")
    circles: list[Circle] = []
    for index, (_, count, box, (km_lo, km_hi)) in enumerate(_CARIBBEAN_REGIONS):
        rng = substream(seed, 2, index)
        centers = rng.random((count, 2))
        radii_u = rng.random(count)
        lo = km_lo * degrees_per_km
        hi = km_hi * degrees_per_km
        for i in range(count):
            circles.append(
                Circle(
                    Point(
                        box.x_min + box.width * centers[i, 0],
                        box.y_min + box.height * centers[i, 1],
                    ),
                    lo + (hi - lo) * radii_u[i],
                )
            )
    return circles
