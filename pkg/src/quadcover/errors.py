"""Exception types raised by scene construction, parsing, and statistics."""

from __future__ import annotations

__all__ = [
    "SceneError",
    "InvalidPolygonError",
    "InvalidCircleError",
    "SceneFormatError",
    "GeoJsonError",
    "DegenerateInputError",
]


class SceneError(ValueError):
    """Base class for invalid scene input."""


class InvalidPolygonError(SceneError):
    """Polygon is degenerate: too few vertices, repeated points, wrong
    orientation, or self-intersecting."""


class InvalidCircleError(SceneError):
    """Circle has a non-positive or non-finite radius or center."""


class SceneFormatError(SceneError):
    """Scene file does not match the expected JSON schema."""


class GeoJsonError(SceneError):
    """GeoJSON input holds no usable polygon ring."""


class DegenerateInputError(ValueError):
    """Statistical input carries no usable information (e.g. all paired
    differences are zero)."""
