"""Boundary-integration oracle: closed-form scenes, arc/edge decomposition."""
from __future__ import annotations

import math

import numpy as np
import pytest
import shapely.geometry as sg

from quadcover import (
    Circle,
    GenSpec,
    Point,
    Polygon,
    Scene,
    circle_boundary_arcs,
    exact_area,
    gen_scene,
    polygon_edge_pieces_in_union,
)
from tests.conftest import square_polygon

# union of two unit disks at center distance 1/2:
# 2*pi - (2*acos(1/4) - (1/4)*sqrt(15/4))
LENS_UNION_HALF = 4.131076082149877
# same at center distance 1
LENS_UNION_ONE = 5.05481560857083


def test_quarter_disk_is_exact(quarter_scene):
    assert exact_area(quarter_scene) == pytest.approx(math.pi / 4.0, rel=1e-14)


def test_lens_union_closed_form(lens_scene):
    got = exact_area(lens_scene)
    assert got == pytest.approx(LENS_UNION_HALF, rel=1e-12)


def test_lens_union_at_unit_distance():
    scene = Scene(
        square_polygon(10.0),
        (Circle(Point(0.0, 0.0), 1.0), Circle(Point(1.0, 0.0), 1.0)),
    )
    assert exact_area(scene) == pytest.approx(LENS_UNION_ONE, rel=1e-12)


def test_polygon_fully_covered_returns_polygon_area():
    scene = Scene(square_polygon(1.0), (Circle(Point(0.0, 0.0), 10.0),))
    assert exact_area(scene) == pytest.approx(16.0 / 4.0, rel=1e-14)
    scene = Scene(square_polygon(2.0), (Circle(Point(0.0, 0.0), 10.0),))
    assert exact_area(scene) == pytest.approx(16.0, rel=1e-14)


def test_empty_coverage_cases():
    assert exact_area(Scene(square_polygon(2.0), ())) == 0.0
    far = Scene(square_polygon(1.0), (Circle(Point(50.0, 50.0), 1.0),))
    assert exact_area(far) == 0.0


def test_reflex_corner_disk(l_scene):
    assert exact_area(l_scene) == pytest.approx(0.5890486225480862, rel=1e-12)


def test_two_circles_on_l_shape_matches_polygon_clipping():
    # cross-checked against polygon buffering at high segment count
    poly = Polygon(
        np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 1.0], [1.0, 1.0], [1.0, 2.0], [0.0, 2.0]])
    )
    scene = Scene(poly, (Circle(Point(0.9, 0.9), 0.6), Circle(Point(1.4, 0.5), 0.5)))
    assert exact_area(scene) == pytest.approx(1.4572348359952831, abs=2e-7)


def test_duplicate_circles_counted_once():
    pair = (Circle(Point(0.0, 0.0), 1.0), Circle(Point(0.0, 0.0), 1.0))
    scene = Scene(square_polygon(5.0), pair)
    assert exact_area(scene) == pytest.approx(math.pi, rel=1e-14)
    # the lower index owns the shared boundary
    assert len(circle_boundary_arcs(0, scene)) >= 1
    assert circle_boundary_arcs(1, scene) == []


def test_tangent_circles_warn_but_stay_exact():
    scene = Scene(
        square_polygon(5.0),
        (Circle(Point(0.0, 0.0), 1.0), Circle(Point(2.0, 0.0), 1.0)),
    )
    with pytest.warns(RuntimeWarning):
        got = exact_area(scene)
    assert got == pytest.approx(2.0 * math.pi, rel=1e-14)


def test_interior_circle_has_full_arc(quarter_scene):
    scene = Scene(square_polygon(5.0), (Circle(Point(0.0, 0.0), 1.0),))
    arcs = circle_boundary_arcs(0, scene)
    assert len(arcs) == 1
    assert arcs[0].circle_index == 0
    assert arcs[0].theta_start == pytest.approx(0.0, abs=1e-15)
    assert arcs[0].theta_end == pytest.approx(2.0 * math.pi, abs=1e-15)


def test_overlapping_pair_arcs_exclude_covered_span():
    scene = Scene(
        square_polygon(5.0),
        (Circle(Point(0.0, 0.0), 1.0), Circle(Point(1.0, 0.0), 1.0)),
    )
    arcs = circle_boundary_arcs(0, scene)
    assert len(arcs) == 1
    # the span within the other disk, (-pi/3, pi/3), is removed
    assert arcs[0].theta_start == pytest.approx(math.pi / 3.0, abs=1e-12)
    assert arcs[0].theta_end == pytest.approx(5.0 * math.pi / 3.0, abs=1e-12)


def test_edge_pieces_inside_union():
    poly = Polygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
    scene = Scene(poly, (Circle(Point(0.5, 0.0), 0.25),))
    pieces = polygon_edge_pieces_in_union(scene)
    assert len(pieces) == 1
    piece = pieces[0]
    assert piece.edge_index == 0
    assert piece.t_start == pytest.approx(0.25, abs=1e-12)
    assert piece.t_end == pytest.approx(0.75, abs=1e-12)


def test_adding_circles_never_shrinks_area():
    scene = gen_scene(GenSpec(n_vertices=14, n_circles=8, seed=31))
    areas = [
        exact_area(Scene(scene.polygon, scene.circles[:k]))
        for k in range(len(scene.circles) + 1)
    ]
    for smaller, larger in zip(areas, areas[1:]):
        assert larger >= smaller - 1e-12


@pytest.mark.parametrize("seed", range(100, 110))
def test_matches_polygon_buffer_union(seed):
    scene = gen_scene(GenSpec(n_vertices=20, n_circles=8, seed=seed))
    got = exact_area(scene)
    poly = sg.Polygon(scene.polygon.vertices)
    disks = [
        sg.Point(c.center.x, c.center.y).buffer(c.radius, quad_segs=512)
        for c in scene.circles
    ]
    union = disks[0]
    for d in disks[1:]:
        union = union.union(d)
    ref = poly.intersection(union).area
    assert got == pytest.approx(ref, rel=1e-5)
    assert got >= 0.0
