"""Adaptive quadtree estimator: depth control, tree invariants, determinism."""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest

from quadcover import (
    AqbfParams,
    Cell,
    CellCoverageInfo,
    Circle,
    GenSpec,
    Point,
    RegionClass,
    Scene,
    cell_contribution,
    cell_coverage,
    classify_cell,
    compute_area,
    exact_area,
    gen_scene,
    max_refinement_depth,
    normalize_scene,
    partition,
    subsample_count,
)
from quadcover.rng import substream
from tests.conftest import square_polygon

FAST = AqbfParams(partition_tol=1e-3, sampling_tol=1e-2, min_samples=8)


# ------------------------------------------------------------- depth control


@pytest.mark.parametrize(
    "tol,depth", [(1e-2, 4), (1e-4, 7), (1e-6, 10), (1.0, 0), (0.5, 1)]
)
def test_max_refinement_depth(tol, depth):
    assert max_refinement_depth(tol) == depth


def test_depth_cap_reached_on_curved_boundary(quarter_scene):
    for tol, depth in ((1e-2, 4), (1e-4, 7)):
        params = replace(FAST, partition_tol=tol)
        result = compute_area(quarter_scene, params)
        assert result.max_depth_reached == depth


# ------------------------------------------------------------ normalization


def test_normalize_scene_units():
    scene = gen_scene(GenSpec(n_vertices=10, n_circles=3, seed=7))
    norm, scale = normalize_scene(scene)
    verts = norm.polygon.vertices
    assert verts.min(axis=0) == pytest.approx([0.0, 0.0], abs=1e-15)
    # unit diameter after scaling
    from quadcover import polygon_diameter

    assert polygon_diameter(verts) == pytest.approx(1.0, rel=1e-12)
    assert scale == pytest.approx(polygon_diameter(scene.polygon.vertices), rel=1e-12)
    assert exact_area(norm) * scale * scale == pytest.approx(exact_area(scene), rel=1e-9)


# ------------------------------------------------------------------ accuracy


def test_quarter_disk_is_analytic(quarter_scene):
    result = compute_area(quarter_scene, AqbfParams(partition_tol=1e-4))
    assert result.area == pytest.approx(math.pi / 4.0, rel=1e-12)
    # single-circle cells use closed forms; nothing is sampled
    assert result.total_subsamples == 0


def test_lens_union_default_params(lens_scene):
    result = compute_area(lens_scene)
    assert result.area == pytest.approx(4.131076082149877, rel=1e-5)


def test_polygon_fully_inside_one_circle():
    scene = Scene(square_polygon(2.0), (Circle(Point(0.0, 0.0), 10.0),))
    result = compute_area(scene, FAST)
    assert result.area == pytest.approx(16.0, rel=1e-12)


def test_no_circles_gives_zero():
    result = compute_area(Scene(square_polygon(2.0), ()), FAST)
    assert result.area == 0.0
    assert result.total_subsamples == 0


# ------------------------------------------------------------ tree structure


def test_partition_invariants():
    scene = gen_scene(GenSpec(n_vertices=8, n_circles=3, seed=5))
    norm, _ = normalize_scene(scene)
    params = replace(FAST, partition_tol=1e-2)
    cap = max_refinement_depth(params.partition_tol)
    root = partition(norm, params)

    leaves = []

    def walk(node):
        assert len(node.children) in (0, 4)
        if node.children:
            assert node.classification is RegionClass.BOUNDARY
            assert node.depth < cap
            half = node.cell.side / 2.0
            for child in node.children:
                assert child.depth == node.depth + 1
                assert child.cell.side == pytest.approx(half, rel=1e-12)
            walk_children_tile(node)
            for child in node.children:
                walk(child)
        else:
            leaves.append(node)

    def walk_children_tile(node):
        xs = sorted({(c.cell.x_min, c.cell.y_min) for c in node.children})
        assert len(xs) == 4

    walk(root)
    leaf_area = sum(n.cell.area for n in leaves)
    assert leaf_area == pytest.approx(root.cell.area, rel=1e-12)
    # every boundary leaf sits exactly at the cap
    for node in leaves:
        if node.classification is RegionClass.BOUNDARY:
            assert node.depth == cap
        # leaf classification agrees with the scalar classifier
        assert classify_cell(node.cell, norm) is node.classification


def test_root_square_covers_polygon_bbox():
    scene = gen_scene(GenSpec(n_vertices=8, n_circles=3, seed=5))
    root = partition(scene, FAST)
    verts = scene.polygon.vertices
    assert root.cell.x_min == pytest.approx(verts[:, 0].min(), abs=1e-12)
    assert root.cell.y_min == pytest.approx(verts[:, 1].min(), abs=1e-12)
    assert root.cell.side == pytest.approx(
        max(np.ptp(verts[:, 0]), np.ptp(verts[:, 1])), rel=1e-12
    )


# ------------------------------------------------------- engine equivalence


def test_engine_matches_scalar_tree_walk():
    """The vectorized evaluator must equal a literal per-leaf traversal."""
    scene = gen_scene(GenSpec(n_vertices=30, n_circles=15, seed=9))
    params = AqbfParams(partition_tol=1e-4, sampling_tol=1e-3, seed=11)
    cap = max_refinement_depth(params.partition_tol)

    norm, scale = normalize_scene(scene)
    root = partition(norm, params)
    keys: list[int] = []
    values: list[float] = []
    samples = 0

    def walk(node, code):
        nonlocal samples
        if node.children:
            for quadrant, child in enumerate(node.children):
                walk(child, code * 4 + quadrant)
            return
        if node.classification is RegionClass.BOUNDARY:
            rng = substream(params.seed, node.depth, code)
            value = cell_contribution(node.cell, norm, params, rng)
            info = cell_coverage(node.cell, norm)
            if not info.containing and len(info.crossing) >= 2:
                samples += subsample_count(info, node.cell, params)
        elif node.classification is RegionClass.INSIDE:
            value = node.cell.area
        else:
            value = 0.0
        keys.append(code * 4 ** (cap - node.depth))
        values.append(value)

    walk(root, 0)
    order = np.argsort(np.asarray(keys), kind="stable")
    walked = float(np.sum(np.asarray(values)[order])) * scale * scale

    result = compute_area(scene, params)
    assert result.area == walked  # bitwise
    assert result.total_subsamples == samples
    assert result.n_leaf == len(values)
    assert abs(result.area - exact_area(scene)) / exact_area(scene) < 1e-3


# --------------------------------------------------------------- determinism


def test_repeat_runs_are_identical():
    scene = gen_scene(GenSpec(n_vertices=30, n_circles=15, seed=9))
    params = AqbfParams(partition_tol=1e-4, sampling_tol=1e-3, seed=11)
    a = compute_area(scene, params)
    b = compute_area(scene, params)
    assert a.area == b.area
    assert a.total_subsamples == b.total_subsamples
    assert a.n_leaf == b.n_leaf


def test_seed_changes_sampled_result():
    scene = gen_scene(GenSpec(n_vertices=30, n_circles=15, seed=9))
    params = AqbfParams(partition_tol=1e-4, sampling_tol=1e-3, seed=11)
    a = compute_area(scene, params)
    b = compute_area(scene, replace(params, seed=12))
    assert a.total_subsamples > 0
    assert a.area != b.area


# ------------------------------------------------------------- cell helpers


def test_classify_cell_cases(quarter_scene):
    assert classify_cell(Cell(0.1, 0.3, 0.1, 0.3), quarter_scene) is RegionClass.INSIDE
    assert classify_cell(Cell(1.5, 1.9, 1.5, 1.9), quarter_scene) is RegionClass.OUTSIDE
    assert classify_cell(Cell(0.5, 1.0, 0.5, 1.0), quarter_scene) is RegionClass.BOUNDARY


def test_cell_coverage_contents():
    scene = Scene(
        square_polygon(2.0),
        (Circle(Point(0.0, 0.0), 1.0), Circle(Point(0.5, 0.0), 0.5)),
    )
    inside_both = cell_coverage(Cell(0.3, 0.5, -0.1, 0.1), scene)
    assert inside_both.containing == (0, 1)
    assert inside_both.crossing == ()
    assert inside_both.multiplicity == 0  # counts crossing circles only
    assert inside_both.curvature_sum == 0.0
    assert inside_both.area_in_polygon == pytest.approx(0.04, rel=1e-12)

    crossed = cell_coverage(Cell(0.8, 1.2, -0.2, 0.2), scene)
    assert 0 in crossed.crossing and 1 in crossed.crossing
    assert crossed.multiplicity == len(crossed.crossing)
    assert crossed.curvature_sum == pytest.approx(1.0 / 1.0 + 1.0 / 0.5, rel=1e-12)


def test_subsample_count_formula_and_clamps():
    params = AqbfParams(sampling_tol=1e-4, sample_factor=4.0, min_samples=450,
                        max_samples=1_000_000)
    cell = Cell(0.0, 1e-3, 0.0, 1e-3)
    info = CellCoverageInfo(
        containing=(), crossing=(3, 7), curvature_sum=9.0, area_in_polygon=1e-6
    )
    # 4 * 2 * 9 * 1e-6 / 1e-8 = 7200
    assert subsample_count(info, cell, params) == 7200

    tiny = CellCoverageInfo(containing=(), crossing=(0,), curvature_sum=1e-9,
                            area_in_polygon=1e-6)
    assert subsample_count(tiny, cell, params) == 450  # floored

    huge = CellCoverageInfo(containing=(), crossing=(0, 1), curvature_sum=1e12,
                            area_in_polygon=1e-6)
    assert subsample_count(huge, cell, params) == 1_000_000  # capped

    degenerate = CellCoverageInfo(containing=(), crossing=(0,),
                                  curvature_sum=math.inf, area_in_polygon=1e-6)
    assert subsample_count(degenerate, cell, params) == 1_000_000


def test_params_validation():
    with pytest.raises(ValueError):
        AqbfParams(partition_tol=0.0)
    with pytest.raises(ValueError):
        AqbfParams(sampling_tol=-1.0)
    with pytest.raises(ValueError):
        AqbfParams(min_samples=0)
    with pytest.raises(ValueError):
        AqbfParams(min_samples=100, max_samples=10)
    with pytest.raises(ValueError):
        AqbfParams(sample_factor=0.0)
    with pytest.raises(ValueError):
        AqbfParams(seed=-1)


def test_multiplicity_weighting_mode_differs(lens_scene):
    exact = 4.131076082149877
    normal = compute_area(lens_scene, AqbfParams(partition_tol=1e-4, sampling_tol=1e-3))
    weighted = compute_area(
        lens_scene,
        AqbfParams(partition_tol=1e-4, sampling_tol=1e-3, multiplicity_weighted=True),
    )
    assert normal.area != weighted.area
    assert abs(normal.area - exact) < abs(weighted.area - exact)


def test_result_counts_are_consistent(lens_scene):
    result = compute_area(lens_scene, FAST)
    assert result.n_leaf == result.n_interior + result.n_boundary + result.n_exterior
    assert result.max_depth_reached <= max_refinement_depth(FAST.partition_tol)
    assert result.wall_time_seconds >= 0.0
