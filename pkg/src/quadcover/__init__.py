"""Area of the intersection of a simple polygon with a union of circles.

An exact Green's-theorem boundary-integration oracle, an adaptive quadtree
estimator that spends Monte Carlo samples only where circle boundaries
tangle, five reference estimators, seeded scene generators with JSON and
GeoJSON ingestion, and a benchmark harness with nonparametric method
comparison tests.
"""

from .baselines import (
    McEstimate,
    adaptive_subdivision,
    grid_integration,
    monte_carlo,
    triangulation,
    uniform_grid,
)
from .bench import (
    BenchParams,
    TestResult,
    TrialRecord,
    aqbf_work,
    friedman_test,
    records_to_csv,
    run_case,
    run_comparison,
    sweep,
    wilcoxon_signed_rank,
)
from .errors import (
    DegenerateInputError,
    GeoJsonError,
    InvalidCircleError,
    InvalidPolygonError,
    SceneError,
    SceneFormatError,
)
from .exact import (
    ArcInterval,
    EdgePiece,
    circle_boundary_arcs,
    exact_area,
    green_arc,
    green_segment,
    polygon_edge_pieces_in_union,
)
from .geometry import (
    Cell,
    Circle,
    Point,
    Polygon,
    Rect,
    RegionClass,
    Scene,
    circle_circle_intersection_angles,
    classify_cell_vs_circle,
    classify_cell_vs_polygon,
    clip_polygon_to_cell,
    is_simple_polygon,
    point_in_polygon,
    points_in_polygon,
    polygon_circle_area,
    polygon_diameter,
    segment_circle_intersections,
    signed_area,
)
from .quadtree import (
    AqbfParams,
    AreaResult,
    CellCoverageInfo,
    QuadNode,
    cell_contribution,
    cell_coverage,
    classify_cell,
    compute_area,
    max_refinement_depth,
    normalize_scene,
    partition,
    subsample_count,
)
from .rng import derive_seed, substream
from .scenario import (
    GenSpec,
    caribbean_preset,
    gen_circles,
    gen_polygon,
    gen_scene,
    ingest_geojson,
    load_scene,
    save_scene,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # geometry
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
    # exact oracle
    "ArcInterval",
    "EdgePiece",
    "green_segment",
    "green_arc",
    "circle_boundary_arcs",
    "polygon_edge_pieces_in_union",
    "exact_area",
    # adaptive estimator
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
    # baselines
    "McEstimate",
    "monte_carlo",
    "uniform_grid",
    "grid_integration",
    "adaptive_subdivision",
    "triangulation",
    # scenario
    "GenSpec",
    "gen_polygon",
    "gen_circles",
    "gen_scene",
    "save_scene",
    "load_scene",
    "ingest_geojson",
    "caribbean_preset",
    # bench
    "TrialRecord",
    "TestResult",
    "BenchParams",
    "run_comparison",
    "records_to_csv",
    "run_case",
    "sweep",
    "wilcoxon_signed_rank",
    "friedman_test",
    "aqbf_work",
    # rng
    "substream",
    "derive_seed",
    # errors
    "SceneError",
    "InvalidPolygonError",
    "InvalidCircleError",
    "SceneFormatError",
    "GeoJsonError",
    "DegenerateInputError",
]
