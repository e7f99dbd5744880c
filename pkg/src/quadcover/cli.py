"""Command-line interface.

Subcommands: ``gen`` (synthetic scene to JSON), ``ingest`` (GeoJSON ring to
scene JSON), ``compute`` (one method on one scene, result JSON), ``bench``
(survey case to CSV), and ``sweep`` (parameter sweep to CSV). All outputs
are deterministic for fixed seeds apart from wall-time diagnostics.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .bench import METHOD_NAMES, BenchParams, run_case, sweep
from .baselines import (
    adaptive_subdivision,
    grid_integration,
    monte_carlo,
    triangulation,
    uniform_grid,
)
from .errors import DegenerateInputError, SceneError
from .exact import exact_area
from .geometry import Scene
from .quadtree import AqbfParams, compute_area
from .scenario import GenSpec, gen_scene, ingest_geojson, load_scene, save_scene

__all__ = ["main"]

_MC_SAMPLES = 1_000_000
_GRID_RESOLUTION = 1000
_INTEGRATION_RESOLUTION = 200
_SUBDIVISION_DEPTH = 12


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cover",
        description="Area of a polygon ∩ union-of-circles region: adaptive "
        "estimator, reference methods, exact oracle, benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic scene")
    gen.add_argument("--vertices", type=int, default=50, help="polygon vertex count")
    gen.add_argument("--circles", type=int, default=30, help="circle count")
    gen.add_argument("--seed", type=int, default=42, help="generator seed")
    gen.add_argument("--diameter", type=float, default=10.0, help="polygon diameter")
    gen.add_argument("--out", required=True, help="output scene JSON path")

    ingest = sub.add_parser("ingest", help="extract a polygon ring from GeoJSON")
    ingest.add_argument("--geojson", required=True, help="input GeoJSON file")
    ingest.add_argument(
        "--select",
        default="largest",
        help="exterior ring selector: 'largest' or a ring index",
    )
    ingest.add_argument("--out", required=True, help="output scene JSON path")

    compute = sub.add_parser("compute", help="compute the covered area of a scene")
    compute.add_argument("--scene", required=True, help="scene JSON path")
    compute.add_argument("--method", choices=METHOD_NAMES, default="aqbf")
    compute.add_argument("--eps-part", type=float, default=1e-6, help="partition tolerance")
    compute.add_argument("--eps-samp", type=float, default=1e-4, help="sampling tolerance")
    compute.add_argument("--c", type=float, default=4.0, help="sample-count factor")
    compute.add_argument("--nmin", type=int, default=450, help="min samples per cell")
    compute.add_argument("--nmax", type=int, default=1_000_000, help="max samples per cell")
    compute.add_argument("--seed", type=int, default=42, help="sampling seed")
    compute.add_argument(
        "--multiplicity-weighted",
        action="store_true",
        help="weight fully covered cells by how many circles contain them",
    )
    compute.add_argument("--out", required=True, help="output result JSON path")

    bench = sub.add_parser("bench", help="run a survey case")
    bench.add_argument("--case", type=int, choices=(1, 2), required=True)
    bench.add_argument("--trials", type=int, default=100, help="trials per configuration")
    bench.add_argument(
        "--methods",
        default="aqbf,mc,ug,as,gi,tri",
        help="comma-separated method names",
    )
    bench.add_argument("--seed", type=int, default=42, help="master seed")
    bench.add_argument("--out", required=True, help="output CSV path")

    swp = sub.add_parser("sweep", help="sweep one estimator parameter")
    swp.add_argument("--axis", choices=("C", "N_min", "epsilon"), required=True)
    swp.add_argument("--grid", required=True, help="grid as start:stop:step")
    swp.add_argument("--scene", required=True, help="scene JSON path")
    swp.add_argument("--out", required=True, help="output CSV path")

    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    scene = gen_scene(
        GenSpec(
            n_vertices=args.vertices,
            n_circles=args.circles,
            diameter=args.diameter,
            seed=args.seed,
        )
    )
    save_scene(scene, args.out)
    print(f"wrote {args.out} ({args.vertices} vertices, {args.circles} circles)")
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    selector: int | str = args.select
    if selector != "largest":
        try:
            selector = int(selector)
        except ValueError:
            pass
    polygon = ingest_geojson(args.geojson, selector)
    save_scene(Scene(polygon, ()), args.out)
    print(f"wrote {args.out} ({len(polygon)} vertices, 0 circles)")
    return 0


def _compute_result(scene: Scene, args: argparse.Namespace) -> dict:
    method = args.method
    diagnostics = {
        "n_leaf": 0,
        "n_boundary": 0,
        "total_subsamples": 0,
        "max_depth": 0,
        "wall_time_s": 0.0,
    }
    if method == "aqbf":
        result = compute_area(
            scene,
            AqbfParams(
                partition_tol=args.eps_part,
                sampling_tol=args.eps_samp,
                sample_factor=args.c,
                min_samples=args.nmin,
                max_samples=args.nmax,
                seed=args.seed,
                multiplicity_weighted=args.multiplicity_weighted,
            ),
        )
        area = result.area
        diagnostics.update(
            n_leaf=result.n_leaf,
            n_boundary=result.n_boundary,
            total_subsamples=result.total_subsamples,
            max_depth=result.max_depth_reached,
            wall_time_s=result.wall_time_seconds,
        )
    else:
        start = time.perf_counter()
        if method == "bi":
            area = exact_area(scene)
        elif method == "mc":
            estimate = monte_carlo(scene, _MC_SAMPLES, args.seed)
            area = estimate.area
            diagnostics["total_subsamples"] = estimate.n_samples
        elif method == "ug":
            area = uniform_grid(scene, _GRID_RESOLUTION)
        elif method == "gi":
            area = grid_integration(scene, _INTEGRATION_RESOLUTION)
        elif method == "as":
            area = adaptive_subdivision(scene, _SUBDIVISION_DEPTH)
            diagnostics["max_depth"] = _SUBDIVISION_DEPTH
        else:
            area = triangulation(scene)
        diagnostics["wall_time_s"] = time.perf_counter() - start
    return {"area": area, "method": method, "diagnostics": diagnostics}


def _cmd_compute(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    payload = _compute_result(scene, args)
    Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"{payload['method']} area = {payload['area']!r} (wrote {args.out})")
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    params = BenchParams(methods=methods, seed=args.seed)
    csv_text = run_case(args.case, args.trials, params, report=print)
    Path(args.out).write_text(csv_text, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    scene = load_scene(args.scene)
    csv_text = sweep(scene, args.axis, args.grid)
    Path(args.out).write_text(csv_text, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "ingest": _cmd_ingest,
    "compute": _cmd_compute,
    "bench": _cmd_bench,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SceneError, DegenerateInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
