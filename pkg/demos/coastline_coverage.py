"""Coverage of a coastline region by a sensor network.

Builds a small synthetic GeoJSON coastline (a mainland with a wiggly
northern shore plus an offshore island), ingests the largest ring, pairs
it with the Caribbean sensor preset, and reports how much of the landmass
the network covers. Coordinates are unprojected longitude/latitude, so
areas come out in square degrees; a mid-latitude cosine factor gives a
rough km^2 figure.
"""
import json
import math
import tempfile
from pathlib import Path

import numpy as np

from quadcover import (
    Scene,
    caribbean_preset,
    compute_area,
    exact_area,
    ingest_geojson,
    save_scene,
    signed_area,
)


def coastline_feature():
    # northern shore: a graph over longitude, so the ring stays simple
    lons = np.linspace(-88.0, -58.0, 31)
    shore = 21.0 + 3.5 * np.sin(0.55 * (lons + 88.0)) + 1.2 * np.sin(1.7 * lons)
    ring = [[-88.0, 7.0], [-58.0, 7.0]]
    ring += [[float(x), float(y)] for x, y in zip(lons[::-1], shore[::-1])]
    ring.append(ring[0])
    return {
        "type": "Feature",
        "properties": {"name": "mainland"},
        "geometry": {"type": "Polygon", "coordinates": [ring]},
    }


def island_feature():
    ring = [[-64.0, 27.0], [-62.5, 27.4], [-62.0, 28.6], [-63.8, 28.3], [-64.0, 27.0]]
    return {
        "type": "Feature",
        "properties": {"name": "islet"},
        "geometry": {"type": "Polygon", "coordinates": [ring]},
    }


def main():
    workdir = Path(tempfile.mkdtemp(prefix="quadcover_coast_"))
    geojson_path = workdir / "coastline.geojson"
    geojson_path.write_text(json.dumps({
        "type": "FeatureCollection",
        "features": [coastline_feature(), island_feature()],
    }, indent=2))
    print(f"wrote synthetic coastline to {geojson_path}")

    polygon = ingest_geojson(geojson_path)  # "largest" skips the islet
    land = signed_area(polygon.vertices)
    print(f"ingested mainland ring: {len(polygon.vertices)} vertices, "
          f"{land:.3f} square degrees\n")

    circles = caribbean_preset()
    print(f"sensor preset: {len(circles)} circles across five regions")
    radii = [c.radius for c in circles]
    print(f"ranges {min(radii):.3f} .. {max(radii):.3f} degrees\n")

    scene = Scene(polygon, tuple(circles))
    covered = exact_area(scene)
    result = compute_area(scene)
    rel = abs(result.area - covered) / covered

    # crude planar conversion at the landmass mid-latitude
    mid_lat = math.radians(16.5)
    km2_per_deg2 = 110.57 * 111.32 * math.cos(mid_lat)

    print(f"covered area (boundary integration): {covered:.6f} deg^2")
    print(f"covered area (adaptive estimator):   {result.area:.6f} deg^2  "
          f"(rel diff {rel:.1e})")
    print(f"coverage fraction: {covered / land:.1%} of the landmass")
    print(f"approximately {covered * km2_per_deg2:,.0f} km^2 covered "
          f"of {land * km2_per_deg2:,.0f} km^2\n")
    print(f"estimator diagnostics: {result.n_leaf} leaves, "
          f"{result.n_boundary} boundary cells, "
          f"{result.total_subsamples} subsamples, depth {result.max_depth_reached}")

    scene_path = workdir / "coastline_scene.json"
    save_scene(scene, scene_path)
    result_path = workdir / "coverage.json"
    result_path.write_text(json.dumps({
        "covered_deg2": covered,
        "land_deg2": land,
        "coverage_fraction": covered / land,
    }, indent=2) + "\n")
    print(f"\nsaved scene to {scene_path}")
    print(f"saved result to {result_path}")


if __name__ == "__main__":
    main()
