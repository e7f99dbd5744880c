"""How the adaptive estimator spends its effort as tolerances tighten.

Boundary cells are split until their side drops below sqrt(eps) of the root,
so their count should grow roughly like (1/eps)^0.5 while interior cells are
settled early and cheaply. Multi-circle boundary cells fall back to per-cell
Monte Carlo; everything else is closed-form.
"""
import numpy as np

from quadcover import AqbfParams, GenSpec, compute_area, exact_area, gen_scene


def main():
    scene = gen_scene(GenSpec(n_vertices=12, n_circles=6, seed=2))
    exact = exact_area(scene)
    print(f"scene: {len(scene.polygon)} vertices, {len(scene.circles)} circles, "
          f"exact area {exact:.9f}\n")

    header = (
        f"{'eps_part':>9} {'depth':>5} {'leaves':>7} {'boundary':>8} "
        f"{'samples':>9} {'rel error':>10} {'time':>8}"
    )
    print(header)
    print("-" * len(header))

    tolerances = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    boundary_counts = []
    for eps in tolerances:
        params = AqbfParams(partition_tol=eps, sampling_tol=1e-2, min_samples=1)
        result = compute_area(scene, params)
        rel = abs(result.area - exact) / exact
        boundary_counts.append(result.n_boundary)
        print(
            f"{eps:>9.0e} {result.max_depth_reached:>5d} {result.n_leaf:>7d} "
            f"{result.n_boundary:>8d} {result.total_subsamples:>9d} "
            f"{rel:>10.2e} {result.wall_time_seconds * 1e3:>6.1f}ms"
        )

    slope = np.polyfit(
        np.log10(1.0 / np.asarray(tolerances)), np.log10(boundary_counts), 1
    )[0]
    print(f"\nboundary-cell growth: slope {slope:.3f} on log-log "
          "(square-root scaling is 0.5)")

    # the default configuration, for reference
    result = compute_area(scene)
    rel = abs(result.area - exact) / exact
    print(f"\ndefaults: area {result.area:.9f}, rel error {rel:.2e}, "
          f"{result.n_leaf} leaves, {result.total_subsamples} subsamples")


if __name__ == "__main__":
    main()
