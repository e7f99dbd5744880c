"""All estimators against the exact oracle on one scene, then across many.

The single-scene table shows each method's error and cost side by side. The
multi-scene pass feeds paired errors into the Wilcoxon signed-rank test and
the full error matrix into the Friedman test, which is how method rankings
should be compared: on the same scenes, nonparametrically.
"""
import numpy as np

from quadcover import (
    AqbfParams,
    BenchParams,
    GenSpec,
    friedman_test,
    gen_scene,
    run_comparison,
    wilcoxon_signed_rank,
)

METHOD_LABELS = {
    "aqbf": "adaptive quadtree",
    "mc": "monte carlo",
    "ug": "uniform grid",
    "as": "adaptive subdivision",
    "gi": "grid integration",
    "tri": "triangulation",
    "bi": "boundary integration",
}


def main():
    params = BenchParams(seed=42)
    scene = gen_scene(GenSpec(n_vertices=50, n_circles=30, seed=42))
    print(f"scene: {len(scene.polygon)} vertices, {len(scene.circles)} circles\n")

    records = run_comparison(scene, ("bi",) + params.methods, params)
    print(f"{'method':>22} {'area':>12} {'rel error':>10} {'time':>9}")
    print("-" * 57)
    for r in records:
        print(
            f"{METHOD_LABELS[r.method_name]:>22} {r.area:>12.6f} "
            f"{r.rel_error:>10.2e} {r.wall_time_seconds * 1e3:>7.1f}ms"
        )

    # paired comparison across 12 scenes
    print("\npaired errors on 12 generated scenes")
    methods = ("aqbf", "mc", "gi", "tri")
    errors = {m: [] for m in methods}
    fast = BenchParams(
        methods=methods,
        seed=42,
        aqbf=AqbfParams(partition_tol=1e-4, sampling_tol=1e-3),
        mc_samples=100_000,
        grid_resolution=316,
        integration_resolution=100,
        subdivision_depth=9,
    )
    for seed in range(1, 13):
        scene = gen_scene(GenSpec(n_vertices=30, n_circles=15, seed=seed))
        for r in run_comparison(scene, methods, fast, seed=seed):
            errors[r.method_name].append(r.rel_error)

    for m in methods:
        print(f"  {METHOD_LABELS[m]:>22}: median rel error "
              f"{np.median(errors[m]):.2e}")

    w = wilcoxon_signed_rank(errors["aqbf"], errors["mc"])
    print(f"\nwilcoxon adaptive-vs-monte-carlo: W={w.statistic:.1f}, "
          f"p={w.p_value:.2e} (n={w.n})")
    matrix = [[errors[m][i] for m in methods] for i in range(12)]
    f = friedman_test(matrix)
    print(f"friedman over {len(methods)} methods, 12 blocks: "
          f"chi2={f.statistic:.2f}, p={f.p_value:.2e}")


if __name__ == "__main__":
    main()
