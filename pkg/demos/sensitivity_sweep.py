"""Parameter sensitivity of the adaptive estimator.

Two knobs control sampling inside ambiguous cells: the sample-count factor C
and the per-cell floor N_min. The error-balancing sample rule makes both
forgiving — past a modest C the partition term dominates the error budget,
and the floor only binds in cells the rule would otherwise undersample.
This sweeps each knob over a wide range on a fixed scene and shows the
error plateau.
"""
import numpy as np

from quadcover import AqbfParams, GenSpec, exact_area, gen_scene
from quadcover.bench import sweep


def parse(csv_text):
    rows = []
    for line in csv_text.strip().splitlines()[1:]:
        value, rel, _, _ = line.split(",")
        rows.append((float(value), float(rel)))
    return rows


def summarize(rows, label, budget):
    values = np.array([r[0] for r in rows])
    errors = np.array([r[1] for r in rows])
    print(f"  {label} from {values[0]:g} to {values[-1]:g} in {len(rows)} steps")
    print(f"  rel error: min {errors.min():.2e}, median {np.median(errors):.2e}, "
          f"max {errors.max():.2e}")
    print(f"  every run within the {budget:g} partition budget: "
          f"{bool(errors.max() < budget)}\n")


def main():
    scene = gen_scene(GenSpec(n_vertices=12, n_circles=6, seed=2))
    print(f"scene: 12-gon with 6 circles, exact area {exact_area(scene):.9f}\n")

    base = AqbfParams(partition_tol=1e-4, sampling_tol=1e-3, seed=0)

    print("sweep: sample factor C, 0.25 .. 8.0")
    summarize(parse(sweep(scene, "C", "0.25:8.0:0.25", base)), "C",
              base.partition_tol)

    print("sweep: per-cell sample floor N_min, 100 .. 2000")
    summarize(parse(sweep(scene, "N_min", "100:2000:100", base)), "N_min",
              base.partition_tol)

    print("sweep: partition tolerance, 1e-2 .. 1e-5 (the knob that matters)")
    for value, rel in parse(sweep(scene, "epsilon", [1e-2, 1e-3, 1e-4, 1e-5], base)):
        print(f"  eps_part {value:>8.0e}  rel error {rel:.2e}")
    print("\nthe tolerance moves the error by orders of magnitude; across the "
          "whole\nC and N_min ranges every run stays inside the partition budget.")


if __name__ == "__main__":
    main()
