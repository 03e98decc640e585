"""Estimate rejection power across sizes and write the plotting CSVs.

One sweep runs B replicates per size for a single alternative delta1 and
writes power.csv (per-size rejection rates with exact Clopper-Pearson bands
and the asymptotic prediction) plus moments.csv. Runs at different delta1
share every other field, so their power.csv files concatenate row-wise into
one multi-curve input for the plotting frontend; this demo writes such a
combined file.

Replicates are kept small here so the demo finishes in seconds; the tables
in the docs use B=2000.

Equivalent CLI:
    pachange experiment --spec spec.json --output-dir out
"""

import os

from pachange import (
    ExperimentSpec,
    ParameterBounds,
    run_experiment,
    write_moments_csv,
    write_power_csv,
)

OUT = os.path.join(os.path.dirname(__file__), "out")


def main():
    os.makedirs(OUT, exist_ok=True)
    combined = []
    for delta1 in (-1.0, 1.0):
        spec = ExperimentSpec(
            m=5, delta0=0.0, delta1=delta1, c=1.0, gamma=0.75,
            sizes=(1_000, 5_000, 25_000), replicates=200, alpha=0.05,
            tests=("psi_cal", "phi_cal"),
            bounds=ParameterBounds(delta_min=-4.5, delta_max=10.0, m=5),
            master_seed=2024,
        )
        result = run_experiment(spec)
        tag = f"{delta1:+.0f}".replace("+", "pos").replace("-", "neg")
        power_path = os.path.join(OUT, f"power_delta1_{tag}.csv")
        write_power_csv(result, power_path)
        write_moments_csv(result, os.path.join(OUT, f"moments_delta1_{tag}.csv"))
        combined.append(power_path)
        print(f"delta1 = {delta1:+.0f}")
        for size in result.sizes:
            for mode, tp in size.tests.items():
                print(f"  n={size.n:6d} {mode.value:8s} power {tp.power:.3f} "
                      f"[{tp.ci_lo:.3f}, {tp.ci_hi:.3f}] predicted {tp.predicted:.3f}")

    merged = os.path.join(OUT, "power.csv")
    with open(merged, "w") as out:
        for i, path in enumerate(combined):
            with open(path) as fh:
                lines = fh.readlines()
            out.writelines(lines if i == 0 else lines[1:])
    print(f"combined multi-curve file: {merged}")


if __name__ == "__main__":
    main()
