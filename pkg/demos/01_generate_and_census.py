"""Grow one graph, write its files, and reduce the degrees to a census.

The graph starts from two seed vertices joined by m parallel edges; every
later vertex attaches m edges one at a time, each endpoint drawn with
probability proportional to degree + delta. After the changepoint step tau
the affinity switches from delta0 to delta1.

Equivalent CLI:
    pachange generate --n 5000 --m 5 --delta0 0 --delta1 -1 --seed 42 \
        --output-dir demos/out
    pachange census --degrees demos/out/degrees.csv --output-dir demos/out
"""

import os

from pachange import (
    ModelConfig,
    Scaled,
    census_from_degrees,
    config_summary,
    grow,
    load_degrees_csv,
    save_census_csv,
    save_degrees_csv,
)

OUT = os.path.join(os.path.dirname(__file__), "out")


def main():
    os.makedirs(OUT, exist_ok=True)
    config = ModelConfig(
        m=5, delta0=0.0, delta1=-1.0,
        changepoint=Scaled(c=1.0, gamma=0.75), n=5000,
    )
    summary = config_summary(config, seed=42)
    print(f"growing n={summary['n']} vertices, changepoint at tau={summary['tau']}")

    graph = grow(config, seed=42)
    deg_path = os.path.join(OUT, "degrees.csv")
    save_degrees_csv(graph, deg_path)
    degrees = load_degrees_csv(deg_path)
    print(f"wrote {deg_path}: {degrees.size} vertices, "
          f"degree range [{degrees.min()}, {degrees.max()}], sum {degrees.sum()}")

    cens = census_from_degrees(degrees, m=config.m)
    cens_path = os.path.join(OUT, "census.csv")
    save_census_csv(cens, cens_path)
    print(f"wrote {cens_path}: {len(cens.ks)} distinct degrees, "
          f"N_m = {cens.n_min} vertices still at the minimum degree")
    print("smallest degree counts:")
    for k, count in zip(cens.ks[:8], cens.counts[:8]):
        print(f"  degree {k:3d}: {count}")


if __name__ == "__main__":
    main()
