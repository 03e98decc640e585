"""Compare empirical degree proportions against the limiting law p_k.

Without a changepoint the fraction of vertices with degree k converges to
p_k(delta), a ratio of gamma functions with power-law tail exponent
3 + delta/m. The table below puts the simulated proportions at n=20000 next
to the limit values for two affinities.
"""

from pachange import ModelConfig, Scaled, census_from_degrees, grow, p_k_value, p_tail


def main():
    n, m = 20_000, 5
    for delta in (0.0, 2.5):
        config = ModelConfig(
            m=m, delta0=delta, delta1=delta,
            changepoint=Scaled(c=1.0, gamma=0.75), n=n,
        )
        cens = census_from_degrees(grow(config, seed=7).degrees, m)
        counts = dict(zip(cens.ks.tolist(), cens.counts.tolist()))
        print(f"delta = {delta}: tail exponent 3 + delta/m = {3 + delta / m}")
        print("  k    empirical     limit p_k")
        for k in range(m, m + 8):
            print(f"  {k:3d}  {counts.get(k, 0) / n:9.5f}  {p_k_value(delta, m, k):12.5f}")
        heavy = 10 * m
        tail_emp = sum(v for k, v in counts.items() if k > heavy) / n
        print(f"  P(degree > {heavy}): empirical {tail_emp:.5f}, "
              f"limit {p_tail(delta, m, heavy):.5f}")
        print()


if __name__ == "__main__":
    main()
