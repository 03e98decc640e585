"""Run all four changepoint decision rules on a null and an alternative graph.

The statistic behind every rule is the count of minimum-degree vertices
minus its expected value: T uses the known null affinity delta0, Q plugs in
the estimate delta_hat. psi and phi use conservative concentration
thresholds; psi_cal and phi_cal use the asymptotic normal calibration and
also report a p-value (phi burns no alpha, it is threshold-only).

Equivalent CLI:
    pachange test --census census.csv --mode psi-cal --delta0 0 --alpha 0.05
"""

from pachange import (
    ModelConfig,
    ParameterBounds,
    Scaled,
    census_from_degrees,
    grow,
    test_phi,
    test_phi_cal,
    test_psi,
    test_psi_cal,
)


def main():
    n, m, delta0, alpha = 50_000, 5, 0.0, 0.05
    bounds = ParameterBounds(delta_min=-4.5, delta_max=10.0, m=m)
    for label, delta1 in (("null (delta1 = delta0)", 0.0), ("changepoint to delta1 = -1", -1.0)):
        config = ModelConfig(
            m=m, delta0=delta0, delta1=delta1,
            changepoint=Scaled(c=1.0, gamma=0.75), n=n,
        )
        cens = census_from_degrees(grow(config, seed=23).degrees, m)
        reports = [
            test_psi(cens, delta0, alpha),
            test_psi_cal(cens, delta0, alpha),
            test_phi(cens, bounds),
            test_phi_cal(cens, bounds, alpha),
        ]
        print(label)
        for rep in reports:
            p = "-" if rep.p_value is None else f"{rep.p_value:.4f}"
            print(f"  {rep.mode.value:8s} statistic {rep.statistic:+9.2f} "
                  f"threshold {rep.threshold:8.2f} p={p:6s} "
                  f"{'REJECT' if rep.reject else 'retain'}")
        print()


if __name__ == "__main__":
    main()
