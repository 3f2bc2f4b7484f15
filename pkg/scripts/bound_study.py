"""Finite-T bound against the exact minimum, and its approach to the high-T asymptote.

    python scripts/bound_study.py [--omega-a 10 --omega-b 1 --g12 1 --g23 1] [--exact]
"""

import argparse

from thermozeno import bounds
from thermozeno.model import ModelParams, Tolerances, validate
from thermozeno.thermal import survival_curve, uniform_times

TEMPS = (0.1, 1.0, 10.0, 50.0, 100.0, 250.0, 1e3, 1e4)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--omega-a", type=float, default=10.0)
    ap.add_argument("--omega-b", type=float, default=1.0)
    ap.add_argument("--g12", type=float, default=1.0)
    ap.add_argument("--g23", type=float, default=1.0)
    ap.add_argument("--eps", type=float, default=0.1)
    ap.add_argument("--exact", action="store_true",
                    help="also compute min_t p1 (T <= 250 only; slow at high T)")
    args = ap.parse_args()

    print("T,finite_T(eps),high_T(eps),rel_gap,best_finite_T,best_eps,validity_max,min_p1")
    for T in TEMPS:
        p = validate(ModelParams.from_frequencies(args.omega_a, args.omega_b, args.g12, args.g23,
                                                  temperature=T))
        f = bounds.finite_T_lower_bound(p, args.eps)
        h = bounds.high_T_lower_bound(p, args.eps)
        best = bounds.best_bound(p)
        exact = ""
        if args.exact and T <= 250:
            curve = survival_curve(p, uniform_times(20.0, 400), Tolerances(tail_mass=1e-6))
            exact = repr(curve.minimum())
        print(f"{T!r},{f!r},{h!r},{abs(f - h) / h!r},{best.finite_T_bound!r},{best.epsilon!r},"
              f"{max(best.validity)!r},{exact}")


if __name__ == "__main__":
    main()
