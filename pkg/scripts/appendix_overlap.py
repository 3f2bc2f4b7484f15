"""Overlap deficit 1 - |<A|eta>| versus r = |alpha1/alpha2|, and how tight the survival floor is.

    python scripts/appendix_overlap.py [--delta-ratio 0.5] [--samples 200]
"""

import argparse

import numpy as np
from scipy.linalg import expm

from thermozeno.appendix import ArrowheadMatrix3, overlap_limit_check, survival_floor


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--delta-ratio", type=float, default=0.5)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ratios = tuple(np.geomspace(0.3, 1e-3, 12))
    rep = overlap_limit_check(ratios, args.delta_ratio)
    print("r,overlap,deficit,deficit_over_r2")
    for row in zip(rep.ratios, rep.overlaps, rep.deficits, rep.scaled_deficits):
        print(",".join(repr(float(x)) for x in row))

    rng = np.random.default_rng(args.seed)
    print("\nr,floor,min_exact,slack")
    for r in (0.3, 0.1, 0.03):
        slack = []
        for _ in range(args.samples):
            a2 = np.exp(2j * np.pi * rng.random())
            a1 = r * np.exp(2j * np.pi * rng.random())
            m = ArrowheadMatrix3(a1, a2, float(rng.uniform(-0.9, 0.9)))
            step = expm(-1j * m.matrix() * 0.05)
            psi = np.array([1, 0, 0], dtype=complex)
            lowest = 1.0
            for _ in range(4000):
                psi = step @ psi
                lowest = min(lowest, abs(psi[0]) ** 2)
            slack.append((survival_floor(m), lowest))
        fl, ex = np.array(slack).T
        print(f"{r!r},{float(fl.mean())!r},{float(ex.mean())!r},{float((ex - fl).min())!r}")


if __name__ == "__main__":
    main()
