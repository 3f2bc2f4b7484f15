"""Write one CSV per figure preset into an output directory.

    python scripts/reproduce_figures.py --out data/ [--tail-mass 1e-6] [--only fig2a fig3]
"""

import argparse
import pathlib
import time

from thermozeno.cli import main as cli_main
from thermozeno.presets import PRESETS


def run(out_dir, tail_mass, only, workers):
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in only or sorted(PRESETS):
        path = out_dir / f"{name}.csv"
        start = time.perf_counter()
        argv = ["figure", name, "--out", str(path), "--tail-mass", repr(tail_mass)]
        if workers:
            argv += ["--workers", str(workers)]
        code = cli_main(argv)
        if code:
            raise SystemExit(code)
        print(f"{name}: {path} ({time.perf_counter() - start:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("figures"))
    ap.add_argument("--tail-mass", type=float, default=1e-6)
    ap.add_argument("--only", nargs="*", choices=sorted(PRESETS))
    ap.add_argument("--workers", type=int)
    args = ap.parse_args()
    run(args.out, args.tail_mass, args.only, args.workers)
