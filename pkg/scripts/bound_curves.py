"""Write no-detection bound curves (and optional Monte-Carlo points) as CSV files."""

import argparse
from pathlib import Path

from dloco import detection
from dloco.cardinality import CodeParams
from dloco.bridging import Scheme
from dloco.stream import StreamConfig


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("."))
    ap.add_argument("--trials", type=int, default=0, help="Monte-Carlo frames per point (0 = bounds only)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    grid = list(detection.DEFAULT_P_GRID)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for mp, m in detection.BOUND_CASES:
        mc_iii = mc_iib = None
        if args.trials:
            iii = StreamConfig(CodeParams(4, 3, 3 * mp), Scheme.III, True)
            iib = StreamConfig(CodeParams(4, 3, m), Scheme.IIB, True)
            mc_iii = [s.undetected_rate for s in detection.monte_carlo_sweep(iii, grid, args.trials, args.seed, args.workers)]
            mc_iib = [s.undetected_rate for s in detection.monte_carlo_sweep(iib, grid, args.trials, args.seed, args.workers)]
        path = args.outdir / f"bounds_mprime{mp}_m{m}.csv"
        path.write_text(detection.emit_bound_curves(mp, m, grid, mc_iii, mc_iib))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
