"""Compare simulated no-detection rates with the analytic bounds."""

import argparse

from dloco import detection
from dloco.bridging import Scheme
from dloco.cardinality import CodeParams
from dloco.stream import StreamConfig

CASES = ((Scheme.IIB, 21), (Scheme.III, 39))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--p", type=float, nargs="+", default=[0.01, 0.05, 0.1])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print("scheme,m,p,frames,undetected,rate,bound,within_3_sigma")
    for scheme, m in CASES:
        config = StreamConfig(CodeParams(4, 3, m), scheme, True)
        for p, s in zip(args.p, detection.monte_carlo_sweep(config, args.p, args.trials, args.seed, args.workers)):
            bound = detection.analytic_bound(config, p)
            ok = s.undetected_rate <= bound + 3 * s.standard_error(bound)
            print(f"{scheme.label},{m},{p:g},{s.frames},{s.undetected},{s.undetected_rate:.6g},{bound:.6g},{ok}")


if __name__ == "__main__":
    main()
