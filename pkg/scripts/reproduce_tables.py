"""Print the rate, adder, storage and comparison tables."""

import argparse

from dloco import analysis


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=["text", "csv"], default="text")
    ap.add_argument("--rounding", choices=["half-even", "truncate"], default="half-even")
    args = ap.parse_args()
    print(analysis.format_rate_table(analysis.rate_table(), args.format, args.rounding))
    print(analysis.format_adder_table(analysis.adder_table(), args.format))
    print(analysis.format_storage_table(analysis.storage_table(), args.format))
    print(analysis.format_comparison_table(analysis.comparison_table(), args.format))
    print(f"capacity(q=4, ell=3) = {analysis.capacity(4, 3):.8f}")


if __name__ == "__main__":
    main()
