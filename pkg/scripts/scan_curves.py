#!/usr/bin/env python3
"""Sweep the threshold curves over an m-grid and write a CSV.

Equivalent to ``univoque scan-curve`` but with defaults covering the
whole interesting range, handy for plotting:

    python3 scripts/scan_curves.py --out curves.csv
"""

import argparse
import sys

from univoque.cli import CSV_HEADER, curve_rows


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-lo", type=float, default=2.0)
    ap.add_argument("--m-hi", type=float, default=5.0)
    ap.add_argument("--step", type=float, default=0.005)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    rows = curve_rows(args.m_lo, args.m_hi, args.step)
    text = "\n".join([CSV_HEADER] + [r.to_csv() for r in rows]) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        covered = sum(1 for r in rows if r.r is not None)
        print(f"{len(rows)} rows ({covered} with a defined r) -> {args.out}",
              file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
