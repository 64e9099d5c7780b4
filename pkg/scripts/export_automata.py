#!/usr/bin/env python3
"""Build the safety automata for the forbidden blocks at a critical base.

Scans for minimal forbidden blocks at (m, q), builds the corresponding
safety automaton, and writes a DOT file plus a classification summary.
With --extra-block the scan result is augmented before building, which
is how the nine-state automaton for the eight-word family arises.

    python3 scripts/export_automata.py --out seven.dot
    python3 scripts/export_automata.py --extra-block 1mm1m11mm1 --out nine.dot
"""

import argparse
import sys

from univoque.automata import (
    build_safety_automaton,
    classify_growth,
    count_words,
    export_dot,
    growth_rate,
)
from univoque.critical import r_of_m
from univoque.uniqueness import scan_forbidden


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=float, default=3.0)
    ap.add_argument("--q", type=float, default=None,
                    help="base to scan at (default: r(m))")
    ap.add_argument("--lmax", type=int, default=7)
    ap.add_argument("--extra-block", action="append", default=[],
                    help="append a block to the scanned set (repeatable)")
    ap.add_argument("--out", default="-", help="DOT output path")
    args = ap.parse_args()

    q = args.q if args.q is not None else r_of_m(args.m)
    if q is None:
        print(f"error: r({args.m}) is undefined, pass --q", file=sys.stderr)
        return 2

    blocks = [w.text() for w in scan_forbidden(args.m, q, args.lmax)]
    blocks.extend(args.extra_block)
    auto = build_safety_automaton(blocks)

    dot = export_dot(auto)
    if args.out == "-":
        sys.stdout.write(dot)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot)

    cls = classify_growth(auto)
    print(f"m={args.m} q={q:.12g}", file=sys.stderr)
    print(f"blocks ({len(blocks)}): {' '.join(blocks)}", file=sys.stderr)
    print(f"states: {auto.n_states}", file=sys.stderr)
    print(f"class: {cls.kind.value}", file=sys.stderr)
    print(f"growth rate: {growth_rate(auto):.12g}", file=sys.stderr)
    print(f"words of length 12: {count_words(auto, 12)}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
