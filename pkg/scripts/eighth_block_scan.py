#!/usr/bin/env python3
"""Locate where the block 1mm1m11mm1 becomes forbidden as q decreases.

At m = 3 the block is admissible at q = r(3) (the two-sided test misses
by a small margin) but becomes forbidden once q drops far enough.  This
sweeps q downward, reports the margin of the test at each point, and
bisects the crossing.

    python3 scripts/eighth_block_scan.py
"""

import argparse
import sys

from univoque.critical import r_of_m
from univoque.sequences import Alphabet, EPSeq, pi_eval
from univoque.uniqueness import is_forbidden_block

BLOCK = "1mm1m11mm1"


def margin(m: float, q: float) -> float:
    """Largest of the two forbidding margins; >= 0 means forbidden."""
    alpha = Alphabet.ternary(m)
    syms = tuple(alpha.index_of_char(c) for c in BLOCK[1:])
    one = alpha.index_of_char("1")
    top = alpha.index_of_char("m")
    low = pi_eval(EPSeq(alpha, syms, (one,)), q)
    high = pi_eval(EPSeq(alpha, syms, (top,)), q)
    return max(low - (m - 1.0), (m / (q - 1.0) - 1.0) - high)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=float, default=3.0)
    ap.add_argument("--steps", type=int, default=12)
    args = ap.parse_args()

    m = args.m
    q_hi = r_of_m(m)
    if q_hi is None:
        print(f"error: r({m}) is undefined", file=sys.stderr)
        return 2
    q_lo = 2.05

    print(f"block {BLOCK} at m={m}, sweeping q in [{q_lo}, {q_hi:.10g}]")
    print(f"{'q':>12}  {'margin':>12}  forbidden")
    for k in range(args.steps + 1):
        q = q_lo + (q_hi - q_lo) * k / args.steps
        flag = is_forbidden_block(BLOCK[1:], m, q)
        print(f"{q:12.8f}  {margin(m, q):12.3e}  {flag}")

    lo, hi = q_lo, q_hi
    if margin(m, lo) <= 0.0 or margin(m, hi) >= 0.0:
        print("no sign change on the sweep interval", file=sys.stderr)
        return 1
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if margin(m, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    print(f"crossing: block is forbidden for q < {0.5 * (lo + hi):.12g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
