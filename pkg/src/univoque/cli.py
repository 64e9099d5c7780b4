"""Command-line front end.

Subcommands:

    pi          evaluate a sequence in a given base
    check       uniqueness verdict for one sequence (JSON)
    scan-curve  CSV sweep of the threshold curves P, R, p, r
    automaton   build the avoidance automaton (DOT / classify / count)
    selftest    run the built-in consistency suites

Exit codes: 0 success, 1 selftest failure, 2 bad input, 3 a request
outside the supported parameter domain.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .automata import (
    build_safety_automaton,
    classify_growth,
    count_words,
    export_dot,
    growth_rate,
)
from .critical import (
    PLAIN,
    P,
    R,
    _bisect,
    appendix_sign_suite,
    branch_for,
    branches,
    compute_constants,
    p_of_m,
    r_of_m,
    solve_pi_root,
)
from .sequences import (
    Alphabet,
    EPSeq,
    NotationError,
    parse_seq,
    pi_complement,
    pi_eval,
    pi_word,
)
from .uniqueness import (
    FamilySpec,
    certify_family,
    check_univoque_general,
    check_v_membership,
    scan_forbidden,
)


class UnsupportedDomainError(Exception):
    """Request outside the parameter range the package covers."""


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _alphabet_from_args(args) -> Alphabet:
    if getattr(args, "digits", None) is not None:
        if getattr(args, "m", None) is not None:
            raise ValueError("give either --m or --digits, not both")
        parts = [p for p in args.digits.split(",") if p.strip()]
        if not parts:
            raise ValueError("--digits needs a comma-separated list")
        return Alphabet.from_digits(float(p) for p in parts)
    if getattr(args, "m", None) is None:
        raise ValueError("specify --m (alphabet {0,1,m}) or --digits")
    return Alphabet.ternary(args.m)


# --- pi ---------------------------------------------------------------------

def cmd_pi(args) -> int:
    alphabet = _alphabet_from_args(args)
    seq = parse_seq(args.notation, alphabet)
    if args.complement:
        if not isinstance(seq, EPSeq):
            raise ValueError("--complement needs an infinite sequence (use ^w)")
        if args.m is None:
            raise ValueError("--complement needs --m")
        value = pi_complement(seq, args.m, args.q)
    elif isinstance(seq, EPSeq):
        value = pi_eval(seq, args.q)
    else:
        value = pi_word(seq, args.q)
    print(_fmt(value))
    return 0


# --- check ------------------------------------------------------------------

def cmd_check(args) -> int:
    if args.general:
        alphabet = _alphabet_from_args(args)
    else:
        if args.m is None:
            raise ValueError("--ternary needs --m")
        alphabet = Alphabet.ternary(args.m)
    seq = parse_seq(args.notation, alphabet)
    if not isinstance(seq, EPSeq):
        raise ValueError("check needs an infinite sequence (use ^w)")
    if args.general:
        verdict = check_univoque_general(seq, args.q)
    else:
        verdict = check_v_membership(seq, args.m, args.q)
    payload = {"verdict": verdict.kind.value, "witness": None, "slack": None}
    if verdict.witness is not None:
        w = verdict.witness
        payload["witness"] = {
            "position": w.position,
            "condition": w.condition,
            "slack": w.slack,
            "boundary": w.boundary,
        }
        payload["slack"] = w.slack
    print(json.dumps(payload))
    return 0


# --- scan-curve ---------------------------------------------------------------

@dataclass(frozen=True)
class CurveRow:
    m: float
    P: float
    R: float
    p: float | None
    r: float | None
    branch: str | None

    def to_csv(self) -> str:
        cells = [_fmt(self.m), _fmt(self.P), _fmt(self.R),
                 "NA" if self.p is None else _fmt(self.p),
                 "NA" if self.r is None else _fmt(self.r),
                 self.branch if self.branch is not None else "NA"]
        return ",".join(cells)


CSV_HEADER = "m,P,R,p,r,branch"


def curve_rows(m_lo: float, m_hi: float, step: float) -> list[CurveRow]:
    """Rows for m = m_lo, m_lo + step, ... up to m_hi (inclusive within
    a small tolerance).  The grid is index-based so rows are identical
    across runs regardless of accumulation order."""
    if m_lo < 2.0:
        raise UnsupportedDomainError(
            f"m_lo={m_lo}: the curves are only defined for m >= 2")
    if not m_hi > m_lo:
        raise ValueError("m_hi must exceed m_lo")
    if not step > 0:
        raise ValueError("step must be positive")
    rows = []
    k = 0
    while True:
        m = m_lo + k * step
        if m > m_hi + 1e-12:
            break
        b = branch_for(m)
        rows.append(CurveRow(m, P(m), R(m), p_of_m(m), r_of_m(m),
                             b.label if b is not None else None))
        k += 1
    return rows


def cmd_scan_curve(args) -> int:
    rows = curve_rows(args.m_lo, args.m_hi, args.step)
    lines = [CSV_HEADER] + [r.to_csv() for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


# --- automaton ----------------------------------------------------------------

def _parse_blocks(spec: str) -> list[str]:
    return [b for b in (p.strip() for p in spec.split(",")) if b]


def cmd_automaton(args) -> int:
    if args.scan is not None:
        m, q, lmax = args.scan
        blocks = [w.text() for w in scan_forbidden(m, q, int(lmax))]
    elif args.blocks is not None:
        blocks = _parse_blocks(args.blocks)
    else:
        raise ValueError("give --blocks or --scan")
    aut = build_safety_automaton(blocks)
    did = False
    if args.dot:
        sys.stdout.write(export_dot(aut))
        did = True
    if args.classify:
        g = classify_growth(aut)
        payload = {
            "states": aut.n_states,
            "kind": g.kind.value,
            "path_count": g.path_count,
            "growth_rate": growth_rate(aut),
            "evidence": list(g.evidence),
        }
        print(json.dumps(payload))
        did = True
    if args.count is not None:
        print(count_words(aut, args.count))
        did = True
    if not did:
        raise ValueError("nothing to do: give --dot, --classify, or --count")
    return 0


# --- selftest -----------------------------------------------------------------

SEVEN_BLOCKS = ("111", "1mmm", "11m11", "11m1m1",
                "1mm1mm", "11m1mm1", "1mm1m1m")
EIGHTH_BLOCK = "1mm1m11mm1"

# BFS-canonical transition tables ('1' then 'm') for the two block sets.
NINE_STATE_TABLE = ((1, 0), (2, 3), (None, 4), (1, 5), (None, 5),
                    (6, None), (2, 7), (8, None), (2, None))
SEVEN_STATE_TABLE = ((1, 0), (2, 3), (None, 4), (1, 5), (None, 5),
                     (6, None), (2, None))


def _suite_sign_relations(perturb_p: float):
    report = appendix_sign_suite(perturb_p=perturb_p)
    ok = not report.failures
    detail = f"{len(report.checks)} checks, {len(report.failures)} failed"
    yield "sign_relations", ok, detail
    ok2 = not report.failed_crossovers
    parts = [f"{x.name}@{x.located:.9f}" for x in report.crossovers]
    yield "crossovers", ok2, "; ".join(parts)


def _suite_endpoint_r2():
    golden_sq = (3.0 + math.sqrt(5.0)) / 2.0
    closed = r_of_m(2.0)
    solved = solve_pi_root(parse_seq("m1^w", Alphabet.ternary(2)), PLAIN, 2.0)
    poly = _bisect(lambda q: q * q - 3.0 * q + 1.0, 2.0, 3.0)
    vals = (closed, solved, poly, golden_sq)
    ok = max(vals) - min(vals) < 1e-10
    yield "endpoint_r2", ok, f"closed={closed!r} solved={solved!r} poly={poly!r}"


_FROZEN_CONSTANTS = {
    "alpha": 1.3247179572447460,
    "m_d": 2.8019377358048383,
    "M_d": 4.5464554446849952,
    "q_1": 2.3401769582012439,
    "m_1": 2.9128588459980364,
    "m_3": 3.1021409150958154,
    "m_4": 3.3027756377319946,
    "q_4": 2.3027756377319946,
}


def _suite_constants():
    c = compute_constants()
    bad = [k for k, v in _FROZEN_CONSTANTS.items()
           if abs(getattr(c, k) - v) > 1e-8]
    ok = not bad and 3.1015 <= c.m_3 <= 3.1025
    detail = f"m_3={c.m_3:.10f} matches {c.m_3_printed_match}"
    if bad:
        detail += f"; drifted: {','.join(bad)}"
    yield "constants", ok, detail


def _suite_branch_residuals(points: int = 25):
    worst = 0.0
    ok = True
    notes = []
    for b in branches():
        for i in range(points):
            m = b.lo + (b.hi - b.lo) * i / (points - 1)
            r = r_of_m(m)
            if r is None:
                ok = False
                notes.append(f"{b.label}: no value at m={m}")
                continue
            if b.form == PLAIN:
                res = pi_eval(b.defining_seq(m), r) - (m - 1.0)
            else:
                res = pi_complement(b.defining_seq(m), m, r) - 1.0
            worst = max(worst, abs(res))
            if abs(res) > 1e-10 or not (P(m) - 1e-9 <= r < R(m)):
                ok = False
                notes.append(f"{b.label}: bad r at m={m}")
            if b.closed_form is not None and i % 6 == 0:
                alt = solve_pi_root(b.defining_seq(m), b.form, m)
                if abs(alt - r) > 1e-10:
                    ok = False
                    notes.append(f"{b.label}: solver disagrees at m={m}")
            if i % 6 == 0:
                proot = _bisect(lambda q: b.polynomial(m, q), 2.0, R(m))
                if abs(proot - r) > 1e-9:
                    ok = False
                    notes.append(f"{b.label}: polynomial root off at m={m}")
    detail = f"max |residual| {worst:.3e}" + ("; " + "; ".join(notes) if notes else "")
    yield "branch_residuals", ok, detail


def _suite_automata():
    seven = build_safety_automaton(SEVEN_BLOCKS)
    eight = build_safety_automaton(SEVEN_BLOCKS + (EIGHTH_BLOCK,))
    g7 = classify_growth(seven)
    g8 = classify_growth(eight)
    rate7 = growth_rate(seven)
    rate8 = growth_rate(eight)
    ok = (seven.transitions == NINE_STATE_TABLE
          and eight.transitions == SEVEN_STATE_TABLE
          and g7.kind.value == "Uncountable"
          and g8.kind.value == "CountablyInfinite"
          and rate7 > 1.05
          and abs(rate8 - 1.0) < 1e-6)
    detail = (f"{seven.n_states}/{eight.n_states} states, "
              f"rates {rate7:.7f}/{rate8:.7f}, "
              f"kinds {g7.kind.value}/{g8.kind.value}")
    yield "automata_fixtures", ok, detail


def _suite_forbidden_scan():
    r3 = r_of_m(3.0)
    found = [w.text() for w in scan_forbidden(3.0, r3, 7)]
    ok = tuple(found) == SEVEN_BLOCKS
    yield "forbidden_scan", ok, f"q={r3:.10f}: {' '.join(found)}"


_FAMILIES = (
    (("mmmmm1", "mmmmmm1"), 3.0, 2.5),
    (("m111", "m1111"), 2.0, 2.65),
    (("mm1", "mm1m1"), 4.0, 2.25),
)


def _suite_families():
    ok = True
    notes = []
    for texts, m, q in _FAMILIES:
        fam = FamilySpec.from_texts(texts, m)
        good = certify_family(fam, m, q)
        below = certify_family(fam, m, r_of_m(m) - 0.01)
        if not good or below:
            ok = False
        notes.append(f"{'+'.join(texts)}@q={q}: {good}/{below}")
    yield "family_certificates", ok, "; ".join(notes)


def run_selftest(perturb_p: float = 0.0) -> list[tuple[str, bool, str]]:
    results = []
    results.extend(_suite_sign_relations(perturb_p))
    results.extend(_suite_endpoint_r2())
    results.extend(_suite_constants())
    results.extend(_suite_branch_residuals())
    results.extend(_suite_automata())
    results.extend(_suite_forbidden_scan())
    results.extend(_suite_families())
    return results


def cmd_selftest(args) -> int:
    results = run_selftest(perturb_p=args.perturb_p)
    if args.json:
        print(json.dumps([{"name": n, "passed": ok, "detail": d}
                          for n, ok, d in results]))
    else:
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if all(ok for _, ok, _ in results) else 1


# --- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="univoque",
        description="Unique digit expansions over {0, 1, m} and their "
                    "critical bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_pi = sub.add_parser("pi", help="evaluate a sequence in base q")
    p_pi.add_argument("notation", help="sequence, e.g. 'm1^w' or '(m1)^w'")
    p_pi.add_argument("--q", type=float, required=True, help="base, q > 1")
    p_pi.add_argument("--m", type=float, help="top digit of {0,1,m}")
    p_pi.add_argument("--digits", help="comma-separated digits, e.g. 0,1,3")
    p_pi.add_argument("--complement", action="store_true",
                      help="evaluate the digitwise reflection m - c_i")
    p_pi.set_defaults(func=cmd_pi)

    p_check = sub.add_parser("check", help="uniqueness verdict (JSON)")
    p_check.add_argument("notation")
    p_check.add_argument("--q", type=float, required=True)
    mode = p_check.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ternary", action="store_true",
                      help="zero-free membership test over {0,1,m}")
    mode.add_argument("--general", action="store_true",
                      help="general uniqueness test for any alphabet")
    p_check.add_argument("--m", type=float)
    p_check.add_argument("--digits")
    p_check.set_defaults(func=cmd_check)

    p_scan = sub.add_parser("scan-curve",
                            help="CSV sweep of P, R, p, r over an m-grid")
    p_scan.add_argument("--m-lo", type=float, required=True)
    p_scan.add_argument("--m-hi", type=float, required=True)
    p_scan.add_argument("--step", type=float, required=True)
    p_scan.add_argument("--out", default="-", help="output path, '-' = stdout")
    p_scan.set_defaults(func=cmd_scan_curve)

    p_aut = sub.add_parser("automaton",
                           help="avoidance automaton for forbidden blocks")
    p_aut.add_argument("--blocks",
                       help="comma-separated blocks over 1/m, e.g. 11,mm")
    p_aut.add_argument("--scan", nargs=3, type=float,
                       metavar=("M", "Q", "LMAX"),
                       help="derive the blocks by scanning lengths <= LMAX")
    p_aut.add_argument("--dot", action="store_true", help="print DOT source")
    p_aut.add_argument("--classify", action="store_true",
                       help="print growth classification (JSON)")
    p_aut.add_argument("--count", type=int,
                       help="print the number of length-N factor words")
    p_aut.set_defaults(func=cmd_automaton)

    p_self = sub.add_parser("selftest", help="run consistency suites")
    p_self.add_argument("--json", action="store_true")
    p_self.add_argument("--perturb-p", type=float, default=0.0,
                        help="offset added to P(m); nonzero must fail")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except UnsupportedDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NotationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
