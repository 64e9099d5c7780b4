"""Uniqueness verdicts for digit expansions and zero-free certification.

An expansion (c_i) of x = pi_q(c) over an alphabet {a_1 < ... < a_J} is
the unique one iff no digit can be lowered or raised without leaving
the representable range.  Concretely the sequence is unique when

    sum_i (c_{n+i} - a_1) / q**i  <  a_{j+1} - a_j   whenever c_n = a_j < a_J,
    sum_i (a_J - c_{n+i}) / q**i  <  a_j - a_{j-1}   whenever c_n = a_j > a_1,

and for q up to the alphabet's necessity threshold these conditions are
an exact characterization.  The zero-free check below specializes to
sequences over {1, m} inside the ternary alphabet {0, 1, m} with q > 2,
where only the two conditions at digit-1 positions matter.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from .sequences import (
    EPS_CMP,
    Alphabet,
    ApproxValue,
    EPSeq,
    Word,
    pi_complement,
    pi_eval,
    shift,
)


class VerdictKind(str, Enum):
    PROVEN_UNIQUE = "ProvenUnique"
    PROVEN_NOT_UNIQUE = "ProvenNotUnique"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Witness:
    """Worst-slack condition found while checking a sequence.

    ``position`` is the 1-based index n of the digit whose tail was
    tested, ``condition`` names the side ("raise" = the digit could be
    raised, "lower" = it could be lowered), ``slack`` is how far the
    strict inequality held (negative = violated), and ``boundary`` is
    set when the slack sits within the comparison margin, meaning the
    verdict kind should not be over-trusted.
    """

    position: int
    condition: str
    slack: float
    boundary: bool


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    witness: Witness | None

    @property
    def is_unique(self) -> bool:
        return self.kind is VerdictKind.PROVEN_UNIQUE


def _decide(worst: Witness | None, q: float, iff_threshold: float, eps: float) -> Verdict:
    if worst is None or worst.slack > eps:
        kind = VerdictKind.PROVEN_UNIQUE
    elif q <= iff_threshold + eps:
        kind = VerdictKind.PROVEN_NOT_UNIQUE
    else:
        kind = VerdictKind.INCONCLUSIVE
    return Verdict(kind, worst)


def _worse(a: Witness | None, b: Witness) -> Witness:
    return b if a is None or b.slack < a.slack else a


def check_univoque_general(seq: EPSeq, q: float, eps: float = EPS_CMP) -> Verdict:
    """Decide whether ``seq`` is the unique expansion of its value.

    Works over any alphabet.  A failed condition at base q above the
    alphabet's necessity threshold only means the sufficient test was
    inconclusive.
    """
    if not q > 1:
        raise ValueError(f"base must exceed 1, got {q}")
    digits = seq.alphabet.digits
    top = len(digits) - 1
    lo_tail = digits[0] / (q - 1.0)
    hi_tail = digits[-1] / (q - 1.0)
    worst: Witness | None = None
    for n in range(1, len(seq.preperiod) + len(seq.period) + 1):
        j = seq.symbol(n - 1)
        tail = pi_eval(shift(seq, n), q)
        if j < top:
            slack = ApproxValue((digits[j + 1] - digits[j]) - (tail - lo_tail), eps)
            worst = _worse(worst, Witness(n, "raise", slack.value, slack.boundary))
        if j > 0:
            slack = ApproxValue((digits[j] - digits[j - 1]) - (hi_tail - tail), eps)
            worst = _worse(worst, Witness(n, "lower", slack.value, slack.boundary))
    return _decide(worst, q, seq.alphabet.necessity_threshold, eps)


def _require_ternary_zero_free(seq: EPSeq, m: float) -> None:
    if abs(seq.alphabet.max_digit - m) > 1e-12:
        raise ValueError(f"m={m} does not match the sequence's alphabet")
    for s in set(seq.preperiod) | set(seq.period):
        if seq.alphabet.digits[s] == 0.0:
            raise ValueError("digit 0 present; the zero-free check needs symbols in {1, m}")


def check_v_membership(seq: EPSeq, m: float, q: float, eps: float = EPS_CMP) -> Verdict:
    """Zero-free uniqueness check over {1, m} for q > 2.

    Only positions carrying digit 1 constrain the verdict: the tail
    value must stay below m - 1 and its reflection below 1.  For
    q <= 1 + m/(m-1) a violated condition disproves uniqueness.
    """
    if not m >= 2:
        raise ValueError(f"m must be at least 2, got {m}")
    if not q > 2:
        raise ValueError(f"zero-free check needs q > 2, got {q}")
    _require_ternary_zero_free(seq, m)
    worst: Witness | None = None
    for n in range(1, len(seq.preperiod) + len(seq.period) + 1):
        if seq.digit(n - 1) != 1.0:
            continue
        tail = shift(seq, n)
        up = ApproxValue((m - 1.0) - pi_eval(tail, q), eps)
        worst = _worse(worst, Witness(n, "raise", up.value, up.boundary))
        down = ApproxValue(1.0 - pi_complement(tail, m, q), eps)
        worst = _worse(worst, Witness(n, "lower", down.value, down.boundary))
    threshold = 1.0 + m / (m - 1.0)
    return _decide(worst, q, threshold, eps)


# --- forbidden blocks -----------------------------------------------------

def _as_zero_free_word(w: Word | str, m: float) -> Word:
    if isinstance(w, str):
        alphabet = Alphabet.ternary(m)
        syms = []
        for i, c in enumerate(w):
            s = alphabet.index_of_char(c)
            if s is None:
                raise ValueError(f"unknown digit character {c!r} at offset {i}")
            syms.append(s)
        w = Word(alphabet, tuple(syms))
    for d in w.digits():
        if d not in (1.0, m):
            raise ValueError("word must be zero-free over {1, m}")
    return w


def is_forbidden_block(w: Word | str, m: float, q: float, eps: float = EPS_CMP) -> bool:
    """True when the block 1w cannot occur in any zero-free unique sequence.

    Sound test: after the leading 1, every admissible tail starts with w,
    so if even the smallest completion w 1^inf reaches m - 1, or even the
    largest completion w m^inf stays within m/(q-1) - 1, one of the two
    digit-1 conditions fails.  Valid for 2 < q <= 1 + m/(m-1).
    """
    if not m >= 2:
        raise ValueError(f"m must be at least 2, got {m}")
    r_cap = 1.0 + m / (m - 1.0)
    if not 2 < q <= r_cap + EPS_CMP:
        raise ValueError(f"q={q} outside (2, {r_cap}]")
    w = _as_zero_free_word(w, m)
    if not w.symbols:
        raise ValueError("w must be nonempty")
    one = w.alphabet.digits.index(1.0)
    top = len(w.alphabet.digits) - 1
    lowest = pi_eval(EPSeq(w.alphabet, w.symbols, (one,)), q)
    highest = pi_eval(EPSeq(w.alphabet, w.symbols, (top,)), q)
    return lowest >= m - 1.0 - eps or highest <= m / (q - 1.0) - 1.0 + eps


def scan_forbidden(m: float, q: float, lmax: int, eps: float = EPS_CMP) -> list[Word]:
    """All minimal forbidden blocks 1w with |1w| <= lmax.

    Minimal means no listed word contains another as a factor; the list
    is ordered by length, then lexicographically with 1 < m.
    """
    if not 1 <= lmax <= 16:
        raise ValueError("lmax must be between 1 and 16")
    alphabet = Alphabet.ternary(m)
    one = alphabet.digits.index(1.0)
    top = len(alphabet.digits) - 1
    kept: list[Word] = []
    kept_texts: list[str] = []
    for length in range(2, lmax + 1):
        for tail in product((one, top), repeat=length - 1):
            word = Word(alphabet, (one,) + tail)
            text = word.text()
            if any(k in text for k in kept_texts):
                continue
            if is_forbidden_block(Word(alphabet, tail), m, q, eps):
                kept.append(word)
                kept_texts.append(text)
    return kept


# --- family certification -------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """A set of zero-free blocks whose free concatenations are examined.

    With at least two distinct blocks, a certified family witnesses
    uncountably many unique sequences (every infinite choice of blocks
    yields a distinct member).
    """

    blocks: tuple[Word, ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("family needs at least one block")
        alphabet = self.blocks[0].alphabet
        for b in self.blocks:
            if b.alphabet != alphabet:
                raise ValueError("blocks must share an alphabet")
            if not b.symbols:
                raise ValueError("blocks must be nonempty")

    @classmethod
    def from_texts(cls, texts, m: float) -> FamilySpec:
        return cls(tuple(_as_zero_free_word(t, m) for t in texts))

    @property
    def alphabet(self) -> Alphabet:
        return self.blocks[0].alphabet

    @property
    def supports_uncountability(self) -> bool:
        return len(set(self.blocks)) >= 2


def _greedy_prefix(suffix, blocks, depth: int, take_max: bool):
    """Lexicographically extreme length-``depth`` prefix of suffix.blocks^inf.

    Every prefix of a concatenation extends to an infinite one, so the
    greedy symbol-by-symbol choice realizes the lexicographic extreme.
    """
    out = list(suffix[:depth])
    states = {(bi, 0) for bi in range(len(blocks))}
    pick = max if take_max else min
    while len(out) < depth:
        emitted: dict[int, set] = {}
        for bi, off in states:
            emitted.setdefault(blocks[bi][off], set()).add((bi, off))
        sym = pick(emitted)
        nxt = set()
        for bi, off in emitted[sym]:
            if off + 1 < len(blocks[bi]):
                nxt.add((bi, off + 1))
            else:
                nxt.update((j, 0) for j in range(len(blocks)))
        out.append(sym)
        states = nxt
    return out


def certify_family(family: FamilySpec, m: float, q: float,
                   depth: int = 64, eps: float = EPS_CMP) -> bool:
    """Certify that every free concatenation of the blocks is unique.

    For each digit-1 position class inside the blocks, the supremum of
    the tail value over all continuations is bounded by the greedy
    lexicographic maximum to ``depth`` symbols plus a worst-case
    remainder, and must clear m - 1; symmetrically the reflected bound
    must clear 1 via the lexicographic minimum.  A False result means
    "not certified at this depth", never a disproof.
    """
    if not m >= 2:
        raise ValueError(f"m must be at least 2, got {m}")
    if not q > 2:
        raise ValueError(f"certification needs q > 2, got {q}")
    if depth < 1:
        raise ValueError("depth must be positive")
    alphabet = family.alphabet
    if abs(alphabet.max_digit - m) > 1e-12:
        raise ValueError(f"m={m} does not match the family's alphabet")
    for b in family.blocks:
        _as_zero_free_word(b, m)
    blocks = [b.symbols for b in family.blocks]
    digit = alphabet.digits
    one = digit.index(1.0)
    remainder = m * q ** (-depth) / (q - 1.0)

    suffixes = {b[j + 1:] for b in blocks for j in range(len(b)) if b[j] == one}
    for suffix in suffixes:
        hi = _greedy_prefix(suffix, blocks, depth, take_max=True)
        sup_tail = _horner_digits([digit[s] for s in hi], q) + remainder
        if not sup_tail < m - 1.0 - eps:
            return False
        lo = _greedy_prefix(suffix, blocks, depth, take_max=False)
        inf_tail = _horner_digits([digit[s] for s in lo], q)
        if not m / (q - 1.0) - inf_tail < 1.0 - eps:
            return False
    return True


def _horner_digits(digits, q: float) -> float:
    s = 0.0
    for d in reversed(digits):
        s = (s + d) / q
    return s
