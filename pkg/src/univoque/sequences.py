"""Digit sequences and their values in a non-integer base.

A sequence (c_i) over an alphabet of real digits is evaluated as

    pi_q(c) = sum_{i >= 1} c_i / q**i,   q > 1.

Everything downstream (uniqueness verdicts, critical-base curves,
avoidance automata) works with eventually periodic sequences, written
in a compact notation: ``m1^w`` is the digit m followed by ones forever,
``mm1(m11m)^w`` has preperiod mm1 and period m11m.  ``^w`` marks the
final item as repeating forever; ``^k`` with a positive integer repeats
an item k times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Margin used when a strict inequality has to be decided in floating
# point.  Values closer than this to a threshold are boundary cases.
EPS_CMP = 1e-9

_INDEX_CHARS = "0123456789"


class NotationError(ValueError):
    """Sequence text that does not conform to the notation grammar."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class ApproxValue:
    """A float together with an absolute error bound.

    Used to decide strict inequalities honestly: the sign is only
    trusted when the value clears its own error bound.
    """

    value: float
    err: float = EPS_CMP

    def sign(self) -> int:
        """-1, +1, or 0 when the value is within ``err`` of zero."""
        if self.value > self.err:
            return 1
        if self.value < -self.err:
            return -1
        return 0

    @property
    def boundary(self) -> bool:
        return abs(self.value) <= self.err


@dataclass(frozen=True)
class Alphabet:
    """Finite, strictly increasing set of real digits.

    ``chars`` assigns one text character per digit for the sequence
    notation.  The ternary specialization uses digits (0, 1, m) with
    characters '0', '1', 'm'.
    """

    digits: tuple[float, ...]
    chars: tuple[str, ...]

    def __post_init__(self):
        if len(self.digits) < 2:
            raise ValueError("alphabet needs at least 2 digits")
        if len(self.chars) != len(self.digits):
            raise ValueError("one character per digit required")
        if any(b <= a for a, b in zip(self.digits, self.digits[1:])):
            raise ValueError("digits must be strictly increasing")
        if len(set(self.chars)) != len(self.chars):
            raise ValueError("digit characters must be distinct")
        for c in self.chars:
            if len(c) != 1 or c in "()^":
                raise ValueError(f"invalid digit character {c!r}")

    @classmethod
    def ternary(cls, m: float) -> Alphabet:
        """The alphabet {0, 1, m} with m >= 2, written '0', '1', 'm'."""
        if not m >= 2:
            raise ValueError(f"ternary alphabet needs m >= 2, got {m}")
        return cls((0.0, 1.0, float(m)), ("0", "1", "m"))

    @classmethod
    def from_digits(cls, digits) -> Alphabet:
        """General alphabet; digit i is written with the character str(i)."""
        digits = tuple(float(d) for d in digits)
        if len(digits) > len(_INDEX_CHARS):
            raise ValueError("at most 10 digits supported by the notation")
        return cls(digits, tuple(_INDEX_CHARS[: len(digits)]))

    @property
    def min_digit(self) -> float:
        return self.digits[0]

    @property
    def max_digit(self) -> float:
        return self.digits[-1]

    @property
    def span(self) -> float:
        return self.digits[-1] - self.digits[0]

    @property
    def gaps(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.digits, self.digits[1:]))

    @property
    def necessity_threshold(self) -> float:
        """Base below which the uniqueness conditions are also necessary.

        Equal to 1 + span / max_gap; for {0,1,m} this is 1 + m/(m-1).
        """
        return 1.0 + self.span / max(self.gaps)

    @property
    def saturation_threshold(self) -> float:
        """Base above which every sequence over the alphabet is unique.

        Equal to 1 + span / min_gap.
        """
        return 1.0 + self.span / min(self.gaps)

    def index_of_char(self, c: str) -> int | None:
        try:
            return self.chars.index(c)
        except ValueError:
            return None


@dataclass(frozen=True)
class Word:
    """Finite (possibly empty) list of symbol indices into an alphabet."""

    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        _check_symbols(self.alphabet, self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def digits(self) -> tuple[float, ...]:
        return tuple(self.alphabet.digits[s] for s in self.symbols)

    def text(self) -> str:
        return "".join(self.alphabet.chars[s] for s in self.symbols)

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class EPSeq:
    """Eventually periodic sequence, stored in canonical form.

    Canonical means the period is primitive (not a power of a shorter
    word) and rotations are absorbed into it: the preperiod never ends
    with the same symbol the period ends with.  Structural equality of
    canonical forms then coincides with equality as infinite sequences.
    """

    alphabet: Alphabet
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("empty period")
        _check_symbols(self.alphabet, self.preperiod)
        _check_symbols(self.alphabet, self.period)
        pre, per = _canonical(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def symbol(self, i: int) -> int:
        """Symbol index at 0-based position i."""
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def digit(self, i: int) -> float:
        return self.alphabet.digits[self.symbol(i)]

    def prefix_symbols(self, n: int) -> tuple[int, ...]:
        return tuple(self.symbol(i) for i in range(n))

    def uses_symbol(self, s: int) -> bool:
        return s in self.preperiod or s in self.period

    def __str__(self) -> str:
        return format_seq(self)


def _check_symbols(alphabet: Alphabet, symbols) -> None:
    for s in symbols:
        if not isinstance(s, int) or not 0 <= s < len(alphabet.digits):
            raise ValueError(f"symbol index {s!r} outside alphabet")


def _primitive(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for d in range(1, n):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


def _canonical(pre, per):
    per = _primitive(tuple(per))
    pre = list(pre)
    # absorb a shared trailing symbol by rotating the period right
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return tuple(pre), per


# --- notation -------------------------------------------------------------

def parse_seq(text: str, alphabet: Alphabet) -> EPSeq | Word:
    """Parse sequence notation; returns an EPSeq when '^w' is present.

    Grammar: a sequence of items, where an item is a digit character, a
    parenthesized group of items, or an item followed by '^' and a
    positive repeat count.  The final item may instead carry '^w',
    making it the period of an eventually periodic sequence.
    """
    elements: list[list[int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        c = text[pos]
        if c == "^":
            if not elements:
                raise NotationError("'^' without a preceding item", pos)
            pos += 1
            if pos < n and text[pos] == "w":
                if pos + 1 != n:
                    raise NotationError("'^w' only allowed in final position", pos - 1)
                period = elements.pop()
                pre = [s for e in elements for s in e]
                return EPSeq(alphabet, tuple(pre), tuple(period))
            count, pos = _parse_count(text, pos)
            elements[-1] = elements[-1] * count
        elif c == "(":
            group, pos = _parse_group(text, pos, alphabet)
            elements.append(group)
        elif c == ")":
            raise NotationError("unmatched ')'", pos)
        else:
            sym = alphabet.index_of_char(c)
            if sym is None:
                raise NotationError(f"unknown digit character {c!r}", pos)
            elements.append([sym])
            pos += 1
    return Word(alphabet, tuple(s for e in elements for s in e))


def _parse_count(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise NotationError("expected repeat count or 'w' after '^'", start)
    count = int(text[start:pos])
    if count < 1:
        raise NotationError("repeat count must be positive", start)
    return count, pos


def _parse_group(text: str, pos: int, alphabet: Alphabet) -> tuple[list[int], int]:
    open_pos = pos
    pos += 1
    elements: list[list[int]] = []
    while pos < len(text) and text[pos] != ")":
        c = text[pos]
        if c == "^":
            if not elements:
                raise NotationError("'^' without a preceding item", pos)
            pos += 1
            if pos < len(text) and text[pos] == "w":
                raise NotationError("'^w' only allowed in final position", pos - 1)
            count, pos = _parse_count(text, pos)
            elements[-1] = elements[-1] * count
        elif c == "(":
            group, pos = _parse_group(text, pos, alphabet)
            elements.append(group)
        else:
            sym = alphabet.index_of_char(c)
            if sym is None:
                raise NotationError(f"unknown digit character {c!r}", pos)
            elements.append([sym])
            pos += 1
    if pos >= len(text):
        raise NotationError("unmatched '('", open_pos)
    if not elements:
        raise NotationError("empty group", open_pos)
    return [s for e in elements for s in e], pos + 1


def format_seq(x: EPSeq | Word) -> str:
    """Render a sequence in the notation accepted by :func:`parse_seq`."""
    if isinstance(x, Word):
        return x.text()
    chars = x.alphabet.chars
    pre = "".join(chars[s] for s in x.preperiod)
    per = "".join(chars[s] for s in x.period)
    if len(per) > 1:
        per = f"({per})"
    return f"{pre}{per}^w"


# --- evaluation -----------------------------------------------------------

def _require_base(q: float) -> None:
    if not q > 1:
        raise ValueError(f"base must exceed 1, got {q}")


def _horner(digits, q: float) -> float:
    """sum digits[j] * q**-(j+1) evaluated right to left."""
    s = 0.0
    for d in reversed(digits):
        s = (s + d) / q
    return s


def pi_eval(seq: EPSeq, q: float) -> float:
    """Value of the infinite series sum c_i / q**i (closed form)."""
    _require_base(q)
    su = _horner([seq.alphabet.digits[s] for s in seq.preperiod], q)
    sv = _horner([seq.alphabet.digits[s] for s in seq.period], q)
    return su + q ** (-len(seq.preperiod)) * sv / (1.0 - q ** (-len(seq.period)))


def pi_eval_truncated(seq: EPSeq, q: float, n: int) -> float:
    """Partial sum of the first n terms."""
    _require_base(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _horner([seq.digit(i) for i in range(n)], q)


def pi_word(word: Word, q: float) -> float:
    """Value contributed by a finite word read from position 1."""
    _require_base(q)
    return _horner(word.digits(), q)


def pi_complement(seq: EPSeq, m: float, q: float) -> float:
    """pi_q of the digitwise reflection m - c_i of a zero-free sequence.

    Defined for sequences over {1, m}; computed as m/(q-1) - pi_q(c),
    which avoids leaving the alphabet.
    """
    _require_base(q)
    if abs(seq.alphabet.max_digit - m) > 1e-12:
        raise ValueError(f"m={m} does not match alphabet top digit")
    for s in set(seq.preperiod) | set(seq.period):
        if seq.alphabet.digits[s] not in (1.0, m):
            raise ValueError("complement needs a zero-free sequence over {1, m}")
    return m / (q - 1.0) - pi_eval(seq, q)


def lex_cmp(a: EPSeq, b: EPSeq) -> int:
    """-1, 0, or +1 for lexicographic order; 0 only for equal sequences."""
    if a.alphabet != b.alphabet:
        raise ValueError("sequences must share an alphabet")
    horizon = (
        len(a.preperiod)
        + len(b.preperiod)
        + math.lcm(len(a.period), len(b.period))
    )
    for i in range(horizon):
        sa, sb = a.symbol(i), b.symbol(i)
        if sa != sb:
            return -1 if sa < sb else 1
    return 0


def shift(seq: EPSeq, n: int) -> EPSeq:
    """Drop the first n symbols."""
    if n < 0:
        raise ValueError("shift distance must be nonnegative")
    pre, per = seq.preperiod, seq.period
    if n <= len(pre):
        return EPSeq(seq.alphabet, pre[n:], per)
    k = (n - len(pre)) % len(per)
    return EPSeq(seq.alphabet, (), per[k:] + per[:k])
