"""Tests for alphabets, sequence notation, and pi evaluation."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from univoque.sequences import (
    Alphabet,
    ApproxValue,
    EPSeq,
    NotationError,
    Word,
    format_seq,
    lex_cmp,
    parse_seq,
    pi_complement,
    pi_eval,
    pi_eval_truncated,
    pi_word,
    shift,
)

T3 = Alphabet.ternary(3)


def test_ternary_alphabet_properties():
    assert T3.digits == (0.0, 1.0, 3.0)
    assert T3.chars == ("0", "1", "m")
    assert T3.span == 3.0
    assert T3.gaps == (1.0, 2.0)
    assert T3.necessity_threshold == pytest.approx(2.5)
    assert T3.saturation_threshold == pytest.approx(4.0)


def test_general_alphabet_uses_index_characters():
    a = Alphabet.from_digits([0, 1, 2.5, 7])
    assert a.chars == ("0", "1", "2", "3")
    assert a.max_digit == 7.0


@pytest.mark.parametrize("digits", [[1], [0, 0], [2, 1], []])
def test_bad_alphabets_rejected(digits):
    with pytest.raises(ValueError):
        Alphabet.from_digits(digits)


def test_ternary_needs_m_at_least_two():
    with pytest.raises(ValueError):
        Alphabet.ternary(1.5)


@pytest.mark.parametrize("text,pre,per", [
    ("m1^w", (2,), (1,)),
    ("(m1)^w", (), (2, 1)),
    ("mm1(m11m)^w", (2, 2, 1), (2, 1, 1, 2)),
    ("1^3m^w", (1, 1, 1), (2,)),
    ("0(01)^w", (0,), (0, 1)),
    ("(1m)^2(m1)^w", (1, 2, 1, 2), (2, 1)),
])
def test_parse_eventually_periodic(text, pre, per):
    seq = parse_seq(text, T3)
    assert isinstance(seq, EPSeq)
    assert seq.preperiod == pre
    assert seq.period == per


def test_parse_finite_word():
    w = parse_seq("11m", T3)
    assert isinstance(w, Word)
    assert w.symbols == (1, 1, 2)
    assert w.text() == "11m"
    assert w.digits() == (1.0, 1.0, 3.0)


def test_repeat_counts_expand():
    w = parse_seq("(m1)^3", T3)
    assert w.symbols == (2, 1, 2, 1, 2, 1)


def test_canonical_form_absorbs_rotations():
    # m(1m)^w is the same infinite sequence as (m1)^w
    assert parse_seq("m(1m)^w", T3) == parse_seq("(m1)^w", T3)
    assert parse_seq("1mm^w", T3) == parse_seq("1m^w", T3)
    assert parse_seq("(mm)^w", T3) == parse_seq("m^w", T3)
    assert parse_seq("1m1m(1m)^w", T3) == parse_seq("(1m)^w", T3)


def test_canonical_preperiod_never_shares_last_symbol_with_period():
    seq = parse_seq("m111(1m11)^w", T3)
    assert not seq.preperiod or seq.preperiod[-1] != seq.period[-1]


@pytest.mark.parametrize("text,offset", [
    ("m1^", 3),
    ("^w", 0),
    ("m1^0", 3),
    ("(m1", 0),
    ("m)1", 1),
    ("()^w", 0),
    ("x1^w", 0),
    ("m^w1", 1),
    ("(m^w)", 2),
    ("m^-2", 2),
])
def test_notation_errors_carry_offsets(text, offset):
    with pytest.raises(NotationError) as exc:
        parse_seq(text, T3)
    assert exc.value.offset == offset


def test_format_round_trips_fixed_cases():
    for text in ["m1^w", "(m1)^w", "mm1(m11m)^w", "m^w", "0(01)^w", "11m"]:
        assert format_seq(parse_seq(text, T3)) == text


sym_lists = st.lists(st.integers(0, 2), max_size=8)
periods = st.lists(st.integers(0, 2), min_size=1, max_size=6)


@given(pre=sym_lists, per=periods)
def test_format_parse_round_trip(pre, per):
    seq = EPSeq(T3, tuple(pre), tuple(per))
    again = parse_seq(format_seq(seq), T3)
    assert again == seq


@given(pre=sym_lists, per=periods, probe=st.integers(0, 40))
def test_canonicalization_preserves_the_sequence(pre, per, probe):
    raw_symbol = (pre + per * 40)[probe] if probe < len(pre) else \
        per[(probe - len(pre)) % len(per)]
    seq = EPSeq(T3, tuple(pre), tuple(per))
    assert seq.symbol(probe) == raw_symbol


@given(syms=sym_lists)
def test_word_round_trip(syms):
    w = Word(T3, tuple(syms))
    assert parse_seq(w.text(), T3) == w


def test_empty_period_rejected():
    with pytest.raises(ValueError):
        EPSeq(T3, (1,), ())


def test_symbols_validated_against_alphabet():
    with pytest.raises(ValueError):
        EPSeq(T3, (3,), (1,))
    with pytest.raises(ValueError):
        Word(T3, (0, 5))


# --- evaluation -------------------------------------------------------------

def test_pi_eval_known_values():
    assert pi_eval(parse_seq("1^w", T3), 2.0) == pytest.approx(1.0)
    assert pi_eval(parse_seq("m^w", T3), 2.5) == pytest.approx(2.0)
    # (m1)^w at q: (m q + 1) / (q^2 - 1)
    q = 2.25
    assert pi_eval(parse_seq("(m1)^w", T3), q) == pytest.approx(
        (3 * q + 1) / (q * q - 1), rel=1e-14)


def test_pi_word_is_the_finite_sum():
    q = 2.5
    assert pi_word(parse_seq("m01", T3), q) == pytest.approx(
        3 / q + 0 / q**2 + 1 / q**3, rel=1e-14)


def test_base_must_exceed_one():
    seq = parse_seq("1^w", T3)
    for bad in (1.0, 0.5, -2.0):
        with pytest.raises(ValueError):
            pi_eval(seq, bad)


def test_pi_eval_matches_truncation_within_tail_bound():
    rng = random.Random(20240811)
    for _ in range(1000):
        m = rng.uniform(2.0, 6.0)
        alphabet = Alphabet.ternary(m)
        pre = tuple(rng.randrange(3) for _ in range(rng.randrange(6)))
        per = tuple(rng.randrange(3) for _ in range(1, rng.randrange(1, 6) + 1))
        seq = EPSeq(alphabet, pre, per)
        q = rng.uniform(1.1, 4.0)
        n = rng.randrange(30, 60)
        # analytic tail bound plus a rounding allowance for the two sums
        bound = m * q ** (-n) / (q - 1.0) + 1e-12
        assert abs(pi_eval(seq, q) - pi_eval_truncated(seq, q, n)) <= bound


def test_truncation_rejects_negative_length():
    with pytest.raises(ValueError):
        pi_eval_truncated(parse_seq("1^w", T3), 2.0, -1)


def test_pi_complement_matches_reflected_partial_sums():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.uniform(2.0, 5.0)
        alphabet = Alphabet.ternary(m)
        pre = tuple(rng.choice([1, 2]) for _ in range(rng.randrange(4)))
        per = tuple(rng.choice([1, 2]) for _ in range(1, rng.randrange(1, 5) + 1))
        seq = EPSeq(alphabet, pre, per)
        q = rng.uniform(2.05, 3.5)
        n = 80
        partial = sum((m - seq.digit(i)) * q ** (-(i + 1)) for i in range(n))
        assert pi_complement(seq, m, q) == pytest.approx(partial, abs=1e-12)


def test_pi_complement_requires_zero_free_digits():
    with pytest.raises(ValueError):
        pi_complement(parse_seq("0(1m)^w", T3), 3.0, 2.5)
    with pytest.raises(ValueError):
        pi_complement(parse_seq("(1m)^w", T3), 4.0, 2.5)


# --- order and shifts -------------------------------------------------------

def test_lex_cmp_basic():
    a = parse_seq("(1m)^w", T3)
    b = parse_seq("(m1)^w", T3)
    assert lex_cmp(a, b) == -1
    assert lex_cmp(b, a) == 1
    assert lex_cmp(a, parse_seq("1m(1m)^w", T3)) == 0


def test_lex_cmp_requires_shared_alphabet():
    with pytest.raises(ValueError):
        lex_cmp(parse_seq("1^w", T3), parse_seq("1^w", Alphabet.ternary(4)))


def test_lex_order_agrees_with_pi_above_saturation():
    """Above 1 + span/min_gap the value map is strictly increasing in
    lexicographic order, so constructed pairs must compare the same way."""
    rng = random.Random(991)
    q = 4.2  # saturation for m=3 is 4
    for _ in range(1000):
        k = rng.randrange(0, 13)
        common = [rng.randrange(3) for _ in range(k)]
        lo_sym = rng.randrange(0, 2)
        hi_sym = rng.randrange(lo_sym + 1, 3)
        tail_a = tuple(rng.randrange(3) for _ in range(1, rng.randrange(1, 4) + 1))
        tail_b = tuple(rng.randrange(3) for _ in range(1, rng.randrange(1, 4) + 1))
        a = EPSeq(T3, tuple(common + [lo_sym]), tail_a)
        b = EPSeq(T3, tuple(common + [hi_sym]), tail_b)
        assert lex_cmp(a, b) == -1
        assert pi_eval(a, q) < pi_eval(b, q)


@given(pre=sym_lists, per=periods, n=st.integers(0, 20))
def test_shift_drops_a_prefix(pre, per, n):
    seq = EPSeq(T3, tuple(pre), tuple(per))
    shifted = shift(seq, n)
    for i in range(12):
        assert shifted.symbol(i) == seq.symbol(n + i)


def test_shift_value_identity():
    rng = random.Random(5150)
    for _ in range(300):
        pre = tuple(rng.randrange(3) for _ in range(rng.randrange(5)))
        per = tuple(rng.randrange(3) for _ in range(1, rng.randrange(1, 5) + 1))
        seq = EPSeq(T3, pre, per)
        q = rng.uniform(1.2, 3.8)
        lhs = pi_eval(seq, q)
        rhs = seq.digit(0) / q + pi_eval(shift(seq, 1), q) / q
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_shift_rejects_negative():
    with pytest.raises(ValueError):
        shift(parse_seq("1^w", T3), -1)


def test_approx_value_sign_and_boundary():
    assert ApproxValue(0.5).sign() == 1
    assert ApproxValue(-0.5).sign() == -1
    assert ApproxValue(1e-12).sign() == 0
    assert ApproxValue(1e-12).boundary
    assert not ApproxValue(0.5).boundary
    assert ApproxValue(3e-7, err=1e-6).sign() == 0
