import random
from fractions import Fraction

import pytest

from realaut.automaton import STAR, AutomatonError, UPWord, parse_up_word, parse_word
from realaut.numeration import (all_real_encodings, fractional_encodings, is_b_adic, parse_rational,
                                real_encodings, up_word_value)


def words(encs):
    return {str(e) for e in encs}


def omega_prefix(w: UPWord, k: int = 12) -> tuple:
    return tuple(w.letter(i) for i in range(k))


def test_values_of_words():
    assert up_word_value(parse_up_word("(10)"), 2) == Fraction(2, 3)
    assert up_word_value(parse_up_word("10.(10)"), 2) == Fraction(8, 3)
    assert up_word_value(parse_up_word("(0)"), 7) == 0


def test_malformed_words_have_no_value():
    with pytest.raises(AutomatonError):
        up_word_value(parse_up_word("1..(0)"), 2)
    with pytest.raises(AutomatonError):
        up_word_value(UPWord((1,), (STAR,)), 2)


def test_quarter_has_two_fractional_encodings():
    encs = fractional_encodings(Fraction(1, 4), 2)
    got = {omega_prefix(e.word) for e in encs}
    assert got == {omega_prefix(parse_up_word("001(1)")), omega_prefix(parse_up_word("0100(0)"))}


def test_third_has_one_encoding():
    assert words(fractional_encodings(Fraction(1, 3), 2)) == {"(01)"}


def test_fractional_boundaries():
    assert words(fractional_encodings(0, 2)) == {"(0)"}
    assert words(fractional_encodings(1, 3)) == {"(2)"}
    with pytest.raises(AutomatonError):
        fractional_encodings(Fraction(3, 2), 2)


def test_real_encodings_examples():
    assert words(real_encodings(Fraction(1, 2), 2)) == {"0.1(0)", "0.0(1)"}
    assert words(real_encodings(2, 2)) == {"10.(0)", "1.(1)"}
    assert words(real_encodings(0, 2)) == {"0.(0)"}


def test_leading_zero_variants():
    ws = {str(w) for w in all_real_encodings(1, 3, 2)}
    assert ws == {"1.(0)", "01.(0)", "001.(0)", ".(2)", "0.(2)", "00.(2)"}


def test_round_trip_and_dual_encodings():
    rng = random.Random(3)
    for _ in range(500):
        b = rng.choice([2, 3, 10])
        d = rng.randint(1, 10 ** 4)
        r = Fraction(rng.randint(0, 5 * d), d)
        encs = real_encodings(r, b)
        for e in encs:
            assert up_word_value(e.word, b) == r
            assert e.u.count(STAR) == 1
            nat = e.u[:e.u.index(STAR)]
            assert nat == (0,) or nat[0] != 0
        assert (len(encs) == 2) == (r != 0 and is_b_adic(r, b))
        if r <= 1:
            f = fractional_encodings(r, b)
            assert (len(f) == 2) == (0 < r < 1 and is_b_adic(r, b))
            for e in f:
                assert up_word_value(e.word, b) == r


def test_periods_are_primitive():
    rng = random.Random(4)
    for _ in range(300):
        b = rng.choice([2, 3, 10])
        d = rng.randint(1, 500)
        r = Fraction(rng.randint(0, d), d)
        for e in fractional_encodings(r, b):
            n = len(e.v)
            for k in range(1, n):
                if n % k == 0:
                    assert e.v[:k] * (n // k) != e.v
            if e.u:
                assert e.u[-1] != e.v[-1]


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" 4 ") == 4
    with pytest.raises(AutomatonError):
        parse_rational("x")
    assert parse_word("1.0") == (1, STAR, 0)
