import random
from fractions import Fraction

import pytest

from realaut.automaton import AutomatonError
from realaut.oracles import random_simple_set
from realaut.simple_sets import (ALL, EMPTY, UNIT, Piece, SimpleSet, complement, format_set, intersection, member,
                                 normalize, parse_set, slice_set, threshold, union)

F = Fraction
R = parse_set("(1/3,2] U (8/3,3] U (11/3,inf)")


def test_half_open_interval_splits_into_open_part_and_point():
    s = parse_set("[1/4,1/3)")
    assert s == SimpleSet(((F(1, 4), F(1, 3)),), (F(1, 4),))


def test_bridging_point_merges_intervals():
    assert parse_set("(0,1) U {1} U (1,2)") == SimpleSet(((F(0), F(2)),), ())
    assert parse_set("(0,1) U (1,2)") == SimpleSet(((F(0), F(1)), (F(1), F(2))), ())


def test_empty():
    assert parse_set("∅") == EMPTY and EMPTY.is_empty()


def test_membership_in_the_running_example():
    assert member(R, 2)
    assert not member(R, F(1, 3))
    assert not member(R, F(11, 3))
    assert member(R, F(11, 3) + F(1, 10 ** 9))
    assert not member(R, F(5, 2))


def test_threshold():
    assert threshold(R) == 4
    assert threshold(EMPTY) == 0
    assert threshold(ALL) == 0
    assert threshold(parse_set("[0,2]")) == 3
    assert threshold(parse_set("[0,2)")) == 2


def test_slices_of_the_running_example():
    assert slice_set(R, 1) == UNIT
    assert slice_set(R, 2) == parse_set("{0} U (2/3,1]")
    assert slice_set(R, 3) == slice_set(R, 2)
    assert slice_set(EMPTY, 5) == EMPTY


def test_format_round_trip():
    for text in ["(1/3,2] U (8/3,3] U (11/3,inf)", "[1/4,1/3) U {11/24} U {2/3}", "∅", "[0,inf)"]:
        assert format_set(parse_set(text)) == text


def test_bad_inputs():
    with pytest.raises(AutomatonError):
        normalize([Piece(F(2), F(1))])
    with pytest.raises(AutomatonError):
        parse_set("(1,2")


def test_normalize_is_idempotent_and_exact():
    rng = random.Random(8)
    for _ in range(100):
        s = random_simple_set(rng, max_den=12)
        again = normalize([Piece(lo, hi) for lo, hi in s.intervals], s.singletons)
        assert again == s
        assert parse_set(format_set(s)) == s


def test_membership_matches_raw_pieces():
    rng = random.Random(9)
    pieces = [Piece(F(1, 3), F(2), False, True), Piece(F(2), F(5, 2), False, False), Piece(F(3), None, True)]
    points = [F(0), F(11, 4)]
    s = normalize(pieces, points)
    for _ in range(1000):
        r = F(rng.randint(0, 60), rng.randint(1, 12))
        raw = any(p.contains(r) for p in pieces) or r in points
        assert member(s, r) == raw


def test_slices_stabilize_and_rebuild_the_set():
    rng = random.Random(10)
    for _ in range(60):
        s = random_simple_set(rng, max_den=8)
        t = threshold(s)
        for i in range(t, t + 3):
            assert slice_set(s, i) == slice_set(s, t)
        for _ in range(40):
            r = F(rng.randint(0, 8 * (t + 1)), 8)
            if r < t + 1:
                i = int(r) if r.denominator != 1 or r == 0 else int(r) - 1
                assert member(s, r) == member(slice_set(s, i), r - i)


def test_boolean_operations():
    a, b = parse_set("[0,2]"), parse_set("(1,3)")
    assert union(a, b) == parse_set("[0,3)")
    assert intersection(a, b) == parse_set("(1,2]")
    assert complement(a) == parse_set("(2,inf)")
