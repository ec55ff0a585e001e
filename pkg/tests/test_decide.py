import random
from fractions import Fraction

import pytest

from realaut.automaton import FRACTIONAL, REAL, Automaton, AutomatonError, UPWord, accepts_up_word
from realaut.construct import a_n_family, build_rna
from realaut.decide import (Analysis, check_baf, check_bar, decide, decide_simple, extract_simple_set,
                            fractional_sets)
from realaut.minimize import isomorphic, minimize
from realaut.numeration import up_word_value
from realaut.oracles import oracle_member_by_automaton, random_simple_set, weak_automaton_corpus
from realaut.simple_sets import UNIT, member, parse_set

F = Fraction


def test_fig5_cycle_profile(figs):
    a, _ = minimize(figs["fig5"])
    ok, profiles = check_baf(a)
    assert ok
    q = a.state("q0101")
    prof = next(p for p in profiles if q in p.states)
    assert prof.digits[prof.states.index(q)] == 0
    assert prof.value_at(q) == F(1, 3)
    assert a.names[prof.beta_below] == "zu" and a.names[prof.beta_above] == "∅"
    assert prof.below_full and not prof.above_full and not prof.accepting


def test_fig5_state_sets(figs):
    a, _ = minimize(figs["fig5"])
    an = Analysis.of(a)
    sets = fractional_sets(a, an, check_baf(a, an)[1])
    assert sets[a.state("q010")] == parse_set("[0,2/3)")
    assert sets[a.state("q01")] == parse_set("[0,1/3) U {5/6}")
    assert sets[a.state("q0")] == parse_set("[1/2,2/3) U {11/12}")
    assert extract_simple_set(a) == parse_set("[1/4,1/3) U {11/24} U {2/3}")


def test_two_digit_component_is_not_a_cycle():
    # state 0 keeps both digits inside its component
    a = Automaton(base=2, kind=FRACTIONAL, delta=((1, 0), (0, 2), (2, 2)), initial=0, accepting=frozenset({0, 1}))
    assert not check_baf(a)[0]


def test_a3_is_in_the_fractional_family():
    ok, profiles = check_baf(a_n_family(3))
    assert ok and len(profiles) == 2
    for p in profiles:
        assert not p.below_full and not p.above_full and p.accepting


def test_bar_properties(figs):
    assert check_bar(figs["fig2"]) == (True, None)
    assert check_bar(minimize(figs["fig6"])[0]) == (False, 3)
    empty = Automaton(base=2, kind=REAL, delta=((0, 0, 0),), initial=0, accepting=frozenset())
    assert check_bar(empty) == (False, 2)


def test_decide_on_the_figures(figs):
    assert decide_simple(figs["fig2"])
    d = decide(minimize(figs["fig6"])[0])
    assert not d.simple and d.violated == 3
    empty = Automaton(base=2, kind=REAL, delta=((0, 0, 0),), initial=0, accepting=frozenset())
    assert decide_simple(empty)


def test_decide_needs_a_minimal_automaton(figs):
    with pytest.raises(AutomatonError):
        decide_simple(figs["fig1"])
    assert decide_simple(figs["fig1"], assume_minimal=True)


def test_extract_examples(figs):
    assert str(extract_simple_set(figs["fig2"])) == "(1/3,2] U (8/3,3] U (11/3,inf)"
    zu = Automaton(base=2, kind=FRACTIONAL, delta=((0, 0),), initial=0, accepting=frozenset({0}))
    assert extract_simple_set(zu) == UNIT


def test_extract_refuses_outside_the_family(figs):
    with pytest.raises(AutomatonError):
        extract_simple_set(minimize(figs["fig6"])[0])


@pytest.mark.parametrize("n", range(1, 13))
def test_a_n_has_exponentially_many_points(n):
    s = extract_simple_set(a_n_family(n))
    assert not s.intervals
    assert list(s.singletons) == [F(m, 2 ** n) for m in range(2 ** n + 1)]


def test_round_trip_and_self_check():
    rng = random.Random(31)
    for _ in range(80):
        s = random_simple_set(rng, max_den=32)
        b = rng.choice([2, 3])
        m, _ = minimize(build_rna(s, b))
        assert decide_simple(m)
        e = extract_simple_set(m)
        assert e == s
        assert isomorphic(minimize(build_rna(e, b))[0], m)


def test_infinite_tail_beyond_the_bound():
    rng = random.Random(32)
    seen = 0
    for _ in range(60):
        s = random_simple_set(rng, max_den=8, unbounded=0.6)
        if s.bounded():
            continue
        b = rng.choice([2, 3])
        m, _ = minimize(build_rna(s, b))
        e = extract_simple_set(m)
        top = b ** (m.n - 1)
        for _ in range(20):
            r = top + F(rng.randint(0, 1000), rng.randint(1, 9))
            assert member(e, r)
        seen += 1
    assert seen > 10


def test_no_false_positive_on_random_words():
    rng = random.Random(33)
    for a in weak_automaton_corpus(34, 60):
        if not decide_simple(a):
            continue
        e = extract_simple_set(a)
        for _ in range(500):
            nat = tuple(rng.randrange(a.base) for _ in range(rng.randint(0, 4)))
            frac = tuple(rng.randrange(a.base) for _ in range(rng.randint(0, 4)))
            per = tuple(rng.randrange(a.base) for _ in range(rng.randint(1, 3)))
            w = UPWord(nat + (".",) + frac, per)
            if accepts_up_word(a, w):
                assert member(e, up_word_value(w, a.base))
        for _ in range(100):
            r = F(rng.randint(0, 200), rng.randint(1, 12))
            assert member(e, r) == oracle_member_by_automaton(a, r)
