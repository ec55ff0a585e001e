import random
from fractions import Fraction as F

import pytest

from realaut.automaton import Automaton, accepts_up_word, classify_states
from realaut.construct import a_n_family, build_rna
from realaut.minimize import minimize
from realaut.oracles import (OracleResourceError, _disjoint_union, distinguisher, oracle_classify, oracle_equivalence_small,
                             oracle_member_by_automaton, pairwise_distinguishable, random_weak_automaton,
                             simple_set_corpus, weak_automaton_corpus)
from realaut.saturation import check_saturated
from realaut.simple_sets import member


def test_membership_on_figures(figs):
    assert oracle_member_by_automaton(figs["fig1"], 2)
    assert not oracle_member_by_automaton(figs["fig1"], F(1, 3))
    # 1 is only reached through a leading zero: 01.(0)
    assert oracle_member_by_automaton(figs["fig6"], 1)
    assert not oracle_member_by_automaton(figs["fig6"], F(1, 2))


def test_membership_matches_built_sets():
    for s, b in simple_set_corpus(3, 10, max_den=6, max_value=2):
        a = build_rna(s, b)
        for k in range(0, 19):
            r = F(k, 6)
            assert oracle_member_by_automaton(a, r) == member(s, r)


def test_equivalence():
    a = a_n_family(3)
    flipped = a.replace(accepting=a.accepting ^ {4})
    assert not oracle_equivalence_small(a, flipped)
    m, _ = minimize(a)
    assert oracle_equivalence_small(a, m)
    one = Automaton(base=2, kind="fractional", delta=((0, 0),), initial=0, accepting=frozenset({0}))
    assert oracle_equivalence_small(one, one)


def test_equivalence_refuses_large_inputs():
    with pytest.raises(OracleResourceError):
        oracle_equivalence_small(a_n_family(6), a_n_family(6))


def test_distinguisher_is_a_real_witness():
    a = a_n_family(3)
    flipped = a.replace(accepting=a.accepting ^ {4})
    u, off = _disjoint_union(a, flipped)
    w = distinguisher(u, a.initial, flipped.initial + off, 8)
    assert w is not None
    assert accepts_up_word(a, w) != accepts_up_word(flipped, w)


def test_minimized_states_are_distinguishable():
    rng = random.Random(11)
    for _ in range(20):
        m, _ = minimize(random_weak_automaton(rng, rng.randint(1, 6), 2, "real"))
        assert pairwise_distinguishable(m) == []


def test_classification_matches_oracle(figs):
    rng = random.Random(4)
    autos = [figs[k] for k in ("fig2", "fig5")] + [random_weak_automaton(rng, 5, 2, "real") for _ in range(20)]
    for a in autos:
        cls = classify_states(a)
        o = oracle_classify(a)
        assert (cls.q_empty, cls.q_zero_one, cls.q_infty, cls.q_nat, cls.q_fra) == \
            (o["q_empty"], o["q_zero_one"], o["q_infty"], o["q_nat"], o["q_fra"])


def test_corpora_are_deterministic():
    assert simple_set_corpus(1, 5) == simple_set_corpus(1, 5)
    c1, c2 = weak_automaton_corpus(2, 5), weak_automaton_corpus(2, 5)
    assert [a.delta for a in c1] == [a.delta for a in c2]
    assert all(a.n > 2 for a in c1)


def test_weak_corpus_is_mostly_not_saturated():
    corpus = weak_automaton_corpus(0, 30)
    assert sum(not check_saturated(a).saturated for a in corpus) >= 10
