import random
from fractions import Fraction

from realaut.automaton import UPWord, accepts_up_word, classify_states, is_weak, validate
from realaut.construct import a_n_family, build_fna, build_rna, encoding_plan
from realaut.decide import check_baf
from realaut.minimize import isomorphic, minimize
from realaut.numeration import real_encodings
from realaut.oracles import oracle_member_by_automaton, random_simple_set
from realaut.simple_sets import ALL, EMPTY, member, parse_set

F = Fraction


def accepted_words(a, bound):
    """All u v^omega with |u| <= bound, |v| <= bound accepted by a (as omega-word prefixes)."""
    from itertools import product
    out = set()
    for k in range(bound + 1):
        for u in product(a.letters, repeat=k):
            for m in range(1, bound + 1):
                for v in product(a.letters, repeat=m):
                    w = UPWord(u, v)
                    if accepts_up_word(a, w):
                        out.add(tuple(w.letter(i) for i in range(2 * bound + 4)))
    return out


def test_fig4_and_fig5_are_the_automaton_of_their_set(figs):
    s = parse_set("[1/4,1/3) U {11/24} U {2/3}")
    m, _ = minimize(build_fna(s, 2))
    assert isomorphic(m, minimize(figs["fig4"])[0])
    assert isomorphic(m, minimize(figs["fig5"])[0])


def test_unit_interval_is_one_loop():
    m, _ = minimize(build_fna(parse_set("[0,1]"), 2))
    acc = [q for q in range(m.n) if q in m.accepting]
    assert len(acc) == 1 and all(t == acc[0] for t in m.delta[acc[0]])


def test_half_has_exactly_two_accepted_words():
    a = build_fna(parse_set("{1/2}"), 2)
    expected = {tuple(UPWord(u, v).letter(i) for i in range(12)) for u, v in [((1,), (0,)), ((0,), (1,))]}
    assert accepted_words(a, 4) == expected


def test_fig1_is_the_automaton_of_the_running_example(figs):
    a = build_rna(parse_set("(1/3,2] U (8/3,3] U (11/3,inf)"), 2)
    assert isomorphic(minimize(a)[0], figs["fig2"])


def test_degenerate_sets():
    full, _ = minimize(build_rna(ALL, 2))
    assert full.n == 3
    q0 = full.initial
    assert full.delta[q0][0] == q0 and full.delta[q0][1] == q0
    zu = full.star(q0)
    assert zu in full.accepting and full.delta[zu][0] == zu
    empty, _ = minimize(build_rna(EMPTY, 3))
    assert empty.n == 1 and not empty.accepting


def test_zero_is_read_with_leading_zeros_only():
    m, _ = minimize(build_rna(parse_set("{0}"), 2))
    q0 = m.initial
    assert m.delta[q0][0] == q0
    for k in range(4):
        assert accepts_up_word(m, UPWord((0,) * k + (".",), (0,)))
    assert not accepts_up_word(m, UPWord((1, "."), (0,)))
    assert not accepts_up_word(m, UPWord((".", 1), (0,)))


def test_plan_is_prefix_free():
    s = parse_set("[1/4,1/3) U {11/24} U {2/3} U (3/4,1]")
    plan = encoding_plan(s, 2)
    us = [u for u, _ in plan.words]
    for i, u in enumerate(us):
        assert len(u) > plan.l
        for j, w in enumerate(us):
            if i != j and w[:len(u)] == u:
                assert plan.words[i][1] == plan.words[j][1]


def test_endpoint_encodings_are_treated_alike():
    rng = random.Random(21)
    for _ in range(60):
        s = random_simple_set(rng, max_den=16)
        b = rng.choice([2, 3])
        a = build_rna(s, b)
        for r in s.points():
            accs = {accepts_up_word(a, e.word) for e in real_encodings(r, b)}
            assert len(accs) == 1
            assert accs == {member(s, r)}


def test_round_trip_membership():
    rng = random.Random(22)
    for _ in range(200):
        s = random_simple_set(rng, max_den=64)
        b = rng.choice([2, 3])
        a = build_rna(s, b)
        for _ in range(50):
            d = rng.randint(1, 64)
            r = F(rng.randint(0, 6 * d), d)
            assert member(s, r) == any(accepts_up_word(a, e.word) for e in real_encodings(r, b))


def test_fractional_automata_are_weak_and_in_the_family():
    rng = random.Random(23)
    for _ in range(60):
        s = random_simple_set(rng, max_den=16, max_value=1, unbounded=0)
        b = rng.choice([2, 3])
        a = build_fna(s, b)
        assert validate(a) == [] and is_weak(a)
        m, _ = minimize(a)
        assert check_baf(m)[0]
        for _ in range(20):
            r = F(rng.randint(0, 16), 16)
            assert oracle_member_by_automaton(a, r) == member(s, r)


def test_a_n_shape():
    for n in range(1, 8):
        a = a_n_family(n)
        assert a.n == n + 4
        assert classify_states(a).q_zero_one == frozenset()
