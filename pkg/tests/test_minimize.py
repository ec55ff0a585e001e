import random

from realaut.automaton import FRACTIONAL, REAL, UPWord, accepts_up_word, compute_sccs
from realaut.construct import a_n_family
from realaut.minimize import canonical_coloring, is_minimal, isomorphic, minimize
from realaut.oracles import oracle_equivalence_small, pairwise_distinguishable, random_weak_automaton
from realaut.saturation import language_equal


def random_word(rng, letters, k):
    return UPWord(tuple(rng.choice(letters) for _ in range(rng.randint(0, k))),
                  tuple(rng.choice(letters) for _ in range(rng.randint(1, k))))


def test_fig1_minimizes_to_fig2(figs):
    m, mu = minimize(figs["fig1"])
    assert m.n == 10
    assert isomorphic(m, figs["fig2"])
    assert mu.check() == []


def test_fig2_is_minimal(figs):
    assert is_minimal(figs["fig2"])
    assert not is_minimal(figs["fig1"])


def test_both_refinements_agree():
    rng = random.Random(1)
    for _ in range(60):
        a = random_weak_automaton(rng, rng.randint(1, 9), rng.choice([2, 3]))
        h, _ = minimize(a, "hopcroft")
        m, _ = minimize(a, "moore")
        assert isomorphic(h, m, transient_flags=True)


def test_rank_parity_marks_accepting_limits():
    a = a_n_family(3)
    rank = canonical_coloring(a).rank
    scc = compute_sccs(a)
    for q in range(a.n):
        if scc.recurrent[q]:
            assert (rank[q] % 2 == 1) == (q in a.accepting)
        for t in a.delta[q]:
            assert rank[t] <= rank[q]


def test_language_is_preserved_on_sampled_words():
    rng = random.Random(2)
    for _ in range(40):
        a = random_weak_automaton(rng, rng.randint(1, 8), rng.choice([2, 3]), rng.choice([REAL, FRACTIONAL]))
        m, mu = minimize(a)
        src = mu.source
        for _ in range(200):
            w = random_word(rng, a.letters, 2 * a.n)
            assert accepts_up_word(a, w) == accepts_up_word(m, w)
        for q in range(src.n):
            for _ in range(10):
                w = random_word(rng, a.letters, 4)
                assert accepts_up_word(src, w, start=q) == accepts_up_word(m, w, start=mu(q))


def test_result_states_are_distinguishable():
    rng = random.Random(3)
    for _ in range(60):
        a = random_weak_automaton(rng, rng.randint(1, 6), rng.choice([2, 3]))
        m, _ = minimize(a)
        assert pairwise_distinguishable(m) == []
        assert language_equal(a, m)


def test_small_equivalence_oracle_agrees():
    rng = random.Random(4)
    for _ in range(30):
        a = random_weak_automaton(rng, rng.randint(1, 4), 2, FRACTIONAL)
        m, _ = minimize(a)
        assert oracle_equivalence_small(a, m)
