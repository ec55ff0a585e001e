import random
from fractions import Fraction as F

import pytest

from realaut.construct import a_n_family, build_fna, build_rna
from realaut.decide import extract_simple_set
from realaut.formula.ast import FALSE, conj, const, eq, evaluate, exists, le, length, lt, plus
from realaut.formula.qe import FormulaEvaluator, QEBudgetError, decide_sentence
from realaut.formula.synth import (EXISTS, EXISTS_FORALL, psi_fra, psi_nat, synthesis_context, synthesize)
from realaut.formula.text import parse_formula, parse_infix, parse_prefix, to_infix, to_prefix
from realaut.minimize import minimize
from realaut.simple_sets import member, parse_set


def test_length_small_examples():
    assert length(const(1)) == 1
    f = eq(plus("x", 1), 1)
    assert length(f) == 5
    assert length(exists(["x"], f)) == 1 + length(f)
    # 3/4: two bits of numerator, two of denominator
    assert length(const(F(3, 4))) == 4


def test_length_counts_nary_connectives_as_binary():
    a, b, c = lt("x", 1), lt("y", 1), lt("z", 1)
    assert length(conj(a, b, c)) == 2 + 3 * 3


@pytest.mark.parametrize("text", [
    "exists y. (x = y + y & 0 < y)",
    "forall y. (y < x | x < y | x = y)",
    "~(x < 1/3) & 2*x < 5",
])
def test_text_round_trip(text):
    f = parse_infix(text)
    assert parse_infix(to_infix(f)) == f
    assert parse_prefix(to_prefix(f)) == f
    assert parse_formula(to_prefix(f)) == f


def test_synthesized_formula_round_trips(figs):
    f = synthesize(figs["fig2"], EXISTS)
    assert parse_formula(to_infix(f)) == parse_formula(to_prefix(f))


def test_decide_sentence_examples():
    half = parse_infix("exists x. (0 < x & x < 1 & x + x = 1)")
    assert decide_sentence(half)
    assert not decide_sentence(parse_infix("exists x. x < x"))
    assert decide_sentence(parse_infix("forall x. exists y. x < y"))
    assert not decide_sentence(parse_infix("exists x. forall y. y < x"))
    assert decide_sentence(parse_infix("x + 1 = 3"), {"x": 2})


@pytest.mark.parametrize("shape", [EXISTS, EXISTS_FORALL])
def test_fig2_formula_points(figs, shape):
    ev = FormulaEvaluator(synthesize(figs["fig2"], shape))
    assert [ev(F(5, 3)), ev(F(1, 3)), ev(4), ev(F(8, 3))] == [True, False, True, False]


@pytest.mark.parametrize("shape", [EXISTS, EXISTS_FORALL])
def test_fig2_formula_matches_set(figs, shape):
    a = figs["fig2"]
    s = extract_simple_set(a)
    ev = FormulaEvaluator(synthesize(a, shape))
    rng = random.Random(5)
    pts = [F(rng.randint(0, 60), rng.randint(1, 12)) for _ in range(50)]
    assert [ev(r) for r in pts] == [member(s, r) for r in pts]


def test_both_shapes_agree_on_fractional_automaton():
    a, _ = minimize(build_fna(parse_set("[0,1/4) U {1/2} U (2/3,1]"), 2))
    s = extract_simple_set(a)
    e1 = FormulaEvaluator(synthesize(a, EXISTS))
    e2 = FormulaEvaluator(synthesize(a, EXISTS_FORALL))
    for r in [F(k, 12) for k in range(13)] + [F(-1), F(5, 4)]:
        assert e1(r) == e2(r) == member(s, r)


def test_degenerate_sets():
    assert synthesize(build_rna(parse_set("{}"), 2)) == FALSE
    assert synthesize(build_rna(parse_set("[0,inf)"), 2)) == le(0, "x")


def test_exists_forall_is_shorter_for_an():
    for n in (4, 6, 8):
        a = a_n_family(n)
        assert length(synthesize(a, EXISTS_FORALL)) < length(synthesize(a, EXISTS))


def test_unbounded_set():
    a = build_rna(parse_set("(1/2,1] U [3,inf)"), 2)
    ev = FormulaEvaluator(synthesize(a))
    assert [ev(F(1, 2)), ev(1), ev(2), ev(3), ev(100)] == [False, True, False, True, True]


def test_budget_error():
    f = parse_infix("forall y. forall z. (y < x | z < y | x < z | y = z + 1)")
    with pytest.raises(QEBudgetError):
        FormulaEvaluator(f, budget=1)


def _run(a, q, word):
    states = [q]
    for x in word:
        q = a.delta[q][a.letters.index(x)]
        states.append(q)
    return states


def test_step_formulas_hold_on_the_intended_run(figs):
    # x = 5/3 = 1.(10) in base 2
    a = figs["fig2"]
    ctx = synthesis_context(a)
    n, b = ctx.n, ctx.base
    st = ctx.state
    digits = [0] * (n - 1) + [1]
    pI = _run(a, a.initial, digits)
    xI = [0]
    for d in digits:
        xI.append(b * xI[-1] + d)
    for i in range(n):
        assert evaluate(psi_nat(ctx, st(pI[i]), xI[i], st(pI[i + 1]), xI[i + 1]), {})
    frac = [1, 0] * n
    pF = _run(a, a.star(pI[n]), frac[:n])
    xF = [F(2, 3) if i % 2 == 0 else F(1, 3) for i in range(n + 1)]
    s = [0]
    for i in range(n):
        s.append(1 if s[-1] == 1 or pF[i] in ctx.pivots else 0)
    assert s[n] == 1
    k = s.index(1) - 1
    p, y = pF[k], xF[k]
    for i in range(n):
        f = psi_fra(ctx, st(p), y, st(pF[i]), xF[i], s[i], st(pF[i + 1]), xF[i + 1], s[i + 1])
        assert evaluate(f, {})
    # a wrong digit breaks the natural step
    assert not evaluate(psi_nat(ctx, st(pI[0]), 0, st(pI[1]), 2), {})
