"""Command-line interface.

Exit codes: 0 on success (or a "yes"/"true" answer), 2 on a "no"/"false"
answer, 1 on errors.
"""

from __future__ import annotations

import argparse
import gc
import sys
import time
from fractions import Fraction

from .automaton import FRACTIONAL, REAL, AutomatonError, UPWord, accepts_up_word, classify_states, parse_word
from .construct import a_n_family, build_fna, build_rna
from .decide import decide, extract_simple_set
from .formula.ast import length
from .formula.qe import FormulaEvaluator, QEBudgetError
from .formula.synth import EXISTS, EXISTS_FORALL, synthesize
from .formula.text import FormulaSyntaxError, parse_formula, to_infix, to_prefix
from .minimize import isomorphic, minimize
from .numeration import parse_rational
from .saturation import check_saturated
from .simple_sets import format_set, parse_set
from .textfmt import FIXTURES, load_fixture, parse_automaton, serialize_automaton

OK, ERROR, NO = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    return parse_automaton(_read(path))


def cmd_build(args) -> int:
    s = parse_set(args.set)
    a = build_fna(s, args.base) if args.kind == FRACTIONAL else build_rna(s, args.base)
    print(serialize_automaton(a), end="")
    return OK


def cmd_minimize(args) -> int:
    a = _load(args.file)
    m, mu = minimize(a)
    print(serialize_automaton(m), end="")
    print("# morphism")
    for q in range(mu.source.n):
        print(f"# {mu.source.names[q]} -> {m.names[mu(q)]}")
    return OK


def cmd_classify(args) -> int:
    a = _load(args.file)
    named = classify_states(a).named(a)
    labels = {"q_empty": "Q_empty", "q_zero_one": "Q_01", "q_infty": "Q_inf", "q_nat": "Q_nat", "q_fra": "Q_fra"}
    for key, label in labels.items():
        print(f"{label}: {' '.join(named[key])}")
    return OK


def cmd_decide(args) -> int:
    a = _load(args.file)
    if not args.assume_minimal:
        a, _ = minimize(a)
    d = decide(a, assume_minimal=True)
    if d.simple:
        print("yes")
        return OK
    if a.kind in (REAL, FRACTIONAL) and not check_saturated(a).saturated:
        print("no (false negative possible: input not saturated)")
    else:
        print(f"no ({d.reason})")
    return NO


def cmd_extract(args) -> int:
    a, _ = minimize(_load(args.file))
    print(format_set(extract_simple_set(a)))
    return OK


def cmd_formula(args) -> int:
    a, _ = minimize(_load(args.file))
    f = synthesize(a, args.shape)
    print(to_prefix(f) if args.format == "prefix" else to_infix(f))
    if args.length:
        print(f"# length {length(f)}", file=sys.stderr)
    return OK


def cmd_eval(args) -> int:
    x = parse_rational(args.x)
    if args.automaton:
        a, _ = minimize(_load(args.file))
        f = synthesize(a, args.shape)
    else:
        f = parse_formula(_read(args.file))
    result = FormulaEvaluator(f, free=(args.var,), budget=args.budget)(x)
    print("true" if result else "false")
    return OK if result else NO


def cmd_accepts(args) -> int:
    a = _load(args.file)
    result = accepts_up_word(a, UPWord(parse_word(args.u), parse_word(args.v)))
    print("true" if result else "false")
    return OK if result else NO


def cmd_check_saturated(args) -> int:
    a = _load(args.file)
    res = check_saturated(a)
    if res.saturated:
        print("saturated")
        return OK
    acc, rej = res.witness
    print(f"not saturated: {res.reason}; accepted {acc}, rejected {rej}")
    return NO


def _selftest_checks():
    f1, f2 = load_fixture("fig1"), load_fixture("fig2")
    m1, _ = minimize(f1)
    yield "minimize(fig1) is isomorphic to fig2", isomorphic(m1, f2)
    yield "fig2 rejects 011.(10)", not accepts_up_word(f2, UPWord(parse_word("011."), parse_word("10")))
    yield "fig2 accepts .(1)", accepts_up_word(f2, UPWord(parse_word("."), parse_word("1")))
    yield "fig2 is simple", decide(f2).simple
    yield "extract(fig2)", format_set(extract_simple_set(f2)) == "(1/3,2] U (8/3,3] U (11/3,inf)"
    fig6, _ = minimize(load_fixture("fig6"))
    yield "fig6 is refused", not decide(fig6, assume_minimal=True).simple
    yield "fig6 is not saturated", not check_saturated(fig6).saturated
    for name in FIXTURES[:5]:
        a, _ = minimize(load_fixture(name))
        yield f"{name} is saturated", check_saturated(a).saturated
    ev = FormulaEvaluator(synthesize(f2, EXISTS))
    yield "formula of fig2 at 5/3, 1/3, 4, 8/3", [ev(Fraction(5, 3)), ev(Fraction(1, 3)), ev(4), ev(Fraction(8, 3))] \
        == [True, False, True, False]


def cmd_selftest(args) -> int:
    failed = 0
    for label, ok in _selftest_checks():
        print(f"{'ok  ' if ok else 'FAIL'} {label}")
        failed += not ok
    return OK if not failed else ERROR


def _bench_automaton(family: str, n: int):
    if family == "an":
        return a_n_family(n)
    # natural part with about n states: [1/3, n - 1/2]
    return build_rna(parse_set(f"[1/3,{2 * n - 1}/2]"), 2)


def cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",")]
    print("n,micros")
    for n in sizes:
        a = _bench_automaton(args.family, n)
        best = None
        for _ in range(args.repeat):
            gc.collect()
            gc.disable()
            try:
                t = time.perf_counter()
                classify_states(a)
                decide(a, assume_minimal=True)
                dt = time.perf_counter() - t
            finally:
                gc.enable()
            best = dt if best is None else min(best, dt)
        print(f"{a.n},{int(best * 1e6)}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realaut", description="Weak automata for sets of reals and their formulas.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", help="automaton of a simple set")
    s.add_argument("--set", required=True, help='e.g. "(1/3,2] U {3}"')
    s.add_argument("--base", type=int, default=2)
    s.add_argument("--kind", choices=(REAL, FRACTIONAL), default=REAL)
    s.set_defaults(run=cmd_build)

    s = sub.add_parser("minimize", help="minimal automaton and the morphism onto it")
    s.add_argument("file")
    s.set_defaults(run=cmd_minimize)

    s = sub.add_parser("classify", help="the five state classes")
    s.add_argument("file")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("decide-simple", help="whether the automaton recognizes a simple set")
    s.add_argument("file")
    s.add_argument("--assume-minimal", action="store_true")
    s.set_defaults(run=cmd_decide)

    s = sub.add_parser("extract", help="the simple set recognized by the automaton")
    s.add_argument("file")
    s.set_defaults(run=cmd_extract)

    s = sub.add_parser("formula", help="a formula defining the recognized set")
    s.add_argument("file")
    s.add_argument("--shape", choices=(EXISTS, EXISTS_FORALL), default=EXISTS)
    s.add_argument("--format", choices=("infix", "prefix"), default="infix")
    s.add_argument("--length", action="store_true", help="report the formula length on stderr")
    s.set_defaults(run=cmd_formula)

    s = sub.add_parser("eval", help="truth of a formula with one free variable at a rational")
    s.add_argument("file", help="formula text, or an automaton with --automaton")
    s.add_argument("--x", required=True)
    s.add_argument("--var", default="x")
    s.add_argument("--automaton", action="store_true", help="synthesize the formula of an automaton first")
    s.add_argument("--shape", choices=(EXISTS, EXISTS_FORALL), default=EXISTS)
    s.add_argument("--budget", type=int, default=10 ** 6)
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("accepts", help="acceptance of u v^omega")
    s.add_argument("file")
    s.add_argument("--u", default="")
    s.add_argument("--v", required=True)
    s.set_defaults(run=cmd_accepts)

    s = sub.add_parser("check-saturated", help="whether the language holds every encoding of its reals")
    s.add_argument("file")
    s.set_defaults(run=cmd_check_saturated)

    s = sub.add_parser("selftest", help="checks on the shipped figure automata")
    s.set_defaults(run=cmd_selftest)

    s = sub.add_parser("bench", help="classify + decide wall time as CSV")
    s.add_argument("--sizes", default="1000,10000,100000")
    s.add_argument("--family", choices=("an", "rna"), default="an")
    s.add_argument("--repeat", type=int, default=3)
    s.set_defaults(run=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (AutomatonError, FormulaSyntaxError, QEBudgetError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
