"""Automata recognizing all encodings of a simple set.

build_fna handles subsets of [0,1] over the digit alphabet: one state per
strict prefix of the (padded) encodings of the endpoints, with every other
prefix sent to an accept-all or reject-all sink according to the interval
its cylinder falls in.  build_rna glues one such automaton per unit slice
below the threshold to a chain of states reading the natural part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automaton import (FRACTIONAL, MISSING, REAL, STAR, Automaton, AutomatonError, UPWord,
                        classify_states, format_word, restrict_to_reachable)
from .minimize import minimize
from .numeration import fraction_value, fractional_encodings
from .simple_sets import ALL, SimpleSet, member, slice_set, subset_of_unit, threshold

EMPTY_NAME = "∅"
ZU_NAME = "zu"
INF_NAME = "inf"


@dataclass(frozen=True)
class EncodingPlan:
    """Endpoint encodings padded so that no prefix u is a prefix of another."""

    words: tuple          # (u, v) pairs, u padded beyond the disambiguation length
    singleton_words: frozenset
    l: int


def _common_prefix(w1: UPWord, w2: UPWord) -> int:
    bound = max(len(w1.prefix), len(w2.prefix)) + len(w1.period) * len(w2.period) + 1
    for i in range(bound):
        if w1.letter(i) != w2.letter(i):
            return i
    raise AutomatonError("distinct encodings expected")


def encoding_plan(s: SimpleSet, b: int) -> EncodingPlan:
    endpoints = set(s.singletons)
    for lo, hi in s.intervals:
        endpoints.add(lo)
        endpoints.add(hi)
    words = {}
    singles = set()
    for rho in sorted(endpoints):
        for e in fractional_encodings(rho, b):
            words[(e.u, e.v)] = UPWord(e.u, e.v)
            if rho in s.singletons:
                singles.add((e.u, e.v))
    keys = sorted(words)
    lcp = -1
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            lcp = max(lcp, _common_prefix(words[keys[i]], words[keys[j]]))
    l = lcp + 1
    padded = []
    single_padded = set()
    for key in keys:
        u, v = key
        while len(u) <= l:
            u = u + (v[0],)
            v = v[1:] + v[:1]
        padded.append((u, v))
        if key in singles:
            single_padded.add((u, v))
    return EncodingPlan(words=tuple(padded), singleton_words=frozenset(single_padded), l=l)


def build_fna(s: SimpleSet, b: int) -> Automaton:
    if not subset_of_unit(s):
        raise AutomatonError("build_fna needs a subset of [0,1]")
    plan = encoding_plan(s, b)
    full = {}            # u.v -> u, for loop re-entry
    strict = set()       # strict prefixes of some u.v
    for u, v in plan.words:
        w = u + v
        full[w] = u
        for k in range(len(w)):
            strict.add(w[:k])
    strict.add(())
    order = sorted(strict, key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(order)}
    zu = len(order)
    empty = zu + 1
    delta = []
    for w in order:
        row = []
        for a in range(b):
            wa = w + (a,)
            if wa in index:
                row.append(index[wa])
            elif wa in full:
                row.append(index[full[wa]])
            else:
                k = len(wa)
                lo = fraction_value(wa, (0,), b)
                mid = lo + Fraction(1, 2 * b ** k)
                row.append(zu if member(s, mid) else empty)
        delta.append(tuple(row))
    delta.append(tuple([zu] * b))
    delta.append(tuple([empty] * b))
    accepting = {zu}
    for u, v in plan.singleton_words:
        w = u + v
        for k in range(len(u), len(w)):
            accepting.add(index[w[:k]])
    names = ["q" + format_word(w) if w else "e" for w in order] + [ZU_NAME, EMPTY_NAME]
    a = Automaton(base=b, kind=FRACTIONAL, delta=tuple(delta), initial=0,
                  accepting=frozenset(accepting), names=tuple(names))
    return restrict_to_reachable(a)


def _trivial_rna(b: int, full: bool) -> Automaton:
    digits = b
    if not full:
        return Automaton(base=b, kind=REAL, delta=((0,) * (digits + 1),), initial=0,
                         accepting=frozenset(), names=(EMPTY_NAME,))
    delta = ((0,) * digits + (1,), (1,) * digits + (2,), (2,) * (digits + 1))
    return Automaton(base=b, kind=REAL, delta=delta, initial=0, accepting=frozenset({1}),
                     names=("q0", ZU_NAME, EMPTY_NAME))


def build_rna(s: SimpleSet, b: int) -> Automaton:
    t = threshold(s)
    if t == 0:
        return _trivial_rna(b, s == ALL)
    tail = member(s, t)
    names = [f"q{i}" for i in range(t)] + [ZU_NAME, EMPTY_NAME]
    zu, empty = t, t + 1
    star = b
    delta = [[MISSING] * (b + 1) for _ in range(t + 2)]
    delta[zu] = [zu] * b + [empty]
    delta[empty] = [empty] * (b + 1)
    accepting = {zu}
    inf = None
    if tail:
        inf = len(delta)
        names.append(INF_NAME)
        delta.append([inf] * b + [zu])
    for i in range(t):
        for a in range(b):
            j = b * i + a
            delta[i][a] = j if j < t else (inf if tail else empty)
        frac, _ = minimize(build_fna(slice_set(s, i), b))
        cls = classify_states(frac)
        local = {}
        for q in range(frac.n):
            if q in cls.q_zero_one:
                local[q] = zu
            elif q in cls.q_empty:
                local[q] = empty
            else:
                local[q] = len(delta)
                names.append(f"({i},{frac.names[q]})")
                delta.append(None)
                if q in frac.accepting:
                    accepting.add(local[q])
        for q in range(frac.n):
            if local[q] >= t + 2 and (inf is None or local[q] != inf):
                delta[local[q]] = [local[frac.delta[q][a]] for a in range(b)] + [empty]
        delta[i][star] = local[frac.initial]
    a = Automaton(base=b, kind=REAL, delta=tuple(tuple(r) for r in delta), initial=0,
                  accepting=frozenset(accepting), names=tuple(names))
    return restrict_to_reachable(a)


def a_n_family(n: int) -> Automaton:
    """Fractional base-2 automaton of {m/2^n : 0 <= m <= 2^n}.

    States q0..qn read n digits, then q_{n+1,a} keeps reading the digit a
    forever; every other move falls into the sink.
    """
    if n < 0:
        raise AutomatonError("n must be non-negative")
    end0, end1, sink = n + 1, n + 2, n + 3
    delta = [(i + 1, i + 1) for i in range(n)]
    delta.append((end0, end1))
    delta.append((end0, sink))
    delta.append((sink, end1))
    delta.append((sink, sink))
    names = [f"q{i}" for i in range(n + 1)] + [f"q{n + 1},0", f"q{n + 1},1", EMPTY_NAME]
    return Automaton(base=2, kind=FRACTIONAL, delta=tuple(delta), initial=0,
                     accepting=frozenset({end0, end1}), names=tuple(names))
