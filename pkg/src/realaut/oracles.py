"""Brute-force oracles and seeded corpus generators used by the tests.

The word oracles enumerate ultimately periodic words u v^omega with
bounded |u| and |v|.  Periods are grouped by their effect on the
automaton (end state and whether an accepting state was passed, for each
start state); two periods with the same effect are interchangeable, so
enumerating one representative per effect is still exhaustive, and the
enumeration stops as soon as a length adds no new effect.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction

from .automaton import (FRACTIONAL, REAL, STAR, Automaton, AutomatonError, UPWord, accepts_up_word,
                        compute_sccs)
from .minimize import minimize
from .numeration import all_real_encodings, fractional_encodings
from .simple_sets import Piece, SimpleSet, normalize

MAX_PROFILES = 200_000


class OracleResourceError(AutomatonError):
    """The requested enumeration is too large."""


def oracle_member_by_automaton(a: Automaton, r) -> bool:
    """Whether some encoding of r is accepted, leading zeros included."""
    r = Fraction(r)
    if a.kind == FRACTIONAL:
        if r < 0 or r > 1:
            return False
        return any(accepts_up_word(a, UPWord(e.u, e.v)) for e in fractional_encodings(r, a.base))
    if a.kind != REAL:
        raise AutomatonError("membership needs a real or fractional automaton")
    if r < 0:
        return False
    return any(accepts_up_word(a, w) for w in all_real_encodings(r, a.base, a.n))


def period_profiles(a: Automaton, bound: int) -> list:
    """One nonempty period of length <= bound per distinct effect.

    Each item is (word, ends, passed, has_star) where ends[q] is the state
    reached from q and passed[q] tells whether an accepting state was
    visited on the way.
    """
    seen = {}
    layer = []
    for i, x in enumerate(a.letters):
        ends = tuple(a.delta[q][i] for q in range(a.n))
        passed = tuple(t in a.accepting for t in ends)
        key = (ends, passed, x == STAR)
        if key not in seen:
            seen[key] = (x,)
            layer.append(key)
    for _ in range(bound - 1):
        nxt = []
        for ends, passed, star in layer:
            word = seen[(ends, passed, star)]
            for i, x in enumerate(a.letters):
                e2 = tuple(a.delta[t][i] for t in ends)
                p2 = tuple(p or t in a.accepting for p, t in zip(passed, e2))
                key = (e2, p2, star or x == STAR)
                if key not in seen:
                    seen[key] = word + (x,)
                    nxt.append(key)
                    if len(seen) > MAX_PROFILES:
                        raise OracleResourceError("too many distinct periods; lower the bound")
        if not nxt:
            break
        layer = nxt
    return [(w, ends, passed, star) for (ends, passed, star), w in seen.items()]


def _loop_accepts(ends, passed, q) -> bool:
    order = {}
    path = []
    while q not in order:
        order[q] = len(path)
        path.append(q)
        q = ends[q]
    return any(passed[s] for s in path[order[q]:])


def _disjoint_union(a1: Automaton, a2: Automaton) -> tuple:
    if a1.letters != a2.letters:
        raise AutomatonError("automata over different alphabets")
    off = a1.n
    delta = a1.delta + tuple(tuple(t + off for t in row) for row in a2.delta)
    acc = a1.accepting | frozenset(q + off for q in a2.accepting)
    u = Automaton(base=a1.base, kind=a1.kind, delta=delta, initial=a1.initial, accepting=acc,
                  letters=a1.letters)
    return u, off


def _pair_prefixes(a: Automaton, p: int, q: int, bound: int) -> dict:
    """(p', q') -> shortest u with |u| <= bound leading p to p' and q to q'."""
    start = (p, q)
    found = {start: ()}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        u = found[pair]
        if len(u) == bound:
            continue
        for i, x in enumerate(a.letters):
            nxt = (a.delta[pair[0]][i], a.delta[pair[1]][i])
            if nxt not in found:
                found[nxt] = u + (x,)
                queue.append(nxt)
    return found


def distinguisher(a: Automaton, p: int, q: int, bound: int | None = None) -> UPWord | None:
    """An ultimately periodic word with |u|, |v| <= bound accepted from exactly one of p, q."""
    bound = a.n + 1 if bound is None else bound
    prefixes = _pair_prefixes(a, p, q, bound)
    periods = period_profiles(a, bound)
    best = None
    for (s, t), u in prefixes.items():
        for v, ends, passed, _ in periods:
            if _loop_accepts(ends, passed, s) != _loop_accepts(ends, passed, t):
                w = UPWord(u, v)
                if best is None or len(u) + len(v) < len(best.prefix) + len(best.period):
                    best = w
                break
    return best


def pairwise_distinguishable(a: Automaton, bound: int | None = None) -> list:
    """Pairs of states with no distinguishing word within the bound."""
    bound = a.n + 1 if bound is None else bound
    periods = period_profiles(a, bound)
    bad = []
    for p in range(a.n):
        for q in range(p + 1, a.n):
            prefixes = _pair_prefixes(a, p, q, bound)
            if not any(_loop_accepts(e, f, s) != _loop_accepts(e, f, t)
                       for (s, t) in prefixes for _, e, f, _ in periods):
                bad.append((p, q))
    return bad


def oracle_equivalence_small(a1: Automaton, a2: Automaton, bound: int | None = None) -> bool:
    """Exhaustive comparison over all ultimately periodic words with |u|, |v| <= bound."""
    if a1.n > 8 or a2.n > 8:
        raise OracleResourceError("oracle_equivalence_small is meant for automata with at most 8 states")
    bound = a1.n + a2.n + 2 if bound is None else bound
    u, off = _disjoint_union(a1, a2)
    return distinguisher(u, a1.initial, a2.initial + off, bound) is None


def oracle_classify(a: Automaton, bound: int | None = None) -> dict:
    """The five state classes computed from acceptance of bounded words.

    Words are sorted by star count (0, 1, 2 or more); a state is in a class
    when the acceptance pattern over the bounded words fits the class.
    """
    bound = a.n + 1 if bound is None else bound
    periods = period_profiles(a, bound)
    out = {k: set() for k in ("q_empty", "q_zero_one", "q_infty", "q_nat", "q_fra")}
    for q in range(a.n):
        # (state, stars so far capped at 2) reachable with |u| <= bound
        start = (q, 0)
        depth = {start: 0}
        queue = deque([start])
        while queue:
            s, k = queue.popleft()
            if depth[(s, k)] == bound:
                continue
            for i, x in enumerate(a.letters):
                nxt = (a.delta[s][i], min(2, k + (x == STAR)))
                if nxt not in depth:
                    depth[nxt] = depth[(s, k)] + 1
                    queue.append(nxt)
        seen = {0: set(), 1: set(), 2: set()}
        for (s, k) in depth:
            for _, ends, passed, star in periods:
                total = 2 if star else k
                seen[total].add(_loop_accepts(ends, passed, s))
        accepts_some = any(True in v for v in seen.values())
        if not accepts_some:
            out["q_empty"].add(q)
        if True not in seen[1] and True not in seen[2]:
            out["q_fra"].add(q)
            if False not in seen[0]:
                out["q_zero_one"].add(q)
        if True not in seen[0] and True not in seen[2]:
            out["q_nat"].add(q)
            if a.kind == REAL and False not in seen[1]:
                out["q_infty"].add(q)
    return {k: frozenset(v) for k, v in out.items()}


# seeded corpus

def random_rational(rng: random.Random, max_den: int, max_value: int) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(0, d * max_value), d)


def random_simple_set(rng: random.Random, max_intervals: int = 4, max_singletons: int = 3,
                      max_den: int = 64, max_value: int = 4, unbounded: float = 0.2) -> SimpleSet:
    """A random simple set with at most the given numbers of intervals and singletons."""
    pieces = []
    for _ in range(rng.randint(0, max_intervals)):
        x, y = sorted((random_rational(rng, max_den, max_value), random_rational(rng, max_den, max_value)))
        if x == y:
            continue
        pieces.append(Piece(x, y, rng.random() < 0.5, rng.random() < 0.5))
    if pieces and rng.random() < unbounded:
        top = max(p.lo for p in pieces)
        pieces.append(Piece(top + rng.randint(0, 2), None, rng.random() < 0.5, False))
    points = [random_rational(rng, max_den, max_value) for _ in range(rng.randint(0, max_singletons))]
    return normalize(pieces, points)


def simple_set_corpus(seed: int, count: int, bases=(2, 3), **kw) -> list:
    """[(set, base)] drawn deterministically from the seed."""
    rng = random.Random(seed)
    return [(random_simple_set(rng, **kw), rng.choice(bases)) for _ in range(count)]


def random_weak_automaton(rng: random.Random, n: int, base: int = 2, kind: str = REAL,
                          density: float = 0.5) -> Automaton:
    """Random total automaton whose components are all accepting or all rejecting."""
    width = base + (1 if kind == REAL else 0)
    delta = tuple(tuple(rng.randrange(n) for _ in range(width)) for _ in range(n))
    a = Automaton(base=base, kind=kind, delta=delta, initial=0, accepting=frozenset())
    scc = compute_sccs(a)
    acc = set()
    for members in scc.members:
        if rng.random() < density:
            acc.update(members)
    return a.replace(accepting=frozenset(acc))


def mutate(rng: random.Random, a: Automaton) -> Automaton:
    """Flip the flag of one recurrent component or redirect one transition."""
    scc = compute_sccs(a)
    rec = [m for m in scc.members if scc.recurrent[m[0]]]
    if rec and rng.random() < 0.5:
        members = set(rng.choice(rec))
        return a.replace(accepting=a.accepting ^ members)
    q = rng.randrange(a.n)
    i = rng.randrange(len(a.letters))
    row = list(a.delta[q])
    row[i] = rng.randrange(a.n)
    delta = a.delta[:q] + (tuple(row),) + a.delta[q + 1:]
    b = a.replace(delta=delta)
    # keep the result weak by recoloring components of the new graph
    scc = compute_sccs(b)
    acc = set()
    for members in scc.members:
        if any(m in a.accepting for m in members) and (len(members) == 1 or
                                                       all(m in a.accepting for m in members)):
            acc.update(members)
    return b.replace(accepting=frozenset(acc))


def random_real_automaton(rng: random.Random, n: int, base: int = 2, density: float = 0.5) -> Automaton:
    """Random real-kind automaton shaped like an encoding reader.

    State 0 loops on 0; states 0..k-1 read the natural part and move on the
    radix mark into states k..n-2, which read digits only; n-1 is the sink.
    Such automata mostly recognize languages that are not saturated.
    """
    if n < 3:
        raise AutomatonError("need at least 3 states")
    sink = n - 1
    k = rng.randint(1, n - 2)
    nat, fra = range(k), range(k, n - 1)
    delta = []
    for q in range(n - 1):
        if q < k:
            row = [0 if (q == 0 and d == 0) else rng.choice(list(nat) + [sink]) for d in range(base)]
            row.append(rng.choice(list(fra)) if fra else sink)
        else:
            row = [rng.choice(list(fra) + [sink]) for _ in range(base)] + [sink]
        delta.append(tuple(row))
    delta.append((sink,) * (base + 1))
    a = Automaton(base=base, kind=REAL, delta=tuple(delta), initial=0, accepting=frozenset())
    scc = compute_sccs(a)
    acc = set()
    for members in scc.members:
        if sink not in members and rng.random() < density:
            acc.update(members)
    return a.replace(accepting=frozenset(acc))


def weak_automaton_corpus(seed: int, count: int, max_states: int = 10, bases=(2, 3),
                          density: float = 0.6) -> list:
    """Minimal random real-kind automata with more than two states, deterministic per seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a = random_real_automaton(rng, rng.randint(3, max_states), rng.choice(bases), density)
        m, _ = minimize(a)
        if m.n > 2:
            out.append(m)
    return out
