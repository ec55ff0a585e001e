"""Products, complements and the saturation check.

A language of encodings is saturated when it holds every encoding of
each real it represents.  Two encodings of one real either differ by
leading zeros or, with aligned radix marks, by the carry pattern
u a (b-1)^omega / u (a+1) 0^omega.  Both are checked by product emptiness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product as cartesian

from .automaton import (FRACTIONAL, PAIR, REAL, STAR, Automaton, AutomatonError, UPWord,
                        check_encoding_language, compute_sccs, REAL_ENCODINGS)
from .numeration import up_word_value


def complement_weak(a: Automaton) -> Automaton:
    """Complement of a weak automaton: flip the flag of every recurrent state."""
    scc = compute_sccs(a)
    flipped = frozenset(q for q in range(a.n) if scc.recurrent[q] and q not in a.accepting)
    kept = frozenset(q for q in a.accepting if not scc.recurrent[q])
    return a.replace(accepting=flipped | kept)


def _check_alphabets(automata) -> None:
    letters = automata[0].letters
    for x in automata[1:]:
        if x.letters != letters:
            raise AutomatonError("automata over different alphabets")


def product(automata, accept_all: bool = True) -> Automaton:
    """Synchronous product restricted to reachable states.

    A product state is accepting when every component is (accept_all) or
    any component is.  For weak components both are weak and recognize
    the intersection or union respectively.
    """
    automata = list(automata)
    if not automata:
        raise AutomatonError("empty product")
    _check_alphabets(automata)
    first = automata[0]
    k = len(first.letters)
    start = tuple(x.initial for x in automata)
    index = {start: 0}
    tuples = [start]
    delta = []
    i = 0
    while i < len(tuples):
        t = tuples[i]
        row = []
        for j in range(k):
            nxt = tuple(x.delta[q][j] for x, q in zip(automata, t))
            if nxt not in index:
                index[nxt] = len(tuples)
                tuples.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
        i += 1
    test = all if accept_all else any
    accepting = frozenset(n for n, t in enumerate(tuples)
                          if test(q in x.accepting for x, q in zip(automata, t)))
    names = tuple("(" + ",".join(x.names[q] for x, q in zip(automata, t)) + ")" for t in tuples)
    return Automaton(base=first.base, kind=first.kind, delta=tuple(delta), initial=0,
                     accepting=accepting, names=names, letters=first.letters)


def intersect(a1: Automaton, a2: Automaton) -> Automaton:
    return product([a1, a2])


def _shortest_prefix(a: Automaton, targets: set):
    """BFS from the initial state; the first target found and the letters leading to it."""
    parent = {a.initial: None}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        if q in targets:
            path = []
            while parent[q] is not None:
                q, j = parent[q]
                path.append(j)
            return path[::-1]
        for j, t in enumerate(a.delta[q]):
            if t not in parent:
                parent[t] = (q, j)
                queue.append(t)
    return None


def _cycle(a: Automaton, s: int, members: set) -> list:
    """Shortest nonempty cycle through s inside its component."""
    parent = {}
    queue = deque()
    for j, t in enumerate(a.delta[s]):
        if t in members and t not in parent:
            parent[t] = (s, j)
            queue.append(t)
    while queue:
        q = queue.popleft()
        if q == s:
            break
        for j, t in enumerate(a.delta[q]):
            if t in members and t not in parent:
                parent[t] = (q, j)
                queue.append(t)
    path = []
    q = s
    while True:
        p, j = parent[q]
        path.append(j)
        q = p
        if q == s:
            return path[::-1]


def find_accepted(a: Automaton) -> UPWord | None:
    """A lasso u v^omega accepted by the weak automaton a, or None."""
    scc = compute_sccs(a)
    targets = {q for q in a.accepting if scc.recurrent[q]}
    if not targets:
        return None
    path = _shortest_prefix(a, targets)
    if path is None:
        return None
    s = a.initial
    for j in path:
        s = a.delta[s][j]
    cyc = _cycle(a, s, set(scc.members[scc.comp[s]]))
    return UPWord(tuple(a.letters[j] for j in path), tuple(a.letters[j] for j in cyc))


def intersection_empty(automata) -> tuple:
    """(empty, witness): emptiness of the intersection of weak automata."""
    w = find_accepted(product(automata))
    return w is None, w


def language_equal(a1: Automaton, a2: Automaton) -> bool:
    return (intersection_empty([a1, complement_weak(a2)])[0]
            and intersection_empty([a2, complement_weak(a1)])[0])


def pair_alphabet(a: Automaton) -> tuple:
    return tuple(cartesian(a.letters, a.letters))


def lift(a: Automaton, track: int) -> Automaton:
    """a reading one track of the paired alphabet."""
    letters = pair_alphabet(a)
    pos = [a.letter_index[p[track]] for p in letters]
    delta = tuple(tuple(row[i] for i in pos) for row in a.delta)
    return Automaton(base=a.base, kind=PAIR, delta=delta, initial=a.initial,
                     accepting=a.accepting, names=a.names, letters=letters)


def relation_automaton(b: int, kind: str = REAL) -> Automaton:
    """Pairs of distinct words of equal value with aligned radix marks.

    E: equal so far; L: the first word is the lower one (it read a, the
    second a+1) and now reads b-1 against 0; H: mirror image of L.
    Radix marks must be read together.  Only L and H accept.
    """
    base_letters = tuple(range(b)) + ((STAR,) if kind == REAL else ())
    letters = tuple(cartesian(base_letters, base_letters))
    E, L, H, SINK = 0, 1, 2, 3
    rows = []
    for state in (E, L, H, SINK):
        row = []
        for x, y in letters:
            if state == SINK:
                t = SINK
            elif x == STAR or y == STAR:
                t = state if x == y else SINK
            elif state == E:
                t = E if x == y else L if y == x + 1 else H if x == y + 1 else SINK
            elif state == L:
                t = L if (x, y) == (b - 1, 0) else SINK
            else:
                t = H if (x, y) == (0, b - 1) else SINK
            row.append(t)
        rows.append(tuple(row))
    return Automaton(base=b, kind=PAIR, delta=tuple(rows), initial=E, accepting=frozenset({L, H}),
                     names=("E", "L", "H", "sink"), letters=letters)


def valid_real_words(b: int) -> Automaton:
    """Words with exactly one radix mark."""
    return Automaton(base=b, kind=REAL, delta=((0,) * b + (1,), (1,) * b + (2,), (2,) * (b + 1)),
                     initial=0, accepting=frozenset({1}), names=("nat", "frac", "dead"))


def _split(w: UPWord) -> tuple:
    return (UPWord(tuple(x for x, _ in w.prefix), tuple(x for x, _ in w.period)),
            UPWord(tuple(y for _, y in w.prefix), tuple(y for _, y in w.period)))


@dataclass(frozen=True)
class SaturationResult:
    saturated: bool
    witness: tuple | None = None      # (accepted word, rejected word) of one real
    reason: str = ""

    def __bool__(self):
        return self.saturated


def _value(w: UPWord, b: int):
    return up_word_value(w, b)


def check_saturated(a: Automaton) -> SaturationResult:
    """Whether the valid words of L(a) are closed under the two rewritings.

    Among the failures found, the witness with the smallest value is
    returned, accepted word first.
    """
    if a.kind not in (REAL, FRACTIONAL):
        raise AutomatonError("check_saturated needs a real or fractional automaton")
    b = a.base
    comp = complement_weak(a)
    found = []
    if a.kind == REAL:
        valid = valid_real_words(b)
        a0 = a.replace(initial=a.succ(a.initial, 0))
        c0 = complement_weak(a0)
        # 0w accepted, w rejected
        empty, w = intersection_empty([a0, comp, valid])
        if not empty:
            found.append(((0,), w, "leading zero"))
        empty, w2 = intersection_empty([a, c0, valid])
        if not empty:
            found.append(((), w2, "leading zero"))
        lifted = [lift(a, 0), lift(comp, 1), lift(valid, 0), relation_automaton(b, REAL)]
    else:
        lifted = [lift(a, 0), lift(comp, 1), relation_automaton(b, FRACTIONAL)]
    empty, pw = intersection_empty(lifted)
    if not empty:
        found.append((None, pw, "carry"))
    if not found:
        return SaturationResult(True)
    pairs = []
    for tag, w, why in found:
        if tag is None:
            acc, rej = _split(w)
        elif tag == (0,):
            acc, rej = UPWord((0,) + w.prefix, w.period), w
        else:
            acc, rej = w, UPWord((0,) + w.prefix, w.period)
        pairs.append((_value(acc, b), len(acc.prefix) + len(acc.period), acc, rej, why))
    pairs.sort(key=lambda t: (t[0], t[1]))
    v, _, acc, rej, why = pairs[0]
    return SaturationResult(False, (acc, rej), f"{why} rewriting leaves the language")


def check_rna(a: Automaton) -> bool:
    if a.kind != REAL:
        return False
    if check_encoding_language(a) != REAL_ENCODINGS:
        return False
    return check_saturated(a).saturated
