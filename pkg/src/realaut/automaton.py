"""Weak deterministic Büchi automata over base-b digit alphabets.

An automaton reads digits 0..b-1 and, for the real kind, the radix mark
STAR which separates the natural part of an encoding from its fractional
part.  States are integers 0..n-1 and the transition table is stored as
one tuple of successors per state, indexed by letter position.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

STAR = "."
MISSING = -1

FRACTIONAL = "fractional"
REAL = "real"
PAIR = "pair"


class AutomatonError(ValueError):
    """Raised for malformed automata or inputs outside an alphabet."""


def alphabet(base: int, kind: str) -> tuple:
    if base < 2:
        raise AutomatonError(f"base must be at least 2, got {base}")
    digits = tuple(range(base))
    if kind == FRACTIONAL:
        return digits
    if kind == REAL:
        return digits + (STAR,)
    raise AutomatonError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class UPWord:
    """The ultimately periodic word prefix . period^omega."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise AutomatonError("the period of an ultimately periodic word must be nonempty")
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))

    def letter(self, i: int):
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def unrolled(self, k: int = 1) -> "UPWord":
        """Same omega-word with the period unrolled k more times into the prefix."""
        return UPWord(self.prefix + self.period * k, self.period)

    def __str__(self):
        return format_word(self.prefix) + "(" + format_word(self.period) + ")"


def letter_char(letter) -> str:
    if letter == STAR:
        return STAR
    if isinstance(letter, tuple):
        return "<" + ",".join(letter_char(x) for x in letter) + ">"
    if letter < 10:
        return str(letter)
    return chr(ord("a") + letter - 10)


def format_word(word: Iterable) -> str:
    return "".join(letter_char(a) for a in word)


def parse_word(text: str) -> tuple:
    """Parse a finite word such as "011.10"; letters a-z stand for digits 10..35."""
    out = []
    for ch in text.strip():
        if ch == STAR or ch == "⋆":
            out.append(STAR)
        elif ch.isdigit():
            out.append(int(ch))
        elif "a" <= ch.lower() <= "z":
            out.append(ord(ch.lower()) - ord("a") + 10)
        else:
            raise AutomatonError(f"unexpected character {ch!r} in word {text!r}")
    return tuple(out)


def parse_up_word(text: str) -> UPWord:
    """Parse "u(v)" meaning u v^omega, e.g. "10.(10)"."""
    text = text.strip()
    if not text.endswith(")") or "(" not in text:
        raise AutomatonError(f"expected u(v) syntax, got {text!r}")
    cut = text.index("(")
    return UPWord(parse_word(text[:cut]), parse_word(text[cut + 1 : -1]))


@dataclass(frozen=True)
class Automaton:
    """Deterministic Büchi automaton with a total transition table.

    ``delta[q][i]`` is the successor of state q on ``letters[i]``.  The
    value MISSING marks an absent transition; only raw, un-normalized
    automata carry it and ``validate`` reports it.
    """

    base: int
    kind: str
    delta: tuple
    initial: int
    accepting: frozenset
    names: tuple = ()
    letters: tuple = field(default=())

    def __post_init__(self):
        if not self.letters:
            object.__setattr__(self, "letters", alphabet(self.base, self.kind))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"s{i}" for i in range(len(self.delta))))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))

    @property
    def n(self) -> int:
        return len(self.delta)

    @cached_property
    def letter_index(self) -> dict:
        return {a: i for i, a in enumerate(self.letters)}

    @cached_property
    def digit_positions(self) -> tuple:
        return tuple(i for i, a in enumerate(self.letters) if a != STAR)

    @property
    def has_star(self) -> bool:
        return STAR in self.letter_index

    def succ(self, q: int, letter) -> int:
        try:
            return self.delta[q][self.letter_index[letter]]
        except KeyError:
            raise AutomatonError(f"letter {letter!r} is not in the alphabet") from None

    def star(self, q: int) -> int:
        return self.delta[q][self.letter_index[STAR]]

    def name(self, q: int) -> str:
        return self.names[q]

    def state(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AutomatonError(f"no state named {name!r}") from None

    def replace(self, **changes) -> "Automaton":
        values = dict(base=self.base, kind=self.kind, delta=self.delta, initial=self.initial,
                      accepting=self.accepting, names=self.names, letters=self.letters)
        values.update(changes)
        return Automaton(**values)


def step_word(a: Automaton, q: int, word: Sequence) -> int:
    for letter in word:
        q = a.succ(q, letter)
    return q


def accepts_up_word(a: Automaton, w: UPWord, start: int | None = None) -> bool:
    """Acceptance of u v^omega from ``start`` (default: the initial state).

    After reading u, the state at each period boundary is recorded; once a
    boundary state repeats, the run is periodic and the states visited in
    between are exactly the ones seen infinitely often.
    """
    q = step_word(a, a.initial if start is None else start, w.prefix)
    seen = {}
    visited = []
    for _ in range(a.n + 1):
        if q in seen:
            loop = visited[seen[q]:]
            return any(s in a.accepting for block in loop for s in block)
        seen[q] = len(visited)
        block = []
        for letter in w.period:
            q = a.succ(q, letter)
            block.append(q)
        visited.append(block)
    if q in seen:
        loop = visited[seen[q]:]
        return any(s in a.accepting for block in loop for s in block)
    raise AssertionError("boundary states must repeat within n+1 periods")


def successors(a: Automaton, positions: Iterable[int] | None = None) -> list:
    pos = range(len(a.letters)) if positions is None else list(positions)
    return [[row[i] for i in pos] for row in a.delta]


def tarjan(adj: Sequence[Sequence[int]]) -> list:
    """Strongly connected components of a graph given by successor lists.

    Iterative version; components come out in reverse topological order
    (every edge leaving a component points to an earlier one).
    """
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            succ = adj[v]
            if i < len(succ):
                work[-1] = (v, i + 1)
                w = succ[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


@dataclass(frozen=True)
class SccInfo:
    """SCC decomposition of an automaton.

    ``order`` lists component ids so that successors come before their
    predecessors (sinks first), which is the order recursions over the
    condensation need.
    """

    comp: tuple
    members: tuple
    recurrent: tuple
    order: tuple
    is_cycle: tuple
    cycle_digit: tuple

    def scc_of(self, q: int) -> int:
        return self.comp[q]

    def recurrent_states(self) -> list:
        return [q for q, r in enumerate(self.recurrent) if r]


def compute_sccs(a: Automaton) -> SccInfo:
    comps = tarjan(a.delta)
    comp = [0] * a.n
    for cid, states in enumerate(comps):
        for q in states:
            comp[q] = cid
    recurrent = [False] * a.n
    is_cycle = []
    cycle_digit = [None] * a.n
    for cid, states in enumerate(comps):
        if len(states) > 1:
            rec = True
        else:
            q = states[0]
            rec = q in a.delta[q]
        for q in states:
            recurrent[q] = rec
        cyc = rec
        if rec:
            digits = {}
            for q in states:
                inside = [i for i, t in enumerate(a.delta[q]) if comp[t] == cid]
                if len(inside) != 1 or a.letters[inside[0]] == STAR:
                    cyc = False
                    break
                digits[q] = a.letters[inside[0]]
            if cyc:
                for q, d in digits.items():
                    cycle_digit[q] = d
        is_cycle.append(cyc)
    return SccInfo(
        comp=tuple(comp),
        members=tuple(tuple(sorted(c)) for c in comps),
        recurrent=tuple(recurrent),
        order=tuple(range(len(comps))),
        is_cycle=tuple(is_cycle),
        cycle_digit=tuple(cycle_digit),
    )


def is_weak(a: Automaton, scc: SccInfo | None = None) -> bool:
    scc = scc or compute_sccs(a)
    for states in scc.members:
        if scc.recurrent[states[0]]:
            flags = {q in a.accepting for q in states}
            if len(flags) > 1:
                return False
    return True


def validate(a: Automaton) -> list:
    """List of human-readable invariant violations; empty means OK."""
    problems = []
    n = a.n
    if not 0 <= a.initial < n:
        problems.append(f"initial state {a.initial} out of range")
        return problems
    for q, row in enumerate(a.delta):
        if len(row) != len(a.letters):
            problems.append(f"state {a.names[q]} has {len(row)} transitions for {len(a.letters)} letters")
            continue
        for i, t in enumerate(row):
            if t == MISSING:
                problems.append(f"totality: no transition from {a.names[q]} on {letter_char(a.letters[i])}")
            elif not 0 <= t < n:
                problems.append(f"transition from {a.names[q]} on {letter_char(a.letters[i])} leaves the state range")
    for q in a.accepting:
        if not 0 <= q < n:
            problems.append(f"accepting state {q} out of range")
    if problems:
        return problems
    reach = reachable(a)
    for q in range(n):
        if q not in reach:
            problems.append(f"reachability: state {a.names[q]} is not reachable from {a.names[a.initial]}")
    scc = compute_sccs(a)
    for states in scc.members:
        if scc.recurrent[states[0]]:
            acc = [a.names[q] for q in states if q in a.accepting]
            if acc and len(acc) != len(states):
                rej = [a.names[q] for q in states if q not in a.accepting]
                problems.append(f"weakness: component {{{', '.join(a.names[q] for q in states)}}} mixes "
                                f"accepting {acc} and rejecting {rej}")
    return problems


def reachable(a: Automaton, start: int | None = None) -> set:
    start = a.initial if start is None else start
    seen = {start}
    todo = [start]
    while todo:
        q = todo.pop()
        for t in a.delta[q]:
            if t != MISSING and t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def normalize(a: Automaton, sink_name: str = "∅") -> Automaton:
    """Complete missing transitions with a rejecting sink and drop unreachable states."""
    delta = [list(row) for row in a.delta]
    names = list(a.names)
    if any(t == MISSING for row in delta for t in row):
        sink = None
        for q, row in enumerate(delta):
            if q not in a.accepting and all(t == q for t in row):
                sink = q
                break
        if sink is None:
            sink = len(delta)
            delta.append([sink] * len(a.letters))
            name = sink_name
            while name in names:
                name += "'"
            names.append(name)
        for row in delta:
            for i, t in enumerate(row):
                if t == MISSING:
                    row[i] = sink
    full = a.replace(delta=tuple(tuple(r) for r in delta), names=tuple(names))
    return restrict_to_reachable(full)


def restrict_to_reachable(a: Automaton) -> Automaton:
    order = []
    seen = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        order.append(q)
        for t in a.delta[q]:
            if t not in seen:
                seen[t] = len(seen)
                queue.append(t)
    if len(order) == a.n and all(seen[q] == q for q in range(a.n)):
        return a
    delta = tuple(tuple(seen[t] for t in a.delta[q]) for q in order)
    return a.replace(
        delta=delta,
        initial=0,
        accepting=frozenset(seen[q] for q in a.accepting if q in seen),
        names=tuple(a.names[q] for q in order),
    )


def from_transitions(base: int, kind: str, transitions: dict, initial, accepting: Iterable,
                     states: Sequence | None = None, sink_name: str = "∅") -> Automaton:
    """Build and normalize an automaton from named transitions.

    ``transitions`` maps (source name, letter) to a target name.  Missing
    transitions go to a rejecting sink, as in figures that leave the
    empty-language state implicit.
    """
    letters = alphabet(base, kind)
    names = list(states) if states is not None else []
    index = {s: i for i, s in enumerate(names)}

    def ensure(s):
        if s not in index:
            index[s] = len(names)
            names.append(s)
        return index[s]

    ensure(initial)
    for (src, letter), dst in transitions.items():
        ensure(src)
        ensure(dst)
    for s in accepting:
        ensure(s)
    lpos = {l: i for i, l in enumerate(letters)}
    delta = [[MISSING] * len(letters) for _ in names]
    for (src, letter), dst in transitions.items():
        if letter not in lpos:
            raise AutomatonError(f"letter {letter!r} not in the alphabet of base {base}, kind {kind}")
        delta[index[src]][lpos[letter]] = index[dst]
    raw = Automaton(base=base, kind=kind, delta=tuple(tuple(r) for r in delta), initial=index[initial],
                    accepting=frozenset(index[s] for s in accepting), names=tuple(str(s) for s in names))
    return normalize(raw, sink_name=sink_name)


@dataclass(frozen=True)
class StateClassification:
    """The five semantic state classes.

    q_empty: empty language; q_zero_one: exactly all star-free words;
    q_infty: exactly all words with one star; q_nat: only words with one
    star; q_fra: only star-free words.
    """

    q_empty: frozenset
    q_zero_one: frozenset
    q_infty: frozenset
    q_nat: frozenset
    q_fra: frozenset

    def named(self, a: Automaton) -> dict:
        return {k: sorted(a.names[q] for q in getattr(self, k))
                for k in ("q_empty", "q_zero_one", "q_infty", "q_nat", "q_fra")}


def _predecessors(a: Automaton, positions: Sequence[int]) -> list:
    preds = [[] for _ in range(a.n)]
    for q, row in enumerate(a.delta):
        for i in positions:
            preds[row[i]].append(q)
    return preds


def _backward_closure(preds: list, seeds: Iterable[int], allowed=None) -> set:
    out = set()
    todo = []
    for s in seeds:
        if s not in out and (allowed is None or s in allowed):
            out.add(s)
            todo.append(s)
    while todo:
        q = todo.pop()
        for p in preds[q]:
            if p not in out and (allowed is None or p in allowed):
                out.add(p)
                todo.append(p)
    return out


def _digit_loop_states(a: Automaton) -> tuple:
    """States lying on a digit-only cycle, split into accepting and rejecting ones."""
    digit_adj = successors(a, a.digit_positions)
    acc, rej = [], []
    for comp in tarjan(digit_adj):
        if len(comp) == 1 and comp[0] not in digit_adj[comp[0]]:
            continue
        for q in comp:
            (acc if q in a.accepting else rej).append(q)
    return acc, rej


def classify_states(a: Automaton, scc: SccInfo | None = None) -> StateClassification:
    """Linear-time computation of the five state classes by backward fixpoints."""
    scc = scc or compute_sccs(a)
    if not is_weak(a, scc):
        raise AutomatonError("classify_states requires a weak automaton")
    all_pos = range(len(a.letters))
    preds_all = _predecessors(a, all_pos)
    preds_dig = _predecessors(a, a.digit_positions)
    states = range(a.n)

    live = _backward_closure(preds_all, (q for q in states if scc.recurrent[q] and q in a.accepting))
    q_empty = frozenset(q for q in states if q not in live)

    acc_loops, rej_loops = _digit_loop_states(a)
    # states accepting some star-free word
    acc0 = _backward_closure(preds_dig, acc_loops)
    if a.has_star:
        s = a.letter_index[STAR]
        # accepting some word with at least one star / at least two stars
        ge1 = _backward_closure(preds_all, (q for q in states if a.delta[q][s] in live))
        ge2 = _backward_closure(preds_all, (q for q in states if a.delta[q][s] in ge1))
    else:
        ge1 = ge2 = set()
    q_fra = frozenset(q for q in states if q not in ge1)
    q_nat = frozenset(q for q in states if q not in acc0 and q not in ge2)

    rejecting_fra = _backward_closure(preds_dig, (q for q in rej_loops if q in q_fra), allowed=q_fra)
    q_zero_one = frozenset(q for q in q_fra if q not in rejecting_fra)
    if a.has_star:
        s = a.letter_index[STAR]
        seeds = (q for q in q_nat if a.delta[q][s] not in q_zero_one)
        not_infty = _backward_closure(preds_dig, seeds, allowed=q_nat)
        q_infty = frozenset(q for q in q_nat if q not in not_infty)
    else:
        q_infty = frozenset()
    return StateClassification(q_empty=q_empty, q_zero_one=q_zero_one, q_infty=q_infty,
                               q_nat=q_nat, q_fra=q_fra)


REAL_ENCODINGS = "real-encodings"
FRACTIONAL_ENCODINGS = "fractional-encodings"
NEITHER = "neither"


def check_encoding_language(a: Automaton, cls: StateClassification | None = None) -> str:
    cls = cls or classify_states(a)
    if a.kind == REAL and a.initial in cls.q_nat:
        return REAL_ENCODINGS
    if a.initial in cls.q_fra:
        return FRACTIONAL_ENCODINGS
    return NEITHER
