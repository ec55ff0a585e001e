"""Minimization of weak deterministic Büchi automata.

States are first given a canonical rank over the condensation DAG so that
the parity of the rank at the end of a run decides acceptance.  Two states
then have the same omega-language exactly when they are equivalent as
Moore machines emitting their rank, which reduces the problem to ordinary
partition refinement.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import Automaton, AutomatonError, SccInfo, compute_sccs, is_weak, restrict_to_reachable


@dataclass(frozen=True)
class CanonicalColoring:
    rank: tuple

    def accepting_limit(self, q: int) -> bool:
        return self.rank[q] % 2 == 1


@dataclass(frozen=True)
class Morphism:
    """Surjective state map from ``source`` onto ``target``."""

    source: Automaton
    target: Automaton
    map: tuple

    def __call__(self, q: int) -> int:
        return self.map[q]

    def check(self) -> list:
        problems = []
        src, dst = self.source, self.target
        if self.map[src.initial] != dst.initial:
            problems.append("initial state not preserved")
        for q, row in enumerate(src.delta):
            for i, t in enumerate(row):
                if self.map[t] != dst.delta[self.map[q]][i]:
                    problems.append(f"transition of {src.names[q]} on letter {src.letters[i]!r} not preserved")
        if set(self.map) != set(range(dst.n)):
            problems.append("map is not surjective")
        return problems


def canonical_coloring(a: Automaton, scc: SccInfo | None = None) -> CanonicalColoring:
    scc = scc or compute_sccs(a)
    if not is_weak(a, scc):
        raise AutomatonError("canonical_coloring requires a weak automaton")
    comp_rank = [0] * len(scc.members)
    # components are numbered sinks first, so successors are ranked before use
    for cid in scc.order:
        states = scc.members[cid]
        m = 0
        for q in states:
            for t in a.delta[q]:
                c = scc.comp[t]
                if c != cid and comp_rank[c] > m:
                    m = comp_rank[c]
        q = states[0]
        if scc.recurrent[q]:
            accepting = q in a.accepting
            comp_rank[cid] = m if (m % 2 == 1) == accepting else m + 1
        else:
            comp_rank[cid] = m
    return CanonicalColoring(rank=tuple(comp_rank[scc.comp[q]] for q in range(a.n)))


def hopcroft(delta, outputs) -> list:
    """Coarsest partition compatible with ``outputs`` and closed under ``delta``.

    Returns a block number per state.  Classic Hopcroft refinement with the
    "smaller half" rule, O(n c log n) for c letters.
    """
    n = len(delta)
    if n == 0:
        return []
    c = len(delta[0])
    inv = [[[] for _ in range(n)] for _ in range(c)]
    for q, row in enumerate(delta):
        for i, t in enumerate(row):
            inv[i][t].append(q)

    groups = {}
    for q in range(n):
        groups.setdefault(outputs[q], []).append(q)
    blocks = [set(g) for g in groups.values()]
    block_of = [0] * n
    for b, states in enumerate(blocks):
        for q in states:
            block_of[q] = b

    work = deque((b, i) for b in range(len(blocks)) for i in range(c))
    in_work = set(work)
    while work:
        splitter, i = work.popleft()
        in_work.discard((splitter, i))
        pre = set()
        for t in blocks[splitter]:
            pre.update(inv[i][t])
        touched = {}
        for q in pre:
            touched.setdefault(block_of[q], []).append(q)
        for b, hit in touched.items():
            if len(hit) == len(blocks[b]):
                continue
            hit_set = set(hit)
            rest = blocks[b] - hit_set
            new = len(blocks)
            if len(hit_set) <= len(rest):
                blocks[b] = rest
                blocks.append(hit_set)
            else:
                blocks[b] = hit_set
                blocks.append(rest)
            for q in blocks[new]:
                block_of[q] = new
            for j in range(c):
                if (b, j) in in_work:
                    work.append((new, j))
                    in_work.add((new, j))
                else:
                    small = new if len(blocks[new]) <= len(blocks[b]) else b
                    work.append((small, j))
                    in_work.add((small, j))
    return block_of


def moore(delta, outputs) -> list:
    """Plain Moore refinement; quadratic but easy to audit."""
    n = len(delta)
    labels = {}
    block = [labels.setdefault(outputs[q], len(labels)) for q in range(n)]
    while True:
        labels = {}
        new = [labels.setdefault((block[q],) + tuple(block[t] for t in delta[q]), len(labels)) for q in range(n)]
        if len(labels) == len(set(block)):
            return new
        block = new


def quotient(a: Automaton, block_of, rank) -> tuple:
    """Build the quotient automaton, numbering blocks in BFS order from the initial state."""
    order = {}
    queue = deque([block_of[a.initial]])
    rep = {}
    for q in range(a.n):
        rep.setdefault(block_of[q], q)
    order[block_of[a.initial]] = 0
    while queue:
        b = queue.popleft()
        for t in a.delta[rep[b]]:
            tb = block_of[t]
            if tb not in order:
                order[tb] = len(order)
                queue.append(tb)
    reps = sorted(order, key=order.get)
    delta = tuple(tuple(order[block_of[t]] for t in a.delta[rep[b]]) for b in reps)
    accepting = frozenset(order[b] for b in reps if rank[rep[b]] % 2 == 1)
    names = [a.names[rep[b]] for b in reps]
    m = a.replace(delta=delta, initial=0, accepting=accepting, names=tuple(names))
    mapping = tuple(order[block_of[q]] for q in range(a.n))
    return m, mapping


def minimize(a: Automaton, method: str = "hopcroft") -> tuple:
    """Minimal quotient and the morphism onto it.

    Accepting states of the result are those with odd canonical rank, which
    for transient states is only a normal form (their flag is irrelevant
    to the language).
    """
    a = restrict_to_reachable(a)
    scc = compute_sccs(a)
    rank = canonical_coloring(a, scc).rank
    refine = hopcroft if method == "hopcroft" else moore
    block_of = refine(a.delta, rank)
    m, mapping = quotient(a, block_of, rank)
    return m, Morphism(source=a, target=m, map=mapping)


def isomorphism(a1: Automaton, a2: Automaton, *, transient_flags: bool = False):
    """State bijection a1 -> a2 found by synchronized BFS, or None.

    Acceptance flags of transient states are ignored unless
    ``transient_flags`` is set, since they do not influence the language.
    """
    if a1.n != a2.n or a1.letters != a2.letters or a1.base != a2.base:
        return None
    rec1 = compute_sccs(a1).recurrent
    rec2 = compute_sccs(a2).recurrent
    iso = {a1.initial: a2.initial}
    used = {a2.initial}
    queue = deque([a1.initial])
    while queue:
        p = queue.popleft()
        q = iso[p]
        if rec1[p] != rec2[q]:
            return None
        if (rec1[p] or transient_flags) and ((p in a1.accepting) != (q in a2.accepting)):
            return None
        for t1, t2 in zip(a1.delta[p], a2.delta[q]):
            if t1 in iso:
                if iso[t1] != t2:
                    return None
            else:
                if t2 in used:
                    return None
                iso[t1] = t2
                used.add(t2)
                queue.append(t1)
    if len(iso) != a1.n:
        return None
    return iso


def isomorphic(a1: Automaton, a2: Automaton, **kw) -> bool:
    return isomorphism(a1, a2, **kw) is not None


def is_minimal(a: Automaton) -> bool:
    m, _ = minimize(a)
    return m.n == restrict_to_reachable(a).n
