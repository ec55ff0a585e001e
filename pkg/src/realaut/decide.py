"""Deciding whether a weak automaton recognizes a simple set, and extracting it.

Fractional automata: the set is simple exactly when every recurrent
component other than the accept-all and reject-all ones is a digit cycle
whose exits below and above the cycle digit each go to a single class
(check_baf).  Real automata add eight structural properties on the
natural part (check_bar).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automaton import (FRACTIONAL, REAL, Automaton, AutomatonError, SccInfo,
                        StateClassification, classify_states, compute_sccs)
from .minimize import minimize
from .numeration import natural_value
from .simple_sets import ALL, EMPTY, UNIT, Piece, SimpleSet, normalize, union_all


@dataclass(frozen=True)
class CycleProfile:
    scc_id: int
    states: tuple         # in cycle order
    digits: tuple         # digit read at each state to stay in the cycle
    values: tuple         # value of the cycle word starting at each state
    beta_below: int | None
    beta_above: int | None
    below_full: bool      # smaller digits lead to the accept-all class
    above_full: bool
    accepting: bool

    def value_at(self, q: int) -> Fraction:
        return self.values[self.states.index(q)]

    def set_at(self, q: int) -> SimpleSet:
        """Set of fractional values accepted from the cycle state q."""
        c = self.value_at(q)
        pieces, points = [], []
        if self.accepting:
            points.append(c)
        if self.below_full:
            pieces.append(Piece(Fraction(0), c, True, False))
        if self.above_full:
            pieces.append(Piece(c, Fraction(1), False, True))
        return normalize(pieces, points)


@dataclass(frozen=True)
class Analysis:
    automaton: Automaton
    scc: SccInfo
    cls: StateClassification

    @classmethod
    def of(cls, a: Automaton) -> "Analysis":
        scc = compute_sccs(a)
        return cls(a, scc, classify_states(a, scc))


def _cycle_order(a: Automaton, scc: SccInfo, cid: int) -> tuple:
    start = scc.members[cid][0]
    states, digits = [], []
    q = start
    while True:
        states.append(q)
        d = scc.cycle_digit[q]
        digits.append(d)
        q = a.succ(q, d)
        if q == start:
            return tuple(states), tuple(digits)


def _cycle_values(digits: tuple, b: int) -> tuple:
    k = len(digits)
    den = b ** k - 1
    return tuple(Fraction(natural_value(digits[i:] + digits[:i], b), den) for i in range(k))


def check_baf(a: Automaton, analysis: Analysis | None = None) -> tuple:
    """(ok, profiles): every non-trivial fractional recurrent component is a proper cycle."""
    an = analysis or Analysis.of(a)
    scc, cls = an.scc, an.cls
    trivial = cls.q_zero_one | cls.q_empty
    profiles = []
    for cid, states in enumerate(scc.members):
        q = states[0]
        if not scc.recurrent[q] or q not in cls.q_fra or q in trivial:
            continue
        if not scc.is_cycle[cid]:
            return False, []
        order, digits = _cycle_order(a, scc, cid)
        below = set()
        above = set()
        for s, d in zip(order, digits):
            for e in range(a.base):
                t = a.succ(s, e)
                if e < d:
                    below.add(t)
                elif e > d:
                    above.add(t)
        if not below <= trivial or not above <= trivial:
            return False, []
        below_kinds = {t in cls.q_zero_one for t in below}
        above_kinds = {t in cls.q_zero_one for t in above}
        if len(below_kinds) > 1 or len(above_kinds) > 1:
            return False, []
        profiles.append(CycleProfile(
            scc_id=cid, states=order, digits=digits, values=_cycle_values(digits, a.base),
            beta_below=min(below) if below else None, beta_above=min(above) if above else None,
            below_full=True in below_kinds, above_full=True in above_kinds,
            accepting=q in a.accepting))
    return True, profiles


def check_bar(a: Automaton, analysis: Analysis | None = None) -> tuple:
    """(ok, first violated property 1..8 or None)."""
    if a.kind != REAL:
        raise AutomatonError("check_bar needs a real automaton")
    an = analysis or Analysis.of(a)
    scc, cls = an.scc, an.cls
    q0 = a.initial
    ok, _ = check_baf(a, an)
    if not ok:
        return False, 1
    fra_rec = [q for q in range(a.n) if scc.recurrent[q] and q in cls.q_fra]
    if not any(q in a.accepting for q in fra_rec) or all(q in a.accepting for q in fra_rec):
        return False, 2
    if a.succ(q0, 0) != q0:
        return False, 3
    if sum(1 for q in cls.q_empty if scc.recurrent[q]) != 1:
        return False, 4
    infty = [q for q in cls.q_infty if scc.recurrent[q]]
    if len(infty) > 1:
        return False, 5
    if any(a.succ(q0, d) == q0 for d in range(1, a.base)):
        return False, 6
    if infty:
        for q in cls.q_nat - cls.q_empty:
            if any(a.succ(q, d) in cls.q_empty for d in range(a.base)):
                return False, 7
    for q in cls.q_nat:
        if scc.recurrent[q] and q != q0 and q not in cls.q_empty and q not in cls.q_infty:
            return False, 8
    return True, None


@dataclass(frozen=True)
class Decision:
    simple: bool
    reason: str
    violated: int | None = None
    automaton: Automaton | None = None


def decide(a: Automaton, assume_minimal: bool = False) -> Decision:
    """Full decision with an explanation; see decide_simple."""
    if not assume_minimal:
        m, _ = minimize(a)
        if m.n != a.n:
            raise AutomatonError(f"decide_simple expects a minimal automaton ({a.n} states, minimal has {m.n})")
    if a.kind == FRACTIONAL:
        ok, _ = check_baf(a)
        return Decision(ok, "fractional cycle conditions hold" if ok else "a fractional component is not a proper cycle",
                        None if ok else 1, a)
    an = Analysis.of(a)
    if a.initial not in an.cls.q_nat:
        # words with no or several radix marks carry no value; drop them first
        from .saturation import intersect, valid_real_words
        restricted, _ = minimize(intersect(a, valid_real_words(a.base)))
        return decide(restricted, assume_minimal=True)
    if a.initial in an.cls.q_empty:
        return Decision(True, "empty language", None, a)
    if a.initial in an.cls.q_infty:
        return Decision(True, "all valid encodings", None, a)
    ok, prop = check_bar(a, an)
    if ok:
        return Decision(True, "all eight structural properties hold", None, a)
    return Decision(False, f"property {prop} fails", prop, a)


def decide_simple(a: Automaton, assume_minimal: bool = False) -> bool:
    """Whether the minimal weak automaton a recognizes a simple set.

    Exact on automata recognizing saturated sets of encodings; on other
    inputs a True answer is still correct but False may be a false negative.
    """
    return decide(a, assume_minimal).simple


def fractional_sets(a: Automaton, an: Analysis, profiles) -> dict:
    """Set of values accepted from each fractional state, sinks first."""
    scc, cls = an.scc, an.cls
    by_state = {}
    for p in profiles:
        for q in p.states:
            by_state[q] = p
    sets = {}
    b = Fraction(a.base)
    for cid in scc.order:
        for q in scc.members[cid]:
            if q not in cls.q_fra:
                continue
            if q in cls.q_empty:
                sets[q] = EMPTY
            elif q in cls.q_zero_one:
                sets[q] = UNIT
            elif q in by_state:
                sets[q] = by_state[q].set_at(q)
            elif scc.recurrent[q]:
                raise AutomatonError(f"state {a.names[q]} lies on a component that is not a cycle")
            else:
                parts = [sets[a.succ(q, d)].affine(1 / b, d / b) for d in range(a.base)]
                sets[q] = union_all(parts)
    return sets


def extract_simple_set(a: Automaton, profiles=None) -> SimpleSet:
    """The simple set recognized by an automaton accepted by decide_simple."""
    d = decide(a, assume_minimal=True)
    if not d.simple:
        raise AutomatonError(f"the automaton is not in the simple-set family: {d.reason}")
    a = d.automaton
    an = Analysis.of(a)
    if profiles is None or a is not d.automaton:
        _, profiles = check_baf(a, an)
    if a.kind == FRACTIONAL:
        return fractional_sets(a, an, profiles)[a.initial]
    cls = an.cls
    if a.initial in cls.q_empty:
        return EMPTY
    if a.initial in cls.q_infty:
        return ALL
    sets = fractional_sets(a, an, profiles)
    b = a.base
    bound = b ** (a.n - 1)
    has_infty = any(an.scc.recurrent[q] for q in cls.q_infty)
    parts = []
    stack = [(a.initial, 0, 0)]
    while stack:
        q, m, depth = stack.pop()
        if depth > a.n:
            raise AutomatonError("natural part has an unexpected cycle")
        if q in cls.q_empty:
            continue
        if q in cls.q_infty:
            k = 0
            while m * b ** k < bound:
                parts.append(SimpleSet(((Fraction(m * b ** k), Fraction((m + 1) * b ** k)),),
                                       (Fraction(m * b ** k), Fraction((m + 1) * b ** k))))
                k += 1
            continue
        frac = sets.get(a.star(q), EMPTY)
        parts.append(frac.affine(1, m))
        for d in range(b):
            t = a.succ(q, d)
            if t == q and m == 0:
                continue
            stack.append((t, m * b + d, depth + 1))
    if has_infty:
        parts.append(SimpleSet(((Fraction(bound), None),), (Fraction(bound),)))
    return union_all(parts)
