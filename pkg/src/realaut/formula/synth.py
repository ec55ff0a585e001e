"""Formulas defining the set recognized by an automaton of the simple-set family.

The existential formula guesses the natural part xI and the fractional
part xF of x, runs the automaton on n digits of xI (chain xI_i, pI_i) and
on the first digits of xF until the run meets a pivot state, one per
recurrent component (chain xF_i, pF_i with flags s_i).  From the pivot,
the remaining value y is compared with the pivot's cycle value.

The exists-forall variant replaces each chain of n copies of the step
formula by a single copy under a universal block whose hypothesis binds
the copy to one of the n consecutive pairs.

State indices appear as constants annotated with the state name.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..automaton import FRACTIONAL, REAL, Automaton, AutomatonError
from ..decide import Analysis, check_baf, decide
from .ast import (FALSE, TRUE, Formula, conj, const, disj, eq, exists, forall, implies, iff, in_closed, le,
                  lt, plus, times)

EXISTS = "exists"
EXISTS_FORALL = "exists-forall"


@dataclass(frozen=True)
class SynthesisContext:
    automaton: Automaton
    n: int
    base: int
    q_nat: tuple
    q_fra: tuple
    q_zero_one: frozenset
    q_empty: frozenset
    pivots: tuple          # one state per recurrent fractional component
    profiles: dict         # pivot -> CycleProfile for cycle pivots
    has_infty: bool

    def state(self, q: int):
        return const(q, self.automaton.names[q])


def synthesis_context(a: Automaton) -> SynthesisContext:
    an = Analysis.of(a)
    ok, profiles = check_baf(a, an)
    if not ok:
        raise AutomatonError("the automaton is outside the simple-set family")
    scc, cls = an.scc, an.cls
    pivots = []
    by_pivot = {}
    for cid, members in enumerate(scc.members):
        q = members[0]
        if scc.recurrent[q] and q in cls.q_fra:
            pivots.append(q)
    for prof in profiles:
        q = min(prof.states)
        by_pivot[q] = prof
    has_infty = a.kind == REAL and any(scc.recurrent[q] for q in cls.q_infty)
    return SynthesisContext(
        automaton=a, n=a.n, base=a.base,
        q_nat=tuple(sorted(cls.q_nat)) if a.kind == REAL else (),
        q_fra=tuple(sorted(cls.q_fra)), q_zero_one=cls.q_zero_one, q_empty=cls.q_empty,
        pivots=tuple(sorted(pivots)), profiles=by_pivot, has_infty=has_infty)


def _v(name: str, i: int | None = None) -> str:
    return name if i is None else f"{name}_{i}"


def psi_nat(ctx: SynthesisContext, p, x, p1, x1) -> Formula:
    """One natural step: x1 = b*x + a for a digit a, and p1 follows the transition."""
    a, b = ctx.automaton, ctx.base
    digit = disj(*[eq(x1, plus(times(b, x), const(d)) if d else times(b, x)) for d in range(b)])
    steps = []
    for q in ctx.q_nat:
        for d in range(b):
            read = eq(x1, plus(times(b, x), const(d)) if d else times(b, x))
            steps.append(implies(conj(read, eq(p, ctx.state(q))), eq(p1, ctx.state(a.succ(q, d)))))
    return conj(digit, *steps)


def psi_fra(ctx: SynthesisContext, p, y, pi, xi, si, pj, xj, sj) -> Formula:
    """One fractional step with the pivot latch s and the capture of (p, y)."""
    a, b = ctx.automaton, ctx.base
    latch = iff(eq(sj, 1), disj(eq(si, 1), *[eq(pi, ctx.state(q)) for q in ctx.pivots]))
    moves = []
    for q in ctx.q_fra:
        for d in range(b):
            moves.append(conj(eq(pi, ctx.state(q)),
                              in_closed(xi, Fraction(d, b), Fraction(d + 1, b)),
                              eq(pj, ctx.state(a.succ(q, d))),
                              eq(plus(xj, const(d)) if d else xj, times(b, xi))))
    capture = implies(conj(eq(sj, 1), eq(si, 0)), conj(eq(p, pi), eq(y, xi)))
    domain = disj(eq(sj, 0), eq(sj, 1))
    return conj(latch, disj(*moves), capture, domain)


def xi_pivot(ctx: SynthesisContext, q: int, y) -> Formula:
    """Values y in [0,1] accepted from the pivot q."""
    if q in ctx.q_zero_one:
        return TRUE
    if q in ctx.q_empty:
        return FALSE
    prof = ctx.profiles[q]
    c = prof.value_at(q)
    parts = []
    if prof.accepting:
        parts.append(eq(y, const(c)))
    if prof.below_full:
        parts.append(lt(y, const(c)))
    if prof.above_full:
        parts.append(lt(const(c), y))
    return disj(*parts)


def phi_nat(ctx: SynthesisContext, pI, xI, shape: str) -> Formula:
    n, q0 = ctx.n, ctx.automaton.initial
    chain = [v for i in range(n + 1) for v in (_v("pI", i), _v("xI", i))]
    ends = [eq(_v("xI", 0), 0), eq(_v("pI", 0), ctx.state(q0)), eq(_v("xI", n), xI), eq(_v("pI", n), pI)]
    if shape == EXISTS:
        steps = [psi_nat(ctx, _v("pI", i), _v("xI", i), _v("pI", i + 1), _v("xI", i + 1)) for i in range(n)]
        return exists(chain, conj(*ends, *steps))
    bound = ["rho", "xi", "rho1", "xi1"]
    bind = disj(*[conj(eq("rho", _v("pI", i)), eq("xi", _v("xI", i)),
                       eq("rho1", _v("pI", i + 1)), eq("xi1", _v("xI", i + 1))) for i in range(n)])
    body = forall(bound, implies(bind, psi_nat(ctx, "rho", "xi", "rho1", "xi1")))
    return exists(chain, conj(*ends, body))


def phi_fra(ctx: SynthesisContext, pF, xF, shape: str) -> Formula:
    n = ctx.n
    chain = [v for i in range(n + 1) for v in (_v("pF", i), _v("xF", i), _v("s", i))]
    ends = [eq(pF, _v("pF", 0)), eq(xF, _v("xF", 0)), eq(_v("s", 0), 0), eq(_v("s", n), 1)]
    if shape == EXISTS:
        steps = [psi_fra(ctx, "p", "y", _v("pF", i), _v("xF", i), _v("s", i),
                         _v("pF", i + 1), _v("xF", i + 1), _v("s", i + 1)) for i in range(n)]
        first = exists(chain, conj(*ends, *steps))
    else:
        bound = ["rho", "xi", "gamma", "rho1", "xi1", "gamma1"]
        bind = disj(*[conj(eq("rho", _v("pF", i)), eq("xi", _v("xF", i)), eq("gamma", _v("s", i)),
                           eq("rho1", _v("pF", i + 1)), eq("xi1", _v("xF", i + 1)),
                           eq("gamma1", _v("s", i + 1))) for i in range(n)])
        body = forall(bound, implies(bind, psi_fra(ctx, "p", "y", "rho", "xi", "gamma", "rho1", "xi1", "gamma1")))
        first = exists(chain, conj(*ends, body))
    second = disj(*[conj(eq("p", ctx.state(q)), xi_pivot(ctx, q, "y")) for q in ctx.pivots])
    return exists(["p", "y"], conj(first, second))


def synthesize(a: Automaton, shape: str = EXISTS, var: str = "x") -> Formula:
    """Formula with one free variable defining the set recognized by a."""
    if shape not in (EXISTS, EXISTS_FORALL):
        raise ValueError(f"unknown shape {shape!r}")
    d = decide(a)
    if not d.simple:
        raise AutomatonError(f"the automaton is outside the simple-set family: {d.reason}")
    a = d.automaton
    an = Analysis.of(a)
    q0 = a.initial
    if q0 in an.cls.q_empty:
        return FALSE
    if a.kind == FRACTIONAL:
        if q0 in an.cls.q_zero_one:
            return in_closed(var, 0, 1)
        ctx = synthesis_context(a)
        return conj(in_closed(var, 0, 1), phi_fra(ctx, ctx.state(q0), var, shape))
    if q0 in an.cls.q_infty:
        return le(0, var)
    ctx = synthesis_context(a)
    b, n = ctx.base, ctx.n
    top = const(b ** (n - 1))
    split = disj(*[conj(eq("pI", ctx.state(q)), eq("pF", ctx.state(a.star(q)))) for q in ctx.q_nat])
    body = conj(eq(var, plus("xI", "xF")), lt("xI", top), in_closed("xF", 0, 1), split,
                phi_nat(ctx, "pI", "xI", shape), phi_fra(ctx, "pF", "xF", shape))
    phi = exists(["xI", "xF", "pI", "pF"], body)
    if ctx.has_infty:
        phi = disj(phi, le(top, var))
    return phi


def synthesize_existential(a: Automaton, var: str = "x") -> Formula:
    return synthesize(a, EXISTS, var)


def synthesize_exists_forall(a: Automaton, var: str = "x") -> Formula:
    return synthesize(a, EXISTS_FORALL, var)
