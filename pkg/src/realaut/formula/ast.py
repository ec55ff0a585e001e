"""Formulas of the first-order theory of (R, +, <, 1).

Terms are rational constants, variables, sums and rational multiples;
atoms are t1 = t2 and t1 < t2.  Derived forms (<=, implication,
equivalence, interval membership) are built from the primitive nodes by
the helper functions, so length() always measures the expanded formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class Term:
    __slots__ = ()


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(Term):
    value: Fraction
    state: str | None = field(default=None, compare=False)   # set when the constant is a state index

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Scale(Term):
    coef: Fraction
    term: Term

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Lt(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


TRUE = Top()
FALSE = Bottom()
ONE = Const(Fraction(1))
ZERO = Const(Fraction(0))


def const(v, state: str | None = None) -> Const:
    return Const(Fraction(v), state)


def as_term(t) -> Term:
    if isinstance(t, Term):
        return t
    if isinstance(t, str):
        return Var(t)
    return Const(Fraction(t))


def plus(*terms) -> Term:
    terms = [as_term(t) for t in terms]
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def times(c, t) -> Term:
    c = Fraction(c)
    t = as_term(t)
    return t if c == 1 else Scale(c, t)


def eq(a, b) -> Formula:
    return Eq(as_term(a), as_term(b))


def lt(a, b) -> Formula:
    return Lt(as_term(a), as_term(b))


def le(a, b) -> Formula:
    return Not(Lt(as_term(b), as_term(a)))


def conj(*fs) -> Formula:
    out = []
    for f in fs:
        if isinstance(f, Bottom):
            return FALSE
        if isinstance(f, Top):
            continue
        out.extend(f.args if isinstance(f, And) else (f,))
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(tuple(out))


def disj(*fs) -> Formula:
    out = []
    for f in fs:
        if isinstance(f, Top):
            return TRUE
        if isinstance(f, Bottom):
            continue
        out.extend(f.args if isinstance(f, Or) else (f,))
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(tuple(out))


def neg(f: Formula) -> Formula:
    if isinstance(f, Top):
        return FALSE
    if isinstance(f, Bottom):
        return TRUE
    return Not(f)


def implies(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(implies(a, b), implies(b, a))


def in_closed(t, lo, hi) -> Formula:
    return conj(le(lo, t), le(t, hi))


def exists(names, body: Formula) -> Formula:
    for v in reversed(list(names)):
        body = Exists(v, body)
    return body


def forall(names, body: Formula) -> Formula:
    for v in reversed(list(names)):
        body = Forall(v, body)
    return body


def const_length(c: Fraction) -> int:
    """Bits of p/q: ceil(log2(|p|+1)) + ceil(log2 q)."""
    return abs(c.numerator).bit_length() + (c.denominator - 1).bit_length()


def length(f) -> int:
    """Recursive length; an n-ary connective counts as n-1 binary ones."""
    total = 0
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Const):
            total += const_length(g.value)
        elif isinstance(g, Var):
            total += 1
        elif isinstance(g, Add):
            total += 1
            stack += (g.left, g.right)
        elif isinstance(g, Scale):
            total += const_length(g.coef)
            stack.append(g.term)
        elif isinstance(g, (Eq, Lt)):
            total += 1
            stack += (g.left, g.right)
        elif isinstance(g, Not):
            total += 1
            stack.append(g.arg)
        elif isinstance(g, (And, Or)):
            total += len(g.args) - 1
            stack.extend(g.args)
        elif isinstance(g, (Exists, Forall)):
            total += 1
            stack.append(g.body)
        elif isinstance(g, (Top, Bottom)):
            total += 1
        else:
            raise TypeError(f"not a formula node: {g!r}")
    return total


def term_vars(t: Term, out: set) -> set:
    stack = [t]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, Add):
            stack += (g.left, g.right)
        elif isinstance(g, Scale):
            stack.append(g.term)
    return out


def free_vars(f: Formula) -> set:
    if isinstance(f, (Eq, Lt)):
        return term_vars(f.right, term_vars(f.left, set()))
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        out = set()
        for g in f.args:
            out |= free_vars(g)
        return out
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    return set()


def subst_term(t: Term, env: dict) -> Term:
    if isinstance(t, Var):
        return env.get(t.name, t)
    if isinstance(t, Add):
        return Add(subst_term(t.left, env), subst_term(t.right, env))
    if isinstance(t, Scale):
        return Scale(t.coef, subst_term(t.term, env))
    return t


def substitute(f: Formula, env: dict) -> Formula:
    """Replace free variables by terms; bound variables shadow the mapping."""
    env = {k: as_term(v) for k, v in env.items()}
    if not env:
        return f
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, env), subst_term(f.right, env))
    if isinstance(f, Lt):
        return Lt(subst_term(f.left, env), subst_term(f.right, env))
    if isinstance(f, Not):
        return Not(substitute(f.arg, env))
    if isinstance(f, And):
        return And(tuple(substitute(g, env) for g in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(g, env) for g in f.args))
    if isinstance(f, (Exists, Forall)):
        inner = {k: v for k, v in env.items() if k != f.var}
        return type(f)(f.var, substitute(f.body, inner))
    return f


def term_value(t: Term, env: dict) -> Fraction:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        return Fraction(env[t.name])
    if isinstance(t, Add):
        return term_value(t.left, env) + term_value(t.right, env)
    return t.coef * term_value(t.term, env)


def evaluate(f: Formula, env: dict) -> bool:
    """Truth of a quantifier-free formula under an assignment of all its variables."""
    if isinstance(f, Eq):
        return term_value(f.left, env) == term_value(f.right, env)
    if isinstance(f, Lt):
        return term_value(f.left, env) < term_value(f.right, env)
    if isinstance(f, Not):
        return not evaluate(f.arg, env)
    if isinstance(f, And):
        return all(evaluate(g, env) for g in f.args)
    if isinstance(f, Or):
        return any(evaluate(g, env) for g in f.args)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    raise ValueError("evaluate handles quantifier-free formulas only")
