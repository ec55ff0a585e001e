"""Text forms of formulas.

Prefix form, close to SMT-LIB:

    (exists (x) (and (< 0 x) (= (+ x x) 1) (not (< (* (/ 1 2) x) (/ 1 3)))))

Infix form:

    exists x. 0 < x & x + x = 1 & ~(1/2*x < 1/3)

Both print exact rationals and parse back to the same tree.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ast import (Add, And, Bottom, Const, Eq, Exists, Forall, Formula, Lt, Not, Or, Scale, Term, Top,
                  Var, FALSE, TRUE)


class FormulaSyntaxError(ValueError):
    pass


# prefix form

def _num_prefix(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"(/ {c.numerator} {c.denominator})"


def _term_prefix(t: Term) -> str:
    if isinstance(t, Const):
        return _num_prefix(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        return f"(+ {_term_prefix(t.left)} {_term_prefix(t.right)})"
    if isinstance(t, Scale):
        return f"(* {_num_prefix(t.coef)} {_term_prefix(t.term)})"
    raise TypeError(f"not a term: {t!r}")


def to_prefix(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Eq):
        return f"(= {_term_prefix(f.left)} {_term_prefix(f.right)})"
    if isinstance(f, Lt):
        return f"(< {_term_prefix(f.left)} {_term_prefix(f.right)})"
    if isinstance(f, Not):
        return f"(not {to_prefix(f.arg)})"
    if isinstance(f, (And, Or)):
        op = "and" if isinstance(f, And) else "or"
        return f"({op} " + " ".join(to_prefix(g) for g in f.args) + ")"
    if isinstance(f, (Exists, Forall)):
        q = "exists" if isinstance(f, Exists) else "forall"
        return f"({q} ({f.var}) {to_prefix(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


def _sexp(text: str):
    tokens = re.findall(r"\(|\)|[^\s()]+", text)
    stack = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise FormulaSyntaxError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise FormulaSyntaxError("unbalanced '('")
    if len(stack[0]) != 1:
        raise FormulaSyntaxError("expected exactly one expression")
    return stack[0][0]


_INT = re.compile(r"^-?\d+$")


def _num_from_sexp(s) -> Fraction | None:
    if isinstance(s, str) and _INT.match(s):
        return Fraction(int(s))
    if isinstance(s, list) and len(s) == 3 and s[0] == "/" and all(isinstance(x, str) and _INT.match(x) for x in s[1:]):
        return Fraction(int(s[1]), int(s[2]))
    return None


def _term_from_sexp(s) -> Term:
    c = _num_from_sexp(s)
    if c is not None:
        return Const(c)
    if isinstance(s, str):
        return Var(s)
    if len(s) == 3 and s[0] == "+":
        return Add(_term_from_sexp(s[1]), _term_from_sexp(s[2]))
    if len(s) == 3 and s[0] == "*":
        c = _num_from_sexp(s[1])
        if c is None:
            raise FormulaSyntaxError("the factor of * must be a constant")
        return Scale(c, _term_from_sexp(s[2]))
    raise FormulaSyntaxError(f"bad term {s!r}")


def _formula_from_sexp(s) -> Formula:
    if s == "true":
        return TRUE
    if s == "false":
        return FALSE
    if not isinstance(s, list) or not s:
        raise FormulaSyntaxError(f"bad formula {s!r}")
    head = s[0]
    if head in ("=", "<") and len(s) == 3:
        cls = Eq if head == "=" else Lt
        return cls(_term_from_sexp(s[1]), _term_from_sexp(s[2]))
    if head == "not" and len(s) == 2:
        return Not(_formula_from_sexp(s[1]))
    if head in ("and", "or") and len(s) >= 3:
        cls = And if head == "and" else Or
        return cls(tuple(_formula_from_sexp(x) for x in s[1:]))
    if head in ("exists", "forall") and len(s) == 3 and isinstance(s[1], list) and len(s[1]) == 1:
        cls = Exists if head == "exists" else Forall
        return cls(s[1][0], _formula_from_sexp(s[2]))
    raise FormulaSyntaxError(f"bad formula {s!r}")


def parse_prefix(text: str) -> Formula:
    return _formula_from_sexp(_sexp(text))


# infix form

def _num_infix(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _term_infix(t: Term, nested: bool = False) -> str:
    if isinstance(t, Const):
        return _num_infix(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        right = _term_infix(t.right, True)
        if isinstance(t.right, Add):
            right = f"({right})"
        s = f"{_term_infix(t.left)} + {right}"
        return f"({s})" if nested else s
    if isinstance(t, Scale):
        inner = _term_infix(t.term, True)
        if isinstance(t.term, (Add, Scale)):
            inner = f"({_term_infix(t.term)})"
        return f"{_num_infix(t.coef)}*{inner}"
    raise TypeError(f"not a term: {t!r}")


def _prec(f: Formula) -> int:
    if isinstance(f, (Exists, Forall)):
        return 0
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    if isinstance(f, Not):
        return 3
    return 4


def _wrap(f: Formula, need: int) -> str:
    s = to_infix(f)
    return f"({s})" if _prec(f) < need else s


def to_infix(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Eq):
        return f"{_term_infix(f.left)} = {_term_infix(f.right)}"
    if isinstance(f, Lt):
        return f"{_term_infix(f.left)} < {_term_infix(f.right)}"
    if isinstance(f, Not):
        return "~" + _wrap(f.arg, 3)
    if isinstance(f, And):
        return " & ".join(_wrap(g, 3) for g in f.args)
    if isinstance(f, Or):
        return " | ".join(_wrap(g, 2) for g in f.args)
    if isinstance(f, (Exists, Forall)):
        q = "exists" if isinstance(f, Exists) else "forall"
        return f"{q} {f.var}. {to_infix(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


_TOKEN = re.compile(r"\s*(?:(-?\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


class _Infix:
    def __init__(self, text: str):
        self.toks = []
        for m in _TOKEN.finditer(text):
            num, name, sym = m.groups()
            if num is not None:
                self.toks.append(("num", num))
            elif name is not None:
                self.toks.append(("name", name))
            elif sym is not None and not sym.isspace():
                self.toks.append(("sym", sym))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise FormulaSyntaxError(f"unexpected {tok[1]!r} at token {self.i}, expected {value or kind}")
        self.i += 1
        return tok[1]

    def formula(self) -> Formula:
        kind, val = self.peek()
        if kind == "name" and val in ("exists", "forall"):
            self.take()
            var = self.take("name")
            self.take("sym", ".")
            body = self.formula()
            return (Exists if val == "exists" else Forall)(var, body)
        return self.disjunction()

    def disjunction(self) -> Formula:
        args = [self.conjunction()]
        while self.peek() == ("sym", "|"):
            self.take()
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self) -> Formula:
        args = [self.unary()]
        while self.peek() == ("sym", "&"):
            self.take()
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Formula:
        kind, val = self.peek()
        if (kind, val) == ("sym", "~"):
            self.take()
            return Not(self.unary())
        if kind == "name" and val in ("true", "false"):
            self.take()
            return TRUE if val == "true" else FALSE
        if kind == "name" and val in ("exists", "forall"):
            return self.formula()
        if (kind, val) == ("sym", "("):
            save = self.i
            self.take()
            try:
                f = self.formula()
                self.take("sym", ")")
                if self.peek() not in (("sym", "="), ("sym", "<"), ("sym", "+"), ("sym", "*")):
                    return f
            except FormulaSyntaxError:
                pass
            self.i = save
        return self.atom()

    def atom(self) -> Formula:
        left = self.term()
        op = self.take("sym")
        if op not in ("=", "<"):
            raise FormulaSyntaxError(f"expected = or <, got {op!r}")
        right = self.term()
        return (Eq if op == "=" else Lt)(left, right)

    def term(self) -> Term:
        t = self.product()
        while self.peek() == ("sym", "+"):
            self.take()
            t = Add(t, self.product())
        return t

    def product(self) -> Term:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            if self.peek() == ("sym", "*"):
                self.take()
                return Scale(Fraction(val), self.primary())
            return Const(Fraction(val))
        return self.primary()

    def primary(self) -> Term:
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return Const(Fraction(val))
        if kind == "name":
            self.take()
            return Var(val)
        self.take("sym", "(")
        t = self.term()
        self.take("sym", ")")
        return t


def parse_infix(text: str) -> Formula:
    p = _Infix(text)
    f = p.formula()
    if p.i != len(p.toks):
        raise FormulaSyntaxError(f"trailing input at token {p.i}")
    return f


def parse_formula(text: str) -> Formula:
    """Either text form; a leading '(' followed by an operator word selects the prefix form."""
    s = text.strip()
    if re.match(r"^\(\s*(=|<|not|and|or|exists|forall)(?=[\s(])", s):
        try:
            return parse_prefix(s)
        except FormulaSyntaxError:
            pass
    return parse_infix(s)
