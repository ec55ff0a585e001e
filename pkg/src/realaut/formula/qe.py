"""Deciding closed formulas of (R, +, <, 1).

Universal blocks are removed by quantifier elimination: the negated body
is expanded into a disjunctive normal form lazily (only the parts that
mention the eliminated variables), equalities are used for substitution
first and the remaining bounds are combined by Fourier-Motzkin.  The
existential part left over is decided by a backtracking search over
disjunctions.  Every step is exact rational arithmetic; interval bounds
and convex hulls of pending disjunctions only serve to prune branches,
and each leaf is checked by Fourier-Motzkin.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import count

from gmpy2 import mpq

from .ast import (Add, And, Bottom, Const, Eq, Exists, Forall, Formula, Lt, Not, Or, Scale, Top, Var,
                  free_vars, substitute)

EQ, LT, LE = "=", "<", "<="
DEFAULT_CLAUSE_BUDGET = 10 ** 6

T_NODE = ("T",)
F_NODE = ("F",)


class QEBudgetError(RuntimeError):
    """The disjunctive normal form grew beyond the clause budget."""


class FormulaError(ValueError):
    pass


# linear terms and literals

def linearize(t) -> tuple:
    """(coefficients, constant) of a term."""
    coeffs = {}
    const = Fraction(0)
    stack = [(t, Fraction(1))]
    while stack:
        g, k = stack.pop()
        if isinstance(g, Const):
            const += k * g.value
        elif isinstance(g, Var):
            coeffs[g.name] = coeffs.get(g.name, 0) + k
        elif isinstance(g, Add):
            stack.append((g.left, k))
            stack.append((g.right, k))
        elif isinstance(g, Scale):
            stack.append((g.term, k * g.coef))
        else:
            raise FormulaError(f"not a linear term: {g!r}")
    return coeffs, const


def make_lit(rel: str, coeffs: dict, const: Fraction) -> tuple:
    """Literal  sum(coeffs) + const  rel  0, normalized; ground literals fold to T or F."""
    items = sorted((v, Fraction(c)) for v, c in coeffs.items() if c != 0)
    if not items:
        if rel == EQ:
            ok = const == 0
        elif rel == LT:
            ok = const < 0
        else:
            ok = const <= 0
        return T_NODE if ok else F_NODE
    lead = items[0][1]
    scale = lead if rel == EQ else abs(lead)
    if scale != 1:
        items = [(v, c / scale) for v, c in items]
        const = const / scale
    return ("L", rel, tuple(items), Fraction(const))


def mk_and(children) -> tuple:
    out = []
    seen = set()
    for c in children:
        if c[0] == "F":
            return F_NODE
        if c[0] == "T":
            continue
        for d in (c[1] if c[0] == "A" else (c,)):
            if d not in seen:
                seen.add(d)
                out.append(d)
    if not out:
        return T_NODE
    return out[0] if len(out) == 1 else ("A", tuple(out))


def mk_or(children) -> tuple:
    out = []
    seen = set()
    for c in children:
        if c[0] == "T":
            return T_NODE
        if c[0] == "F":
            continue
        for d in (c[1] if c[0] == "O" else (c,)):
            if d not in seen:
                seen.add(d)
                out.append(d)
    if not out:
        return F_NODE
    return out[0] if len(out) == 1 else ("O", tuple(out))


def _diff(left, right) -> tuple:
    c1, k1 = linearize(left)
    c2, k2 = linearize(right)
    for v, c in c2.items():
        c1[v] = c1.get(v, 0) - c
    return c1, k1 - k2


def _neg_lin(coeffs: dict, const) -> tuple:
    return {v: -c for v, c in coeffs.items()}, -const


def nnf(f: Formula, positive: bool = True) -> tuple:
    """Internal negation normal form; quantifier runs become blocks."""
    if isinstance(f, Top):
        return T_NODE if positive else F_NODE
    if isinstance(f, Bottom):
        return F_NODE if positive else T_NODE
    if isinstance(f, Eq):
        c, k = _diff(f.left, f.right)
        if positive:
            return make_lit(EQ, c, k)
        return mk_or([make_lit(LT, c, k), make_lit(LT, *_neg_lin(c, k))])
    if isinstance(f, Lt):
        c, k = _diff(f.left, f.right)
        return make_lit(LT, c, k) if positive else make_lit(LE, *_neg_lin(c, k))
    if isinstance(f, Not):
        return nnf(f.arg, not positive)
    if isinstance(f, (And, Or)):
        parts = [nnf(g, positive) for g in f.args]
        return mk_and(parts) if isinstance(f, And) == positive else mk_or(parts)
    if isinstance(f, (Exists, Forall)):
        kind = "E" if isinstance(f, Exists) == positive else "U"
        names = [f.var]
        body = f.body
        while isinstance(body, type(f)):
            names.append(body.var)
            body = body.body
        inner = nnf(body, positive)
        if inner[0] in ("T", "F"):
            return inner
        return (kind, tuple(names), inner)
    raise FormulaError(f"not a formula: {f!r}")


def negate(node: tuple) -> tuple:
    """Negation of a quantifier-free internal node, kept in normal form."""
    tag = node[0]
    if tag == "T":
        return F_NODE
    if tag == "F":
        return T_NODE
    if tag == "L":
        _, rel, items, const = node
        coeffs = dict(items)
        if rel == EQ:
            return mk_or([make_lit(LT, coeffs, const), make_lit(LT, *_neg_lin(coeffs, const))])
        return make_lit(LE if rel == LT else LT, *_neg_lin(coeffs, const))
    if tag == "A":
        return mk_or([negate(c) for c in node[1]])
    if tag == "O":
        # e < 0 | -e < 0 is a disequality, flattened into the disjunction;
        # its negation is the equality e = 0
        strict = {(k[2], k[3]) for k in node[1] if k[0] == "L" and k[1] == LT}
        out, used = [], set()
        for k in node[1]:
            if k[0] == "L" and k[1] == LT:
                key = (k[2], k[3])
                mirror = (tuple((v, -c) for v, c in k[2]), -k[3])
                if mirror in strict:
                    if key not in used:
                        used.add(key)
                        used.add(mirror)
                        out.append(make_lit(EQ, dict(k[2]), k[3]))
                    continue
            out.append(negate(k))
        return mk_and(out)
    raise FormulaError("negate expects a quantifier-free node")


def node_vars(node: tuple, out: set | None = None) -> set:
    out = set() if out is None else out
    stack = [node]
    while stack:
        g = stack.pop()
        tag = g[0]
        if tag == "L":
            out.update(v for v, _ in g[2])
        elif tag in ("A", "O"):
            stack.extend(g[1])
        elif tag in ("E", "U"):
            inner = node_vars(g[2])
            out.update(inner - set(g[1]))
    return out


def subst_node(node: tuple, var: str, coeffs: dict, const: Fraction) -> tuple:
    """Replace var by the linear expression coeffs + const."""
    tag = node[0]
    if tag == "L":
        _, rel, items, k = node
        d = dict(items)
        c = d.pop(var, None)
        if c is None:
            return node
        for v, e in coeffs.items():
            d[v] = d.get(v, 0) + c * e
        return make_lit(rel, d, k + c * const)
    if tag == "A":
        return mk_and([subst_node(g, var, coeffs, const) for g in node[1]])
    if tag == "O":
        return mk_or([subst_node(g, var, coeffs, const) for g in node[1]])
    if tag in ("E", "U"):
        if var in node[1]:
            return node
        return (tag, node[1], subst_node(node[2], var, coeffs, const))
    return node


def rename_node(node: tuple, mapping: dict) -> tuple:
    """Rename free variables in one pass."""
    tag = node[0]
    if tag == "L":
        _, rel, items, k = node
        if not any(v in mapping for v, _ in items):
            return node
        return make_lit(rel, {mapping.get(v, v): c for v, c in items}, k)
    if tag in ("A", "O"):
        return (tag, tuple(rename_node(g, mapping) for g in node[1]))
    if tag in ("E", "U"):
        inner = {v: w for v, w in mapping.items() if v not in node[1]}
        return (tag, node[1], rename_node(node[2], inner)) if inner else node
    return node


# Fourier-Motzkin

def _solve_eq(items, const, var) -> tuple:
    """From sum + const = 0, var = expression."""
    d = dict(items)
    c = d.pop(var)
    return {v: -e / c for v, e in d.items()}, -const / c


def fourier_motzkin(lits, elim) -> list | None:
    """Project a conjunction of literals onto the variables outside elim.

    Returns the projected literals, or None when the conjunction is
    unsatisfiable.  Equalities on eliminated variables are substituted
    first.
    """
    work = set()
    for lit in lits:
        if lit[0] == "F":
            return None
        if lit[0] == "L":
            work.add(lit)
    elim = set(elim)
    while True:
        eq = next((l for l in work if l[1] == EQ and any(v in elim for v, _ in l[2])), None)
        if eq is None:
            break
        var = next(v for v, _ in eq[2] if v in elim)
        coeffs, const = _solve_eq(eq[2], eq[3], var)
        new = set()
        for l in work:
            if l is eq:
                continue
            s = subst_node(l, var, coeffs, const)
            if s[0] == "F":
                return None
            if s[0] == "L":
                new.add(s)
        work = new
        elim.discard(var)
    while True:
        present = {}
        for l in work:
            for v, c in l[2]:
                if v in elim:
                    pos, neg = present.get(v, (0, 0))
                    present[v] = (pos + (c > 0), neg + (c < 0))
        if not present:
            return sorted(work, key=repr)
        var = min(present, key=lambda v: (present[v][0] * present[v][1], v))
        uppers, lowers, rest = [], [], set()
        for l in work:
            c = dict(l[2]).get(var)
            if c is None:
                rest.add(l)
            elif c > 0:
                uppers.append(l)
            else:
                lowers.append(l)
        for u in uppers:
            du = dict(u[2])
            a = du.pop(var)
            for lo in lowers:
                dl = dict(lo[2])
                c = -dl.pop(var)
                comb = {}
                for v, e in du.items():
                    comb[v] = comb.get(v, 0) + c * e
                for v, e in dl.items():
                    comb[v] = comb.get(v, 0) + a * e
                rel = LT if LT in (u[1], lo[1]) else LE
                res = make_lit(rel, comb, c * u[3] + a * lo[3])
                if res[0] == "F":
                    return None
                if res[0] == "L":
                    rest.add(res)
        work = rest
        elim.discard(var)


# quantifier elimination

def _direct_eq_score(or_node, elim) -> float:
    hits = 0
    for child in or_node[1]:
        lits = child[1] if child[0] == "A" else (child,)
        if any(l[0] == "L" and l[1] == EQ and any(v in elim for v, _ in l[2]) for l in lits):
            hits += 1
    return hits / len(or_node[1])


def qe_exists(names, body: tuple, budget: int = DEFAULT_CLAUSE_BUDGET) -> tuple:
    """Quantifier-free equivalent of  exists names. body  (body quantifier-free)."""
    elim0 = frozenset(names) & node_vars(body)
    if not elim0:
        return body
    clauses = []
    spent = 0
    stack = [(elim0, [body])]
    while stack:
        elim, items = stack.pop()
        spent += 1
        if spent > budget:
            raise QEBudgetError(f"quantifier elimination exceeded {budget} clauses")
        while True:
            flat = mk_and(items)
            if flat[0] == "F":
                break
            items = list(flat[1]) if flat[0] == "A" else ([] if flat[0] == "T" else [flat])
            outside, inside, ors = [], [], []
            for it in items:
                vs = node_vars(it) & elim
                if not vs:
                    outside.append(it)
                elif it[0] == "L":
                    inside.append(it)
                else:
                    ors.append(it)
            eq = next((l for l in inside if l[1] == EQ), None)
            if eq is not None:
                var = next(v for v, _ in eq[2] if v in elim)
                coeffs, const = _solve_eq(eq[2], eq[3], var)
                items = outside + [subst_node(it, var, coeffs, const) for it in inside + ors if it is not eq]
                elim = elim - {var}
                continue
            if ors:
                pick = max(range(len(ors)), key=lambda i: (_direct_eq_score(ors[i], elim), -len(ors[i][1])))
                chosen = ors[pick]
                others = outside + inside + ors[:pick] + ors[pick + 1:]
                for child in reversed(chosen[1]):
                    stack.append((elim, others + [child]))
                break
            projected = fourier_motzkin(inside, elim)
            if projected is not None:
                clauses.append(mk_and(outside + projected))
            break
    return mk_or(clauses)


def eliminate(node: tuple, budget: int = DEFAULT_CLAUSE_BUDGET) -> tuple:
    """Quantifier-free equivalent of an internal node."""
    tag = node[0]
    if tag == "A":
        return mk_and([eliminate(g, budget) for g in node[1]])
    if tag == "O":
        return mk_or([eliminate(g, budget) for g in node[1]])
    if tag == "E":
        return qe_exists(node[1], eliminate(node[2], budget), budget)
    if tag == "U":
        return negate(qe_exists(node[1], negate(eliminate(node[2], budget)), budget))
    return node


def prepare(node: tuple, budget: int = DEFAULT_CLAUSE_BUDGET) -> tuple:
    """Quantifier-free node whose free variables are existentially read."""
    fresh = count()

    def walk(g):
        tag = g[0]
        if tag == "A":
            return mk_and([walk(h) for h in g[1]])
        if tag == "O":
            return mk_or([walk(h) for h in g[1]])
        if tag == "E":
            return walk(rename_node(g[2], {v: f"{v}#{next(fresh)}" for v in g[1]}))
        if tag == "U":
            return eliminate(g, budget)
        return g

    return walk(node)


# satisfiability search

class _Problem:
    """Quantifier-free node flattened into arrays for the search."""

    def __init__(self, root: tuple):
        self.kind = []
        self.children = []
        self.lit = []
        self.index = {}
        self.var_nodes = []
        self._subtree_vars = {}
        self.root = self._add(root)
        self.nvars = len(self.index)

    def var(self, name: str) -> int:
        if name not in self.index:
            self.index[name] = len(self.index)
            self.var_nodes.append([])
        return self.index[name]

    def _add(self, node: tuple) -> int:
        nid = len(self.kind)
        tag = node[0]
        self.kind.append(tag)
        self.children.append(())
        self.lit.append(None)
        if tag == "L":
            _, rel, items, const = node
            vs = tuple(self.var(v) for v, _ in items)
            self.lit[nid] = (rel, vs, tuple(mpq(c) for _, c in items), mpq(const))
            for v in vs:
                self.var_nodes[v].append(nid)
            return nid
        if tag in ("A", "O"):
            kids = tuple(self._add(c) for c in node[1])
            self.children[nid] = kids
            mine = set()
            for k in kids:
                mine.update(self._vars_of(k))
            for v in mine:
                self.var_nodes[v].append(nid)
            self._subtree_vars[nid] = mine
            return nid
        if tag in ("T", "F"):
            return nid
        raise FormulaError("search expects a quantifier-free node")

    def _vars_of(self, nid: int) -> set:
        if self.kind[nid] == "L":
            return set(self.lit[nid][1])
        return self._subtree_vars.get(nid, set())


def _tighter_hi(new, old) -> bool:
    if old is None:
        return True
    return new[0] < old[0] or (new[0] == old[0] and new[1] and not old[1])


def _tighter_lo(new, old) -> bool:
    if old is None:
        return True
    return new[0] > old[0] or (new[0] == old[0] and new[1] and not old[1])


_ZERO = mpq(0)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class _Conflict(Exception):
    pass


MAX_ICP_SWEEPS = 8


class _State:
    __slots__ = ("p", "val", "lo", "hi", "active")

    def __init__(self, p: _Problem):
        self.p = p
        self.val = {}
        self.lo = {}
        self.hi = {}
        self.active = set()

    def copy(self) -> "_State":
        s = _State.__new__(_State)
        s.p = self.p
        s.val = dict(self.val)
        s.lo = dict(self.lo)
        s.hi = dict(self.hi)
        s.active = set(self.active)
        return s

    # bounds of a linear form over the unknown variables

    def _range(self, vs, cs):
        val, los, his = self.val, self.lo, self.hi
        lo = hi = _ZERO
        lo_s = hi_s = False
        lo_inf = hi_inf = False
        for v, c in zip(vs, cs):
            x = val.get(v)
            if x is not None:
                x = c * x
                lo += x
                hi += x
                continue
            if c > 0:
                b_lo, b_hi = los.get(v), his.get(v)
            else:
                b_lo, b_hi = his.get(v), los.get(v)
            if lo_inf or b_lo is None:
                lo_inf = True
            else:
                lo += c * b_lo[0]
                lo_s = lo_s or b_lo[1]
            if hi_inf or b_hi is None:
                hi_inf = True
                if lo_inf:
                    return None, None
            else:
                hi += c * b_hi[0]
                hi_s = hi_s or b_hi[1]
        return (None if lo_inf else (lo, lo_s)), (None if hi_inf else (hi, hi_s))

    def lit_status(self, nid: int):
        """True, False or None (unknown) for a literal under values and bounds."""
        rel, vs, cs, const = self.p.lit[nid]
        lo, hi = self._range(vs, cs)
        if lo is not None:
            lo = (lo[0] + const, lo[1])
        if hi is not None:
            hi = (hi[0] + const, hi[1])
        if rel == EQ:
            if lo is not None and hi is not None and not lo[1] and not hi[1] and lo[0] == 0 == hi[0]:
                return True
            if lo is not None and (lo[0] > 0 or (lo[0] == 0 and lo[1])):
                return False
            if hi is not None and (hi[0] < 0 or (hi[0] == 0 and hi[1])):
                return False
            return None
        strict = rel == LT
        if hi is not None and (hi[0] < 0 or (hi[0] == 0 and (hi[1] or not strict))):
            return True
        if lo is not None and (lo[0] > 0 or (lo[0] == 0 and (strict or lo[1]))):
            return False
        return None

    def status(self, nid: int):
        kind = self.p.kind[nid]
        if kind == "L":
            return self.lit_status(nid)
        if kind == "T":
            return True
        if kind == "F":
            return False
        kids = self.p.children[nid]
        if kind == "A":
            res = True
            for k in kids:
                s = self.status(k)
                if s is False:
                    return False
                if s is None:
                    res = None
            return res
        res = False
        for k in kids:
            s = self.status(k)
            if s is True:
                return True
            if s is None:
                res = None
        return res

    # updates

    def set_hi(self, v: int, b, changed: set):
        x = self.val.get(v)
        if x is not None:
            if x > b[0] or (x == b[0] and b[1]):
                raise _Conflict
            return
        if not _tighter_hi(b, self.hi.get(v)):
            return
        self.hi[v] = b
        changed.add(v)
        self._check(v)

    def set_lo(self, v: int, b, changed: set):
        x = self.val.get(v)
        if x is not None:
            if x < b[0] or (x == b[0] and b[1]):
                raise _Conflict
            return
        if not _tighter_lo(b, self.lo.get(v)):
            return
        self.lo[v] = b
        changed.add(v)
        self._check(v)

    def _check(self, v: int):
        lo, hi = self.lo.get(v), self.hi.get(v)
        if lo is None or hi is None:
            return
        if lo[0] > hi[0] or (lo[0] == hi[0] and (lo[1] or hi[1])):
            raise _Conflict
        if lo[0] == hi[0]:
            self.val[v] = lo[0]

    def assign(self, v: int, x: Fraction, changed: set):
        old = self.val.get(v)
        if old is not None:
            if old != x:
                raise _Conflict
            return
        lo, hi = self.lo.get(v), self.hi.get(v)
        if lo is not None and (x < lo[0] or (x == lo[0] and lo[1])):
            raise _Conflict
        if hi is not None and (x > hi[0] or (x == hi[0] and hi[1])):
            raise _Conflict
        self.val[v] = x
        changed.add(v)

    def _unknowns(self, nid: int):
        rel, vs, cs, const = self.p.lit[nid]
        k = const
        uv, uc = [], []
        for v, c in zip(vs, cs):
            x = self.val.get(v)
            if x is None:
                uv.append(v)
                uc.append(c)
            else:
                k += c * x
        return rel, uv, uc, k

    def _force_lit(self, nid: int, changed: set) -> bool:
        """Use a literal that must hold; True when it is fully absorbed."""
        st = self.lit_status(nid)
        if st is True:
            return True
        if st is False:
            raise _Conflict
        rel, uv, uc, k = self._unknowns(nid)
        if len(uv) != 1:
            return False
        v, c = uv[0], uc[0]
        bound = -k / c
        if rel == EQ:
            self.assign(v, bound, changed)
        elif c > 0:
            self.set_hi(v, (bound, rel == LT), changed)
        else:
            self.set_lo(v, (bound, rel == LT), changed)
        return True

    def _hull(self, nid: int, viable) -> list:
        """Constraints on linear forms shared by every viable disjunct."""
        common = None
        for k in viable:
            lits = self.p.children[k] if self.p.kind[k] == "A" else (k,)
            mine = {}
            for l in lits:
                if self.p.kind[l] != "L":
                    continue
                rel, uv, uc, const = self._unknowns(l)
                if not uv:
                    continue
                lead = uc[0]
                key = tuple(zip(uv, (c / lead for c in uc)))
                bound = -const / lead
                if rel == EQ:
                    iv = [(bound, False), (bound, False)]
                elif lead > 0:
                    iv = [None, (bound, rel == LT)]
                else:
                    iv = [(bound, rel == LT), None]
                old = mine.get(key)
                if old is not None:
                    if iv[0] is not None and _tighter_lo(iv[0], old[0]):
                        old[0] = iv[0]
                    if iv[1] is not None and _tighter_hi(iv[1], old[1]):
                        old[1] = iv[1]
                else:
                    mine[key] = iv
            if common is None:
                common = mine
            else:
                merged = {}
                for key, iv in common.items():
                    other = mine.get(key)
                    if other is None:
                        continue
                    lo = None if iv[0] is None or other[0] is None else (
                        iv[0] if _tighter_lo(other[0], iv[0]) else other[0])
                    hi = None if iv[1] is None or other[1] is None else (
                        iv[1] if _tighter_hi(other[1], iv[1]) else other[1])
                    if lo is not None or hi is not None:
                        merged[key] = [lo, hi]
                common = merged
            if not common:
                return []
        return [(key, iv[0], iv[1]) for key, iv in common.items()]

    def _icp(self, constraints, changed: set):
        """Bound propagation through constraints lo <= sum c*v <= hi."""
        for _ in range(MAX_ICP_SWEEPS):
            before = len(changed)
            touched = set()
            for key, clo, chi in constraints:
                vs = [v for v, _ in key]
                cs = [c for _, c in key]
                for i, (v, c) in enumerate(key):
                    if v in self.val:
                        continue
                    rest_lo, rest_hi = self._range(vs[:i] + vs[i + 1:], cs[:i] + cs[i + 1:])
                    # c*v = form - rest
                    up = None if chi is None or rest_lo is None else (chi[0] - rest_lo[0], chi[1] or rest_lo[1])
                    down = None if clo is None or rest_hi is None else (clo[0] - rest_hi[0], clo[1] or rest_hi[1])
                    if c > 0:
                        if up is not None:
                            self.set_hi(v, (up[0] / c, up[1]), touched)
                        if down is not None:
                            self.set_lo(v, (down[0] / c, down[1]), touched)
                    else:
                        if up is not None:
                            self.set_lo(v, (up[0] / c, up[1]), touched)
                        if down is not None:
                            self.set_hi(v, (down[0] / c, down[1]), touched)
            changed |= touched
            if len(changed) == before and not touched:
                return

    def propagate(self, fresh) -> None:
        """Unit propagation plus bound propagation to a fixpoint; raises _Conflict."""
        p = self.p
        queue = deque(sorted(fresh))
        queued = set(fresh)
        while True:
            while queue:
                nid = queue.popleft()
                queued.discard(nid)
                if nid not in self.active:
                    continue
                kind = p.kind[nid]
                changed = set()
                if kind == "L":
                    if self._force_lit(nid, changed):
                        self.active.discard(nid)
                elif kind == "T":
                    self.active.discard(nid)
                elif kind == "F":
                    raise _Conflict
                elif kind == "A":
                    self.active.discard(nid)
                    for k in p.children[nid]:
                        if k not in self.active:
                            self.active.add(k)
                            queue.append(k)
                            queued.add(k)
                else:
                    viable = []
                    done = False
                    for k in p.children[nid]:
                        s = self.status(k)
                        if s is True:
                            done = True
                            break
                        if s is None:
                            viable.append(k)
                    if done:
                        self.active.discard(nid)
                    elif not viable:
                        raise _Conflict
                    elif len(viable) == 1:
                        self.active.discard(nid)
                        k = viable[0]
                        if k not in self.active:
                            self.active.add(k)
                            queue.append(k)
                            queued.add(k)
                for v in changed:
                    for m in p.var_nodes[v]:
                        if m in self.active and m not in queued:
                            queue.append(m)
                            queued.add(m)
            constraints = []
            for nid in self.active:
                if p.kind[nid] == "L":
                    rel, uv, uc, k = self._unknowns(nid)
                    if len(uv) < 2:
                        continue
                    key = tuple(zip(uv, uc))
                    if rel == EQ:
                        constraints.append((key, (-k, False), (-k, False)))
                    else:
                        constraints.append((key, None, (-k, rel == LT)))
                elif p.kind[nid] == "O":
                    viable = [k for k in p.children[nid] if self.status(k) is not False]
                    constraints.extend(self._hull(nid, viable))
            changed = set()
            if constraints:
                self._icp(constraints, changed)
            if not changed:
                return
            for v in changed:
                for m in p.var_nodes[v]:
                    if m in self.active and m not in queued:
                        queue.append(m)
                        queued.add(m)

    def leaf_consistent(self) -> bool:
        """Fourier-Motzkin check of the literals still open at a leaf."""
        p = self.p
        names = list(p.index)
        lits = []
        mentioned = set()
        for nid in self.active:
            rel, uv, uc, k = self._unknowns(nid)
            lit = make_lit(rel, {names[v]: _frac(c) for v, c in zip(uv, uc)}, _frac(k))
            if lit[0] == "F":
                return False
            if lit[0] == "L":
                lits.append(lit)
                mentioned.update(uv)
        if not lits:
            return True
        for v in mentioned:
            if v in self.val:
                continue
            if v in self.lo:
                b, s = self.lo[v]
                lits.append(make_lit(LT if s else LE, {names[v]: Fraction(-1)}, _frac(b)))
            if v in self.hi:
                b, s = self.hi[v]
                lits.append(make_lit(LT if s else LE, {names[v]: Fraction(1)}, -_frac(b)))
        return fourier_motzkin(lits, {names[v] for v in mentioned}) is not None


def _search(state: _State, fresh) -> bool:
    try:
        state.propagate(fresh)
    except _Conflict:
        return False
    p = state.p
    best = None
    best_viable = None
    for nid in sorted(state.active):
        if p.kind[nid] != "O":
            continue
        viable = [k for k in p.children[nid] if state.status(k) is not False]
        if best is None or len(viable) < len(best_viable):
            best, best_viable = nid, viable
            if len(viable) == 2:
                break
    if best is None:
        return state.leaf_consistent()
    for k in best_viable:
        child = state.copy()
        child.active.discard(best)
        child.active.add(k)
        if _search(child, {k}):
            return True
    return False


def satisfiable(node: tuple, values: dict | None = None) -> bool:
    """Whether the quantifier-free node has a solution extending values."""
    return _check(_Problem(node), values or {})


def _check(problem: _Problem, values: dict) -> bool:
    state = _State(problem)
    if problem.kind[problem.root] == "T":
        return True
    if problem.kind[problem.root] == "F":
        return False
    for name, x in values.items():
        v = problem.index.get(name)
        if v is not None:
            state.val[v] = Fraction(x)
    state.active.add(problem.root)
    return _search(state, {problem.root})


class FormulaEvaluator:
    """A formula with free variables, preprocessed once and evaluated at many points.

    Quantifier elimination of the universal blocks happens in the
    constructor; each call then only runs the search.
    """

    def __init__(self, f: Formula, free: tuple = ("x",), budget: int = DEFAULT_CLAUSE_BUDGET):
        extra = free_vars(f) - set(free)
        if extra:
            raise FormulaError(f"unbound variables {sorted(extra)}")
        self.free = tuple(free)
        self.node = prepare(nnf(f), budget)
        for name in self.free:
            if f"{name}#" in name:
                raise FormulaError("reserved variable name")
        self.problem = _Problem(self.node)

    def __call__(self, *values) -> bool:
        if len(values) != len(self.free):
            raise FormulaError(f"expected {len(self.free)} values")
        return _check(self.problem, {n: Fraction(v) for n, v in zip(self.free, values)})


def decide_sentence(f: Formula, bindings: dict | None = None, budget: int = DEFAULT_CLAUSE_BUDGET) -> bool:
    """Truth of f over the reals once its free variables are bound to rationals."""
    bindings = {k: Const(Fraction(v)) for k, v in (bindings or {}).items()}
    g = substitute(f, bindings)
    left = free_vars(g)
    if left:
        raise FormulaError(f"unbound variables {sorted(left)}")
    node = prepare(nnf(g), budget)
    return satisfiable(node)
