"""Simple sets: finite unions of rational-bounded intervals of [0, inf).

A SimpleSet is stored canonically as disjoint open intervals plus
singletons.  Closed or half-open intervals are split into an open
interval and singletons, and an endpoint shared by two intervals that
belongs to the set glues them into one.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import floor
from typing import Iterable

from .automaton import AutomatonError
from .numeration import format_rational, parse_rational

INF = None


@dataclass(frozen=True)
class Piece:
    lo: Fraction
    hi: Fraction | None
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, r: Fraction) -> bool:
        if r < self.lo or (r == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return r < self.hi or (r == self.hi and self.hi_closed)


@dataclass(frozen=True)
class SimpleSet:
    intervals: tuple = ()
    singletons: tuple = ()

    def __contains__(self, r) -> bool:
        return member(self, r)

    def __str__(self):
        return format_set(self)

    def is_empty(self) -> bool:
        return not self.intervals and not self.singletons

    def points(self) -> list:
        """All finite endpoints and singletons, sorted."""
        pts = set(self.singletons)
        for lo, hi in self.intervals:
            pts.add(lo)
            if hi is not None:
                pts.add(hi)
        return sorted(pts)

    def affine(self, scale: Fraction, shift: Fraction) -> "SimpleSet":
        """Image under x -> scale*x + shift, scale > 0."""
        scale, shift = Fraction(scale), Fraction(shift)
        return SimpleSet(
            intervals=tuple((lo * scale + shift, None if hi is None else hi * scale + shift)
                            for lo, hi in self.intervals),
            singletons=tuple(p * scale + shift for p in self.singletons),
        )

    @cached_property
    def _los(self) -> list:
        return [lo for lo, _ in self.intervals]

    def bounded(self) -> bool:
        return not self.intervals or self.intervals[-1][1] is not None


EMPTY = SimpleSet()
UNIT = SimpleSet(intervals=((Fraction(0), Fraction(1)),), singletons=(Fraction(0), Fraction(1)))
ALL = SimpleSet(intervals=((Fraction(0), None),), singletons=(Fraction(0),))


def member(s: SimpleSet, r) -> bool:
    r = parse_rational(r)
    i = bisect_left(s.singletons, r)
    if i < len(s.singletons) and s.singletons[i] == r:
        return True
    j = bisect_left(s._los, r) - 1
    if j < 0:
        return False
    hi = s.intervals[j][1]
    return hi is None or r < hi


def _from_samples(pts, point_in, gap_in) -> SimpleSet:
    """Canonical set from membership of the points pts[i] and of the gaps after them.

    ``gap_in[i]`` is the membership of (pts[i], pts[i+1]), the last gap
    being unbounded.  pts[0] must be 0.
    """
    intervals = []
    singletons = []
    start = None
    for i, p in enumerate(pts):
        left = i > 0 and gap_in[i - 1]
        right = gap_in[i]
        if point_in[i] and not (left and right):
            singletons.append(p)
        if left and not (point_in[i] and right):
            intervals.append((start, p))
            start = None
        if right and not (left and point_in[i]):
            start = p
    if gap_in and gap_in[-1]:
        intervals.append((start, None))
    return SimpleSet(tuple(intervals), tuple(singletons))


def _sample_points(pts):
    """For sorted points starting at 0: a probe inside each gap."""
    probes = []
    for i, p in enumerate(pts):
        probes.append((p + pts[i + 1]) / 2 if i + 1 < len(pts) else p + 1)
    return probes


def normalize(pieces: Iterable = (), singletons: Iterable = ()) -> SimpleSet:
    """Canonical SimpleSet from raw pieces (lo, hi, lo_closed, hi_closed) and points.

    ``hi`` may be None for an unbounded interval.
    """
    raw = []
    for p in pieces:
        if not isinstance(p, Piece):
            p = Piece(parse_rational(p[0]), None if p[1] is None else parse_rational(p[1]), *p[2:])
        if p.hi is not None and p.lo > p.hi:
            raise AutomatonError(f"interval with lo {p.lo} > hi {p.hi}")
        if p.lo < 0:
            raise AutomatonError("simple sets live in [0, inf)")
        raw.append(p)
    points = sorted({parse_rational(x) for x in singletons})
    if points and points[0] < 0:
        raise AutomatonError("simple sets live in [0, inf)")
    raw += [Piece(x, x, True, True) for x in points]
    pts = {Fraction(0)}
    for p in raw:
        pts.add(p.lo)
        if p.hi is not None:
            pts.add(p.hi)
    pts = sorted(pts)
    where = {x: i for i, x in enumerate(pts)}
    k = len(pts)
    gap_cover = [0] * (k + 1)
    point_cover = [0] * (k + 1)
    point_in = [False] * k
    for p in raw:
        i = where[p.lo]
        j = k if p.hi is None else where[p.hi]
        if p.lo_closed:
            point_in[i] = True
        if p.hi_closed and p.hi is not None:
            point_in[j] = True
        if i < j:
            gap_cover[i] += 1
            gap_cover[j] -= 1
            point_cover[i + 1] += 1
            point_cover[j] -= 1
    gap_in = []
    g = c = 0
    for i in range(k):
        g += gap_cover[i]
        c += point_cover[i]
        gap_in.append(g > 0)
        point_in[i] = point_in[i] or c > 0
    return _from_samples(pts, point_in, gap_in)


def combine(sets, fn) -> SimpleSet:
    """Pointwise boolean combination of simple sets."""
    sets = list(sets)
    pts = {Fraction(0)}
    for s in sets:
        pts.update(s.points())
    pts = sorted(pts)
    point_in = [fn([member(s, x) for s in sets]) for x in pts]
    gap_in = [fn([member(s, x) for s in sets]) for x in _sample_points(pts)]
    return _from_samples(pts, point_in, gap_in)


def union(*sets) -> SimpleSet:
    sets = [s for s in sets if not s.is_empty()]
    if not sets:
        return EMPTY
    if len(sets) == 1:
        return sets[0]
    return combine(sets, any)


def union_all(sets) -> SimpleSet:
    """Union of many sets, merging pieces in one sweep."""
    pieces = []
    singles = []
    for s in sets:
        pieces.extend(Piece(lo, hi) for lo, hi in s.intervals)
        singles.extend(s.singletons)
    return normalize(pieces, singles)


def intersection(*sets) -> SimpleSet:
    return combine(sets, all)


def complement(s: SimpleSet) -> SimpleSet:
    """Complement within [0, inf)."""
    return combine([s], lambda v: not v[0])


def threshold(s: SimpleSet) -> int:
    """Least t >= 0 such that [t, inf) is inside s or disjoint from it."""
    if s.is_empty():
        return 0
    if not s.bounded():
        lo = s.intervals[-1][0]
        if lo.denominator == 1 and member(s, lo):
            return int(lo)
        return floor(lo) + 1
    top = max(s.points())
    if top.denominator == 1 and not member(s, top):
        return int(top)
    return floor(top) + 1


def slice_set(s: SimpleSet, i: int) -> SimpleSet:
    """{x in [0,1] : x + i in s}."""
    window = intersection(s, UNIT.affine(1, i))
    return window.affine(1, -i)


def subset_of_unit(s: SimpleSet) -> bool:
    return s.bounded() and (not s.points() or s.points()[-1] <= 1)


_PIECE = re.compile(r"^([\(\[])\s*([^,]+?)\s*,\s*([^\]\)]+?)\s*([\)\]])$")


def parse_set(text: str) -> SimpleSet:
    """Parse e.g. "(1/3,2] U (8/3,3] U (11/3,inf)" or "[1/4,1/3) U {11/24, 2/3}"."""
    text = text.strip()
    if text in ("", "∅", "{}", "empty"):
        return EMPTY
    pieces, points = [], []
    for part in re.split(r"\s*(?:\bU\b|∪)\s*", text):
        part = part.strip()
        if not part:
            raise AutomatonError(f"empty piece in {text!r}")
        if part.startswith("{") and part.endswith("}"):
            body = part[1:-1].strip()
            if body:
                points.extend(parse_rational(x) for x in body.split(","))
            continue
        m = _PIECE.match(part)
        if not m:
            raise AutomatonError(f"cannot parse set piece {part!r}")
        lb, lo, hi, rb = m.groups()
        hi_val = None if hi.lower() in ("inf", "∞", "+inf") else parse_rational(hi)
        if hi_val is None and rb == "]":
            rb = ")"
        pieces.append(Piece(parse_rational(lo), hi_val, lb == "[", rb == "]"))
    return normalize(pieces, points)


def format_set(s: SimpleSet) -> str:
    """Readable form that folds closed endpoints back into brackets."""
    if s.is_empty():
        return "∅"
    singles = set(s.singletons)
    used = set()
    out = []
    for lo, hi in s.intervals:
        lc = lo in singles
        hc = hi is not None and hi in singles
        if lc:
            used.add(lo)
        if hc:
            used.add(hi)
        out.append((lo, ("[" if lc else "(") + format_rational(lo) + "," +
                    ("inf" if hi is None else format_rational(hi)) + ("]" if hc else ")")))
    for p in s.singletons:
        if p not in used:
            out.append((p, "{" + format_rational(p) + "}"))
    out.sort(key=lambda t: t[0])
    return " U ".join(t[1] for t in out)
