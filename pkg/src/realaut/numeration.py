"""Exact base-b encodings of rationals as ultimately periodic words."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .automaton import STAR, AutomatonError, UPWord, format_word

LOW = "low"
HIGH = "high"
UNIQUE = "unique"


def parse_rational(text) -> Fraction:
    """Accept "p/q", "p", or anything Fraction understands (ints, Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise AutomatonError(f"not a rational number: {text!r}") from None


def format_rational(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def natural_value(digits, b: int) -> int:
    v = 0
    for d in digits:
        v = v * b + d
    return v


def natural_digits(m: int, b: int) -> tuple:
    """Digits of m >= 0 without leading zeros; () for 0."""
    out = []
    while m:
        m, d = divmod(m, b)
        out.append(d)
    return tuple(reversed(out))


def fraction_value(prefix, period, b: int) -> Fraction:
    """Value of prefix . period^omega read as a fractional part in [0,1]."""
    p = natural_value(prefix, b)
    c = natural_value(period, b)
    k = len(prefix)
    return Fraction(p, b ** k) + Fraction(c, (b ** len(period) - 1) * b ** k)


def up_word_value(w: UPWord, b: int) -> Fraction:
    if STAR in w.period:
        raise AutomatonError("the radix mark may not occur in the period")
    stars = [i for i, a in enumerate(w.prefix) if a == STAR]
    if len(stars) > 1:
        raise AutomatonError("a word encodes a real only with at most one radix mark")
    if stars:
        i = stars[0]
        return natural_value(w.prefix[:i], b) + fraction_value(w.prefix[i + 1:], w.period, b)
    return fraction_value(w.prefix, w.period, b)


@dataclass(frozen=True)
class RationalEncoding:
    u: tuple
    v: tuple
    variant: str

    @property
    def word(self) -> UPWord:
        return UPWord(self.u, self.v)

    def __str__(self):
        return f"{format_word(self.u)}({format_word(self.v)})"


def is_b_adic(r: Fraction, b: int) -> bool:
    q = Fraction(r).denominator
    while q > 1:
        g = gcd(q, b)
        if g == 1:
            return False
        q //= g
    return True


def _expand(r: Fraction, b: int) -> tuple:
    """Minimal (prefix, period) with r = value(prefix . period^omega), r in [0,1).

    Long division; the first repeated remainder closes the period.
    """
    num, den = r.numerator, r.denominator
    seen = {}
    digits = []
    rem = num
    while rem not in seen:
        seen[rem] = len(digits)
        d, rem = divmod(rem * b, den)
        digits.append(d)
    start = seen[rem]
    return tuple(digits[:start]), tuple(digits[start:])


def _shrink(prefix: tuple, period: tuple) -> tuple:
    """Shortest prefix and primitive period describing the same omega-word."""
    n = len(period)
    for k in range(1, n + 1):
        if n % k == 0 and period[:k] * (n // k) == period:
            period = period[:k]
            break
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return prefix, period


def fractional_encodings(r, b: int) -> list:
    """All encodings of r in [0,1] as star-free words.

    0 has only 0^omega and 1 only (b-1)^omega; other b-adic rationals have
    a high form ending in 0^omega and a low form ending in (b-1)^omega.
    """
    r = parse_rational(r)
    if r < 0 or r > 1:
        raise AutomatonError(f"{r} is outside [0,1]")
    if r == 0:
        return [RationalEncoding((), (0,), UNIQUE)]
    if r == 1:
        return [RationalEncoding((), (b - 1,), UNIQUE)]
    prefix, period = _shrink(*_expand(r, b))
    if period != (0,):
        return [RationalEncoding(prefix, period, UNIQUE)]
    low = prefix[:-1] + (prefix[-1] - 1,)
    return [RationalEncoding(prefix, (0,), HIGH), RationalEncoding(low, (b - 1,), LOW)]


def real_encodings(r, b: int) -> list:
    """All encodings of r >= 0 with one radix mark and no leading zeros.

    The natural part of a value below 1 is written as the single digit 0.
    """
    r = parse_rational(r)
    if r < 0:
        raise AutomatonError(f"{r} is negative")
    m = r.numerator // r.denominator
    f = r - m

    def nat(k):
        return natural_digits(k, b) or (0,)

    if f != 0:
        return [RationalEncoding(nat(m) + (STAR,) + e.u, e.v, e.variant) for e in fractional_encodings(f, b)]
    if m == 0:
        return [RationalEncoding((0, STAR), (0,), UNIQUE)]
    return [RationalEncoding(nat(m) + (STAR,), (0,), HIGH),
            RationalEncoding(nat(m - 1) + (STAR,), (b - 1,), LOW)]


def all_real_encodings(r, b: int, max_zeros: int) -> list:
    """Encodings of r including every natural part padded with up to max_zeros leading zeros.

    The natural part may also be empty.  Used to evaluate set semantics of
    automata that are not closed under leading zeros.
    """
    out = []
    for e in real_encodings(r, b):
        i = e.u.index(STAR)
        natural = e.u[:i]
        while natural and natural[0] == 0:
            natural = natural[1:]
        rest = e.u[i:]
        for k in range(max_zeros + 1):
            out.append(UPWord((0,) * k + natural + rest, e.v))
    return out
