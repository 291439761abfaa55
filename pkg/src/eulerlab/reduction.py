"""Exact reduction of double Euler sums to polynomials in single zeta values.

Expressions are rational linear combinations of monomials ``z(k1)*z(k2)*...``
kept in a canonical form: factors sorted, like terms merged, zero
coefficients dropped.  zeta(1) is replaced by 0 when an expression is built.

Text grammar (used by :func:`render` and :func:`parse`)::

    expr     := "0" | term (("+" | "-") term)*
    term     := ["-"] (coef | [coef "*"] monomial)
    monomial := factor ("*" factor)*
    factor   := "z(" int ")" ["^" int]
    coef     := int ["/" int]

e.g. ``9/2*z(5) - 2*z(2)*z(3)``.  Terms are ordered by degree, then by the
sorted factor tuple.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import DomainError, ParityError
from .mzv import MZVIndex
from .numerics import PrecisionContext, SeriesValue, closed

__all__ = [
    "ZetaExpression",
    "zeta",
    "reduce_s1",
    "reduce_even_odd",
    "reduce_swap",
    "reflect",
    "sum_formula_compositions",
    "expr_eval",
    "render",
    "parse",
]


@dataclass(frozen=True)
class ZetaExpression:
    """Canonical sum of ``coefficient * prod zeta(k)``; ``terms`` maps factor tuples to Fractions."""

    terms: tuple = ()

    @classmethod
    def build(cls, pairs) -> "ZetaExpression":
        acc: dict = {}
        for factors, coef in pairs:
            factors = tuple(sorted(int(k) for k in factors))
            if any(k < 1 for k in factors):
                raise DomainError(f"zeta argument must be positive: {factors}")
            if 1 in factors:
                continue  # zeta(1) = 0 convention
            acc[factors] = acc.get(factors, Fraction(0)) + Fraction(coef)
        items = [(f, c) for f, c in acc.items() if c != 0]
        items.sort(key=lambda fc: (len(fc[0]), fc[0]))
        return cls(tuple(items))

    def canonical(self) -> "ZetaExpression":
        return ZetaExpression.build(self.terms)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other):
        return ZetaExpression.build(self.terms + _coerce(other).terms)

    def __neg__(self):
        return ZetaExpression.build((f, -c) for f, c in self.terms)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ZetaExpression.build((f, c * other) for f, c in self.terms)
        other = _coerce(other)
        return ZetaExpression.build((f + g, c * d) for f, c in self.terms for g, d in other.terms)

    __rmul__ = __mul__

    def __str__(self):
        return render(self)


def _coerce(x) -> ZetaExpression:
    if isinstance(x, ZetaExpression):
        return x
    if isinstance(x, (int, Fraction)):
        return ZetaExpression.build([((), x)])
    raise TypeError(f"cannot combine ZetaExpression with {type(x).__name__}")


def zeta(*args: int, coef=1) -> ZetaExpression:
    """Monomial coef * zeta(args[0]) * zeta(args[1]) * ..."""
    return ZetaExpression.build([(args, coef)])


# -- reductions ---------------------------------------------------------------------

def reduce_s1(s: int) -> ZetaExpression:
    """zeta(s, 1) = (s/2) zeta(s+1) - 1/2 sum_{k=1}^{s-2} zeta(k+1) zeta(s-k)."""
    if s < 2:
        raise DomainError("zeta(s, 1) needs s >= 2")
    pairs = [((s + 1,), Fraction(s, 2))]
    pairs += [((k + 1, s - k), Fraction(-1, 2)) for k in range(1, s - 1)]
    return ZetaExpression.build(pairs)


def _check_even_odd(a: int, b: int):
    if a <= 0 or a % 2:
        raise ParityError(f"a = {a} must be a positive even integer")
    if b <= 0 or b % 2 == 0:
        raise ParityError(f"b = {b} must be a positive odd integer")


def _odd_sum(a: int, b: int, sign: int):
    N = (a + b - 1) // 2
    return [((2 * r + 1, a + b - 1 - 2 * r), sign * (comb(2 * r, a - 1) + comb(2 * r, b - 1)))
            for r in range(1, N)]


def reduce_even_odd(a: int, b: int) -> ZetaExpression:
    """zeta(a, b) for even a > 0 and odd b (b = 1 read with zeta(1) = 0)."""
    _check_even_odd(a, b)
    pairs = [((a, b), 1), ((a + b,), Fraction(comb(a + b, a) - 1, 2))]
    return ZetaExpression.build(pairs + _odd_sum(a, b, -1))


def reduce_swap(b: int, a: int) -> ZetaExpression:
    """zeta(b, a) for odd b and even a > 0, by reflection of :func:`reduce_even_odd`."""
    _check_even_odd(a, b)
    pairs = [((a + b,), Fraction(-(1 + comb(a + b, a)), 2))]
    return ZetaExpression.build(pairs + _odd_sum(a, b, +1))


def reflect(s: int, t: int, *, formal: bool = False) -> ZetaExpression:
    """zeta(s, t) + zeta(t, s) = zeta(s) zeta(t) - zeta(s + t).

    ``formal=True`` admits an argument 1 (then read with zeta(1) = 0).
    """
    low = 1 if formal else 2
    if s < low or t < low:
        raise DomainError(f"reflection needs s, t >= {low}")
    return ZetaExpression.build([((s, t), 1), ((s + t,), -1)])


def sum_formula_compositions(r: int, s: int) -> list:
    """Indices (a1+2, a2+1, ..., ar+1) over compositions a1+...+ar = s, ai >= 0."""
    if r < 1 or s < 0:
        raise DomainError("need r >= 1 and s >= 0")
    out = []
    # stars and bars: choose r-1 bar positions among s + r - 1 slots
    for bars in itertools.combinations(range(s + r - 1), r - 1):
        cuts = (-1,) + bars + (s + r - 1,)
        parts = [cuts[i + 1] - cuts[i] - 1 for i in range(r)]
        out.append(MZVIndex.of(parts[0] + 2, *[p + 1 for p in parts[1:]]))
    return out


# -- numerics and text ----------------------------------------------------------------

def expr_eval(e: ZetaExpression, ctx: PrecisionContext) -> SeriesValue:
    mp = ctx.mp
    cache: dict = {}

    def z(k):
        if k not in cache:
            cache[k] = mp.zeta(k)
        return cache[k]

    total = mp.zero
    scale = mp.zero
    for factors, c in e.terms:
        v = mp.mpf(c.numerator) / c.denominator
        for k in factors:
            v *= z(k)
        total += v
        scale += abs(v)
    out = closed(total, ctx)
    return SeriesValue(out.value, out.error_bound + ctx.closed_bound(scale), 0, "closed_form")


def _fmt_coef(c: Fraction) -> str:
    return f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(e: ZetaExpression) -> str:
    if not e.terms:
        return "0"
    out = []
    for i, (factors, c) in enumerate(e.terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "*".join(
            f"z({k})" + (f"^{n}" if n > 1 else "")
            for k, n in ((k, len(list(g))) for k, g in itertools.groupby(factors)))
        if not mono:
            body = _fmt_coef(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coef(mag)}*{mono}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"z\((\d+)\)(?:\^(\d+))?$")


def parse(text: str) -> ZetaExpression:
    text = text.strip()
    if text == "0":
        return ZetaExpression()
    pairs = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or not m.group(2).strip():
            raise DomainError(f"cannot parse expression at {text[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(1)
        factors: list = []
        for piece in m.group(2).strip().split("*"):
            piece = piece.strip()
            f = _FACTOR.match(piece)
            if f:
                factors += [int(f.group(1))] * int(f.group(2) or 1)
            elif re.fullmatch(r"\d+(/\d+)?", piece):
                coef *= Fraction(piece)
            else:
                raise DomainError(f"cannot parse factor {piece!r}")
        pairs.append((factors, sign * coef))
    return ZetaExpression.build(pairs)
