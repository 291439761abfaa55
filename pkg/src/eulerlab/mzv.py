"""Multiple zeta values, alternating Euler sums and the block identities.

``zeta(s1, ..., sN) = sum_{n1 > ... > nN > 0} prod n_j^-s_j``; an alternating
slot multiplies its factor by (-1)^n_j.

Evaluation strategy by depth:

* depth 1 -- closed form (zeta(s) or -eta(s));
* depth 2 -- outer sum over n1 with the inner partial sum in closed form
  (Hurwitz/digamma), Euler-Maclaurin tail;
* depth 3 -- outer sum over the middle variable with *both* the inner prefix
  and the outer tail in closed form, so a single smooth sum at full precision;
* depth 4 -- double-precision cumulative arrays to N = 10^6 with a tail
  correction taken from the depth-2 value; reduced precision, flagged
  ``direct``.

An alternating summand is not smooth in n, but splitting by parity is:
``sum_n F(n) = sum_j F(2j, even) + F(2j - 1, odd)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DepthUnsupported, DivergentIndex, DomainError
from .numerics import PrecisionContext, SeriesValue, closed, gauss_2f1_unit, hurwitz_raw, to_number
from .parametric import SidePair
from .series import TermSource, sum_alternating, sum_em, taylor_coefficients

__all__ = [
    "MZVIndex",
    "mzv_eval",
    "block_closed_form",
    "sin_product_sides",
    "ZagierRecord",
    "zagier_gf_sides",
    "cube_gamma_coefficients",
    "cube_gamma_product_coefficients",
    "cube_gamma_taylor",
    "cube_gamma_sides",
    "open_conj_sides",
    "Depth4Record",
    "depth4_check",
    "DEPTH4_N",
]

DEPTH4_N = 1_000_000


@dataclass(frozen=True)
class MZVIndex:
    """Ordered slots (exponent, sign); the first slot carries the largest variable."""

    slots: tuple = ()

    def __post_init__(self):
        slots = tuple((int(s), int(e)) for s, e in self.slots)
        for s, e in slots:
            if s < 1 or e not in (1, -1):
                raise DomainError(f"bad slot ({s}, {e})")
        object.__setattr__(self, "slots", slots)

    @classmethod
    def of(cls, *exponents, alternating: Sequence[int] = ()):
        """``MZVIndex.of(2, 1, alternating=[0])`` is zeta(2~, 1)."""
        return cls(tuple((s, -1 if i in alternating else 1) for i, s in enumerate(exponents)))

    @classmethod
    def parse(cls, text: str) -> "MZVIndex":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        slots = []
        for part in text.split(","):
            m = re.fullmatch(r"\s*(\d+)\s*(~?)\s*", part)
            if not m:
                raise DomainError(f"cannot parse index slot {part!r}")
            slots.append((int(m.group(1)), -1 if m.group(2) else 1))
        return cls(tuple(slots))

    @property
    def weight(self) -> int:
        return sum(s for s, _ in self.slots)

    @property
    def depth(self) -> int:
        return len(self.slots)

    @property
    def alternating(self) -> bool:
        return any(e == -1 for _, e in self.slots)

    @property
    def convergent(self) -> bool:
        return not self.slots or self.slots[0] != (1, 1)

    def __str__(self):
        return ",".join(f"{s}{'~' if e < 0 else ''}" for s, e in self.slots)


# -- closed-form pieces of one slot, analytic in t, for a given parity of t -------

def _eta_sum(s, mp):
    """sum_{k>=1} (-1)^k k^-s."""
    if s == 1:
        return -mp.log(2)
    return -(1 - mp.mpf(2) ** (1 - s)) * mp.zeta(s)


def _alt_hurwitz(s, a, mp):
    """E(s, a) = sum_{j>=0} (-1)^j (a + j)^-s."""
    if s == 1:
        return (mp.psi(0, (a + 1) / 2) - mp.psi(0, a / 2)) / 2
    return (hurwitz_raw(s, a / 2, mp) - hurwitz_raw(s, (a + 1) / 2, mp)) / mp.mpf(2) ** s


def _weight(slot, t, p, mp):
    s, e = slot
    return (-1) ** p * t ** (-s) if e < 0 else t ** (-s)


def _prefix(slot, t, p, mp):
    """sum_{k < t} sign(k) k^-s with (-1)^t = (-1)^p."""
    s, e = slot
    if e < 0:
        return _eta_sum(s, mp) - (-1) ** p * _alt_hurwitz(s, t, mp)
    if s == 1:
        return mp.psi(0, t) + mp.euler
    return mp.zeta(s) - hurwitz_raw(s, t, mp)


def _tail(slot, t, p, mp):
    """sum_{k > t} sign(k) k^-s with (-1)^t = (-1)^p."""
    s, e = slot
    if e < 0:
        return -(-1) ** p * _alt_hurwitz(s, t + 1, mp)
    return hurwitz_raw(s, t + 1, mp)


def _sum_by_parity(F, alternating: bool, ctx: PrecisionContext) -> SeriesValue:
    if alternating:
        g = lambda j, _: F(2 * j, 0) + F(2 * j - 1, 1)
    else:
        g = lambda t, _: F(t, 0)
    return sum_em(TermSource(smooth=g), ctx)


# -- evaluation ------------------------------------------------------------------

def mzv_eval(idx, ctx: PrecisionContext) -> SeriesValue:
    """Numerical value of an (alternating) multiple zeta value, depth <= 4."""
    if isinstance(idx, str):
        idx = MZVIndex.parse(idx)
    mp = ctx.mp
    if not idx.convergent:
        raise DivergentIndex(f"zeta({idx}) diverges: leading slot is 1 without sign")
    if idx.depth > 4:
        raise DepthUnsupported(f"depth {idx.depth} > 4")
    sl = idx.slots
    if idx.depth == 0:
        return closed(mp.one, ctx)
    if idx.depth == 1:
        s, e = sl[0]
        return closed(_eta_sum(s, mp) if e < 0 else mp.zeta(s), ctx)
    if idx.depth == 2:
        F = lambda t, p: _weight(sl[0], t, p, mp) * _prefix(sl[1], t, p, mp)
        return _sum_by_parity(F, idx.alternating, ctx)
    if idx.depth == 3:
        F = lambda t, p: _weight(sl[1], t, p, mp) * _prefix(sl[2], t, p, mp) * _tail(sl[0], t, p, mp)
        return _sum_by_parity(F, idx.alternating, ctx)
    return _depth4(idx, ctx)


def _slot_array(slot, N):
    s, e = slot
    k = np.arange(1, N + 1, dtype=float)
    a = k ** (-float(s))
    if e < 0:
        a[0::2] *= -1  # k odd -> (-1)^k = -1
    return a


def _slot_tail_after(slot, N, mp) -> float:
    """sum_{k > N} sign(k) k^-s, evaluated in mpmath."""
    s, e = slot
    if e < 0:
        return float(-(-1) ** (N % 2) * _alt_hurwitz(s, mp.mpf(N + 1), mp))
    return float(hurwitz_raw(s, mp.mpf(N + 1), mp))


def _depth4(idx: MZVIndex, ctx: PrecisionContext, N: int = DEPTH4_N) -> SeriesValue:
    mp = ctx.mp
    s1, s2, s3, s4 = idx.slots
    a1, a2, a3, a4 = (_slot_array(s, N) for s in (s1, s2, s3, s4))
    # U1[n-1] = sum_{k > n} a1(k)
    rev = np.cumsum(a1[::-1])[::-1]
    U1 = np.concatenate([rev[1:], [0.0]]) + _slot_tail_after(s1, N, mp)
    g = a2 * U1
    B4 = np.concatenate([[0.0], np.cumsum(a4)[:-1]])
    h = a3 * B4
    C = np.concatenate([[0.0], np.cumsum(h)])  # C[n-1] = sum_{k<n} h(k); C[N] = C(N+1)
    gc = np.cumsum(g * C[:N])
    G = np.cumsum(g)
    Z12 = mzv_eval(MZVIndex((s1, s2)), ctx.with_digits(20))
    z12 = float(Z12.value)

    def S(M):
        return gc[M - 1] + C[M] * (z12 - G[M - 1])

    full, half = S(N), S(N // 2)
    rounding = 64 * np.finfo(float).eps * (float(np.sum(np.abs(g * C[:N]))) + abs(z12) + 1) * math.log2(N)
    bound = 2 * abs(full - half) + rounding + float(Z12.error_bound)
    return SeriesValue(mp.mpf(full), mp.mpf(bound), N, "direct")


# -- blocks and generating functions ----------------------------------------------

def block_closed_form(kind: str, n: int, ctx: PrecisionContext) -> SeriesValue:
    """zeta({2}_n) = pi^2n/(2n+1)!  and  zeta({3,1}_n) = 2 pi^4n/(4n+2)!."""
    mp = ctx.mp
    if n < 0:
        raise DomainError("n must be nonnegative")
    if kind == "two_block":
        return closed(mp.pi ** (2 * n) / mp.factorial(2 * n + 1), ctx)
    if kind == "three_one_block":
        return closed(2 * mp.pi ** (4 * n) / mp.factorial(4 * n + 2), ctx)
    raise DomainError(f"unknown block kind {kind!r}")


def _check_disc(x, mp):
    if abs(x) >= 1:
        raise DomainError("generating-function series are truncated on |x| < 1")


def _truncated_series(coef, power: int, x, ctx: PrecisionContext, sign: int = 1) -> SeriesValue:
    """sum_n sign^n coef(n) x^(power n) until the terms drop below the working epsilon."""
    mp = ctx.mp
    tol = mp.mpf(10) ** (-ctx.working_dps)
    total = mp.zero
    n = 0
    while True:
        term = sign ** n * coef(n) * x ** (power * n)
        total += term
        n += 1
        nxt = abs(coef(n) * x ** (power * n))
        if nxt < tol * (abs(total) + 1):
            break
    # coefficients decay at least geometrically with ratio <= 1/2 past this point
    return SeriesValue(total, 2 * nxt + ctx.closed_bound(total), n, "closed_form")


def sin_product_sides(x, ctx: PrecisionContext) -> SidePair:
    """sin(pi x)/(pi x)  versus  sum (-1)^n zeta({2}_n) x^2n."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _check_disc(x, mp)
    lhs = closed(mp.one if x == 0 else mp.sin(mp.pi * x) / (mp.pi * x), ctx)
    rhs = _truncated_series(lambda n: block_closed_form("two_block", n, ctx).value, 2, x, ctx, sign=-1)
    return SidePair(lhs, rhs)


@dataclass(frozen=True)
class ZagierRecord:
    series: SeriesValue
    closed_form: SeriesValue
    hypergeometric: SeriesValue

    @property
    def residuals(self):
        a, b, c = self.series.value, self.closed_form.value, self.hypergeometric.value
        return {"series-closed": abs(a - b), "closed-2f1": abs(b - c), "series-2f1": abs(a - c)}

    @property
    def bounds(self):
        a, b, c = self.series.error_bound, self.closed_form.error_bound, self.hypergeometric.error_bound
        return {"series-closed": a + b, "closed-2f1": b + c, "series-2f1": a + c}


def zagier_gf_sides(x, ctx: PrecisionContext) -> ZagierRecord:
    """sum zeta({3,1}_n) x^4n, (cosh pi x - cos pi x)/(pi x)^2 and the 2F1 product."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _check_disc(x, mp)
    series = _truncated_series(lambda n: block_closed_form("three_one_block", n, ctx).value, 4, x, ctx)
    if x == 0:
        cf = closed(mp.one, ctx)
        hyp = closed(mp.one, ctx)
    else:
        cf = closed((mp.cosh(mp.pi * x) - mp.cos(mp.pi * x)) / (mp.pi * x) ** 2, ctx)
        t = (1 + mp.mpc(0, 1)) * x / 2
        it = mp.mpc(0, 1) * t
        hyp = gauss_2f1_unit(t, -t, 1, ctx) * gauss_2f1_unit(it, -it, 1, ctx)
        if mp.im(x) == 0:
            hyp = replace(hyp, value=mp.re(hyp.value), error_bound=hyp.error_bound + abs(mp.im(hyp.value)))
    return ZagierRecord(series, cf, hyp)


def cube_gamma_coefficients(nmax: int, ctx: PrecisionContext) -> list:
    """zeta({3}_n), n = 0..nmax, from Newton's identities with power sums zeta(3i)."""
    mp = ctx.mp
    p = [None] + [mp.zeta(3 * i) for i in range(1, nmax + 1)]
    e = [mp.one]
    for n in range(1, nmax + 1):
        e.append(mp.fsum((-1) ** (i - 1) * e[n - i] * p[i] for i in range(1, n + 1)) / n)
    return e


def cube_gamma_product_coefficients(nmax: int, K: int, ctx: PrecisionContext) -> list:
    """Coefficients of x^3n in prod_{k <= K} (1 + x^3/k^3) (truncation error ~ 1/K^2)."""
    mp = ctx.mp
    c = [mp.one] + [mp.zero] * nmax
    for k in range(1, K + 1):
        w = mp.one / mp.mpf(k) ** 3
        for n in range(nmax, 0, -1):
            c[n] += w * c[n - 1]
    return c


def _inv_gamma_triple(x, mp):
    w = mp.expjpi(mp.mpf(2) / 3)
    return mp.rgamma(1 + x) * mp.rgamma(1 + w * x) * mp.rgamma(1 + w * w * x)


def cube_gamma_taylor(order: int, ctx: PrecisionContext, radius="1/2") -> list:
    """Taylor coefficients of 1/(Gamma(1+x)Gamma(1+wx)Gamma(1+w^2 x)) by a contour integral."""
    mp = ctx.mp
    c = taylor_coefficients(lambda z: _inv_gamma_triple(z, mp), mp.zero, order, to_number(radius, ctx), mp)
    return [mp.re(v) if abs(mp.im(v)) < mp.mpf(10) ** (-ctx.working_dps + 5) else v for v in c]


def cube_gamma_sides(x, ctx: PrecisionContext) -> SidePair:
    """sum zeta({3}_n) x^3n  versus  1/(Gamma(1+x)Gamma(1+wx)Gamma(1+w^2 x))."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _check_disc(x, mp)
    coefs = cube_gamma_coefficients(40, ctx)
    lhs = _truncated_series(lambda n: coefs[n] if n < len(coefs) else mp.zero, 3, x, ctx)
    rhs_val = _inv_gamma_triple(x, mp)
    if mp.im(x) == 0:
        rhs_val = mp.re(rhs_val)
    return SidePair(lhs, closed(rhs_val, ctx))


# -- the open alternating conjecture at desk scale ------------------------------------

def open_conj_sides(n: int, ctx: PrecisionContext) -> SidePair:
    """zeta({2,1}_n)  versus  2^3n zeta({2~,1}_n) for n in {1, 2}."""
    mp = ctx.mp
    if n == 1:
        lhs = mzv_eval(MZVIndex.of(2, 1), ctx)
        alt = sum_alternating(
            TermSource(term=lambda k, _: (-1) ** k * (mp.psi(0, k) + mp.euler) / mp.mpf(k) ** 2,
                       alternating=True),
            ctx)
        return SidePair(lhs, alt * 8)
    if n == 2:
        lhs = mzv_eval(MZVIndex.of(2, 1, 2, 1), ctx)
        rhs = mzv_eval(MZVIndex.of(2, 1, 2, 1, alternating=[0, 2]), ctx) * 64
        return SidePair(lhs, rhs)
    raise DepthUnsupported("only n = 1, 2 are evaluated at desk scale")


@dataclass(frozen=True)
class Depth4Record:
    plain: SeriesValue
    alternating64: SeriesValue
    zeta33: SeriesValue

    @property
    def residuals(self):
        a, b, c = self.plain.value, self.alternating64.value, self.zeta33.value
        return {"plain-alt": abs(a - b), "plain-z33": abs(a - c), "alt-z33": abs(b - c)}

    @property
    def bounds(self):
        a, b, c = self.plain.error_bound, self.alternating64.error_bound, self.zeta33.error_bound
        return {"plain-alt": a + b, "plain-z33": a + c, "alt-z33": b + c}


def depth4_check(ctx: PrecisionContext) -> Depth4Record:
    pair = open_conj_sides(2, ctx)
    return Depth4Record(pair.lhs, pair.rhs, mzv_eval(MZVIndex.of(3, 3), ctx))
