"""Both sides of the parametric Euler-sum identities.

Each ``*_sides`` function returns a :class:`SidePair` (or a small record of
several values) so that a caller can compare the members.  Inner partial
sums are replaced by digamma closed forms:

=======================================  ===========================================
inner sum                                closed form
=======================================  ===========================================
sum_{m<n} 1/(m - x)                      psi(n - x) - psi(1 - x)
sum_{m<n} 1/m                            psi(n) + euler_gamma
sum_{m<n} m/(m^2 - y^2)                  (psi(n-y) + psi(n+y) - psi(1-y) - psi(1+y))/2
sum_{m<n} 2m/(m^2 + y^2)                 psi(n-iy) + psi(n+iy) - psi(1-iy) - psi(1+iy)
sum_{m<n} m^-b  (b >= 2)                 zeta(b) - H(b, n)
=======================================  ===========================================

and the outer sums go through :func:`~eulerlab.series.sum_em`.  The double
sums in the logarithmic identity and the arctangent triple have no such
closed form; they are computed in double precision by direct summation with
log-power extrapolation of the partial sums and are flagged ``direct``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (BranchWarning, DepthUnsupported, DomainError, PoleError, PrecisionLossError,
                     RemovableSingularity)
from .numerics import (PrecisionContext, SeriesValue, closed, hurwitz_raw, pi_x_cot,
                       pi_x_coth, to_number)
from .series import TermSource, extrapolate_partial_sums, sum_alternating, sum_em

__all__ = [
    "SidePair",
    "SSuite",
    "TangentSums",
    "ArctanTriple",
    "SigmaRecord",
    "CoefficientCheck",
    "eu_dual_sides",
    "z_gen",
    "zetas1_gf_sides",
    "s_suite",
    "sum_formula_sides",
    "log_identity_sides",
    "arctan_triple",
    "tangent_sums",
    "gf2_sides",
    "sigma_closed",
    "thm2_sides",
    "gf2_3_sides",
    "fixed_b_gf_sides",
    "cot_expansion_sides",
    "eu_dual_coefficients",
]


@dataclass(frozen=True)
class SidePair:
    lhs: SeriesValue
    rhs: SeriesValue
    residual: object = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residual", abs(self.lhs.value - self.rhs.value))

    @property
    def bound(self):
        return self.lhs.error_bound + self.rhs.error_bound


# -- parameter guards -------------------------------------------------------

def _dist_to_positive_integer(z, mp):
    k = max(1, int(mp.nint(mp.re(z))))
    return abs(z - k), k


def _guard_positive_integer(z, ctx: PrecisionContext, what: str):
    """Poles at z in {1, 2, 3, ...}."""
    mp = ctx.mp
    d, k = _dist_to_positive_integer(z, mp)
    if d == 0:
        raise PoleError(f"{what}: pole at {k}")
    if d < mp.mpf(10) ** (-(ctx.digits / 2)):
        raise PrecisionLossError(f"{what}: parameter within {mp.nstr(d, 3)} of pole {k}")


def _dist_to_nonzero_integer(z, mp):
    k = int(mp.nint(mp.re(z)))
    if k == 0:
        k = 1 if mp.re(z) >= 0 else -1
    return abs(z - k)


def _removable_near(z, ctx: PrecisionContext) -> bool:
    mp = ctx.mp
    return _dist_to_nonzero_integer(z, mp) < mp.mpf(10) ** (-(ctx.digits / 3))


def _head(*params) -> int:
    return int(4 * max([abs(complex(p)) for p in params] + [0])) + 10


def _em(fn: Callable, ctx: PrecisionContext, head: int = 0) -> SeriesValue:
    return sum_em(TermSource(smooth=fn, min_head=head), ctx)


def _limit_path(fn: Callable, x, ctx: PrecisionContext):
    """Value at a removable singularity of ``fn`` in its first argument.

    ``fn(x, ctx)`` is evaluated at x(1 +- eps) and x(1 +- 2 eps) with
    eps = 10^-(digits/3) and extra guard digits; the symmetric means are
    Richardson-extrapolated.  ``fn`` may return a SeriesValue or a tuple of them.
    """
    e = int(math.ceil(ctx.digits / 3))
    ctx2 = ctx.with_extra_guard(e + 5)
    mp2 = ctx2.mp
    x2 = to_number(x, ctx2)
    h = mp2.mpf(10) ** (-e) * (x2 if x2 != 0 else 1)

    def as_tuple(v):
        return v if isinstance(v, tuple) else (v,)

    p1, m1 = as_tuple(fn(x2 + h, ctx2)), as_tuple(fn(x2 - h, ctx2))
    p2, m2 = as_tuple(fn(x2 + 2 * h, ctx2)), as_tuple(fn(x2 - 2 * h, ctx2))
    out = []
    for a, b, c, d in zip(p1, m1, p2, m2):
        A1 = (a.value + b.value) / 2
        A2 = (c.value + d.value) / 2
        val = (4 * A1 - A2) / 3
        bound = (abs(A2 - A1) * abs(h) + (a.error_bound + b.error_bound) * mp2.mpf(4) / 3
                 + (c.error_bound + d.error_bound) / 3)
        val = to_number(val, ctx)
        out.append(SeriesValue(val, bound + ctx.closed_bound(val),
                               a.terms_used + b.terms_used + c.terms_used + d.terms_used,
                               max(a.method, c.method, key=("closed_form", "euler_maclaurin",
                                                            "alternating_accel", "direct").index)))
    return out[0] if len(out) == 1 else tuple(out)


# -- first-order family -------------------------------------------------------

def eu_dual_sides(x, ctx: PrecisionContext) -> SidePair:
    """sum 1/(n(n-x)) sum_{m<n} 1/(m-x)  versus  sum 1/(n^2 (n-x))."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _guard_positive_integer(x, ctx, "eu-dual")
    c = mp.psi(0, 1 - x)
    head = _head(x)
    lhs = _em(lambda t, _: (mp.psi(0, t - x) - c) / (t * (t - x)), ctx, head)
    rhs = _em(lambda t, _: 1 / (t * t * (t - x)), ctx, head)
    return SidePair(lhs, rhs)


def z_gen(x, ctx: PrecisionContext) -> SidePair:
    """sum x/(n(n-x))  versus  -psi(1-x) - gamma."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _guard_positive_integer(x, ctx, "z-gen")
    lhs = _em(lambda t, _: x / (t * (t - x)), ctx, _head(x))
    rhs = closed(-mp.psi(0, 1 - x) - mp.euler, ctx)
    return SidePair(lhs, rhs)


def _s_sums(x, ctx: PrecisionContext) -> dict:
    mp = ctx.mp
    head = _head(x)
    c = mp.psi(0, 1 - x)
    g = +mp.euler
    return {
        "S1": _em(lambda t, _: (mp.psi(0, t) + g) / (t * (t - x)), ctx, head),
        "S2": _em(lambda t, _: 1 / (t * (t - x) ** 2), ctx, head),
        "S3": _em(lambda t, _: 1 / (t * t * (t - x) ** 2), ctx, head),
        "S4": _em(lambda t, _: 1 / (t * (t - x)), ctx, head),
        "S5": _em(lambda t, _: 1 / (t * t * (t - x)), ctx, head),
        "S6": _em(lambda t, _: (mp.psi(0, t - x) - c) / (t * (t - x)), ctx, head),
    }


def zetas1_gf_sides(x, ctx: PrecisionContext) -> SidePair:
    """Generating-function form of Euler's reduction of zeta(s,1)."""
    x = to_number(x, ctx)
    _guard_positive_integer(x, ctx, "zetas1-gf")
    mp = ctx.mp
    head = _head(x)
    g = +mp.euler
    lhs = _em(lambda t, _: (mp.psi(0, t) + g) / (t * (t - x)), ctx, head)
    S2 = _em(lambda t, _: 1 / (t * (t - x) ** 2), ctx, head)
    S3 = _em(lambda t, _: 1 / (t * t * (t - x) ** 2), ctx, head)
    S4 = _em(lambda t, _: 1 / (t * (t - x)), ctx, head)
    rhs = S2 - (S3 + S4 * S4) * (x / 2)
    return SidePair(lhs, rhs)


@dataclass(frozen=True)
class SSuite:
    x: object
    sums: dict
    combination: SeriesValue

    @property
    def residual(self):
        return abs(self.combination.value)

    @property
    def bound(self):
        return self.combination.error_bound


def s_suite(x, ctx: PrecisionContext) -> SSuite:
    """S1..S6 and the defect of S1 - S2 + (S3 + S4^2) x/2 - (S6 - S5)."""
    x = to_number(x, ctx)
    _guard_positive_integer(x, ctx, "s-suite")
    S = _s_sums(x, ctx)
    comb = S["S1"] - S["S2"] + (S["S3"] + S["S4"] * S["S4"]) * (x / 2) - (S["S6"] - S["S5"])
    return SSuite(x, S, comb)


def sum_formula_sides(r: int, x, ctx: PrecisionContext) -> SidePair:
    """sum_{k1>...>kr} (1/k1) prod 1/(kj - x)  versus  sum 1/(n^r (n - x))."""
    if r < 1:
        raise DomainError("r must be a positive integer")
    if r > 3:
        raise DepthUnsupported("sum formula sides are provided for r <= 3")
    mp = ctx.mp
    x = to_number(x, ctx)
    _guard_positive_integer(x, ctx, "sum-formula")
    head = _head(x)
    c = mp.psi(0, 1 - x)
    if r == 1:
        # sum 1/(k(k-x)) = (psi(1) - psi(1-x))/x
        lhs = closed(mp.zeta(2) if x == 0 else (-mp.euler - c) / x, ctx)
    elif r == 2:
        lhs = _em(lambda t, _: (mp.psi(0, t - x) - c) / (t * (t - x)), ctx, head)
    else:
        lhs = _em(lambda t, _: (mp.psi(0, t - x) - c) * _tail_k_kx(t + 1, x, mp) / (t - x), ctx, head)
    rhs = _em(lambda t, _: 1 / (t ** r * (t - x)), ctx, head)
    return SidePair(lhs, rhs)


def _tail_k_kx(a, x, mp):
    """sum_{j>=0} 1/((a+j)(a+j-x)) = (psi(a) - psi(a-x))/x, psi'(a) at x = 0."""
    if x == 0:
        return mp.psi(1, a)
    bits = max(0, int(-mp.log(abs(x), 2))) + 8
    with mp.extraprec(bits):
        v = (mp.psi(0, a) - mp.psi(0, a - x)) / x
    return +v


# -- logarithmic identity and the arctangent sums --------------------------------

_EXTRAP_NS = [1024, 1448, 2048, 2896, 4096, 5793, 8192]


def _log_rhs_numeric(x: complex):
    """sum_n (1/n) sum_{m<n} log((1-x/m)/(1-x/n))/(n-m), double precision + extrapolation."""
    N = _EXTRAP_NS[-1]
    n = np.arange(1, N + 1, dtype=float)
    L = np.log1p(-x / n.astype(complex))
    recip = 1.0 / np.arange(1, N, dtype=float)
    conv = np.convolve(L.real, recip) + 1j * np.convolve(L.imag, recip)
    H = np.concatenate([[0.0], np.cumsum(1.0 / n[:-1])])  # H_{n-1}
    terms = np.zeros(N, dtype=complex)
    terms[1:] = (conv[: N - 1] - L[1:] * H[1:]) / n[1:]
    partial = np.cumsum(terms)
    return extrapolate_partial_sums(_EXTRAP_NS, [partial[k - 1] for k in _EXTRAP_NS])


def log_identity_sides(x, ctx: PrecisionContext) -> SidePair:
    """sum log(1 - x/n)/n^2  versus the double sum with log ratios (reduced precision)."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _guard_positive_integer(x, ctx, "log identity")
    if mp.re(x) >= 1:
        for k in range(1, int(mp.re(x)) + 2):
            if mp.re(1 - x / k) < 0:
                warnings.warn(f"log argument 1 - x/{k} has negative real part", BranchWarning)
                break
    lhs = _em(lambda t, _: mp.log(1 - x / t) / (t * t), ctx, _head(x))
    if x == 0:
        rhs = SeriesValue(mp.zero, mp.zero, 0, "direct")
    else:
        val, err = _log_rhs_numeric(complex(x))
        v = mp.mpc(val) if val.imag else mp.mpf(val.real)
        rhs = SeriesValue(v, mp.mpf(10 * err + 1e-13 * (1 + abs(val))), _EXTRAP_NS[-1], "direct")
    return SidePair(lhs, rhs)


@dataclass(frozen=True)
class ArctanTriple:
    double_sum: SeriesValue
    arctan_sum: SeriesValue
    zeta_series: SeriesValue

    @property
    def residuals(self):
        a, b, c = self.double_sum.value, self.arctan_sum.value, self.zeta_series.value
        return {"double-arctan": abs(a - b), "arctan-zeta": abs(b - c), "double-zeta": abs(a - c)}


def _arctan_double_numeric():
    N = _EXTRAP_NS[-1]
    terms = np.zeros(N)
    for n in range(2, N + 1):
        m = np.arange(1, n, dtype=float)
        terms[n - 1] = np.sum(np.arctan(m / (n * n - m * n + 1.0)) / m) / n
    partial = np.cumsum(terms)
    val, err = extrapolate_partial_sums(_EXTRAP_NS, [partial[k - 1] for k in _EXTRAP_NS])
    return val.real, err


def arctan_triple(ctx: PrecisionContext) -> ArctanTriple:
    """Double arctan sum, sum arctan(1/n)/n^2 and sum (-1)^n zeta(2n+3)/(2n+1)."""
    mp = ctx.mp
    val, err = _arctan_double_numeric()
    v1 = SeriesValue(mp.mpf(val), mp.mpf(10 * err + 1e-13), _EXTRAP_NS[-1], "direct")
    v2 = _em(lambda t, _: mp.atan(1 / t) / (t * t), ctx)
    v3 = sum_alternating(
        TermSource(term=lambda n, _: (-1) ** n * mp.zeta(2 * n + 3) / (2 * n + 1),
                   alternating=True, start=0),
        ctx)
    return ArctanTriple(v1, v2, v3)


# -- tangent sums (x = i) ------------------------------------------------------

@dataclass(frozen=True)
class TangentSums:
    pair1: SidePair
    pair2: SidePair
    double_sums: SeriesValue

    @property
    def double_residuals(self):
        """Re/Im of the double sums against the single sums of pair1/pair2."""
        d = self.double_sums.value
        return (abs(d.real - self.pair1.lhs.value), abs(d.imag - self.pair2.lhs.value))


def tangent_sums(ctx: PrecisionContext) -> TangentSums:
    mp = ctx.mp
    pair1 = SidePair(_em(lambda t, _: 1 / (t * (t * t + 1)), ctx),
                     closed(mp.euler + mp.re(mp.psi(0, mp.mpc(1, 1))), ctx))
    pair2 = SidePair(_em(lambda t, _: 1 / (t * t * (t * t + 1)), ctx),
                     closed(mp.pi ** 2 / 6 - (mp.pi * mp.coth(mp.pi) - 1) / 2, ctx))
    double = eu_dual_sides(mp.mpc(0, 1), ctx).lhs
    return TangentSums(pair1, pair2, double)


# -- two-variable generating function ------------------------------------------

def _guard_square_positive_integer(z, ctx: PrecisionContext, what: str):
    """Poles where z^2 is a positive integer."""
    mp = ctx.mp
    z2 = z * z
    if abs(mp.im(z2)) > mp.mpf(10) ** (-(ctx.digits / 2)):
        return
    _guard_positive_integer(mp.re(z2) if mp.re(z2) > 0.5 else z2, ctx, what)


def _gf2_lhs(x, y, ctx: PrecisionContext) -> SeriesValue:
    mp = ctx.mp
    c = mp.psi(0, 1 - y) + mp.psi(0, 1 + y)
    return _em(lambda t, _: y * (mp.psi(0, t - y) + mp.psi(0, t + y) - c) / (2 * (t * t - x * x)),
               ctx, _head(x, y))


def _gf2_terms(x, y, ctx: PrecisionContext):
    """The four right-hand terms of the two-variable generating function."""
    mp = ctx.mp
    head = _head(x, y)
    A = lambda t: (t + x) ** 2 - y * y
    B = lambda t: (t - x) ** 2 - y * y
    s1 = _em(lambda t, _: t * y * (4 * y * y - x * x) / ((t * t - y * y) * A(t) * B(t)), ctx, head)
    s2 = _em(lambda t, _: t * y / (A(t) * B(t)), ctx, head)
    s4 = _em(lambda t, _: t * y / ((t * t - y * y) * (t * t - x * x)), ctx, head)
    cx = pi_x_cot(x, mp) / 2
    return (s1 * cx, s2 * cx, s2 * pi_x_cot(y, mp), s4 * (-mp.one / 2))


def _gf2_removable(x, y, ctx) -> bool:
    return _removable_near(x + y, ctx) or _removable_near(x - y, ctx)


def gf2_sides(x, y, ctx: PrecisionContext, *, limit: bool = False) -> SidePair:
    """sum 1/(n^2-x^2) sum_{m<n} my/(m^2-y^2) versus its four-term closed sum."""
    x, y = to_number(x, ctx), to_number(y, ctx)
    _guard_square_positive_integer(x, ctx, "gf2 (x)")
    _guard_square_positive_integer(y, ctx, "gf2 (y)")
    lhs = _gf2_lhs(x, y, ctx)
    if _gf2_removable(x, y, ctx):
        if not limit:
            raise RemovableSingularity("x +- y is an integer; request the limit path")
        rhs = _limit_path(lambda xv, c2: _sum4(_gf2_terms(xv, to_number(y, c2), c2)), x, ctx)
    else:
        rhs = _sum4(_gf2_terms(x, y, ctx))
    return SidePair(lhs, rhs)


def _sum4(ts):
    return ts[0] + ts[1] + ts[2] + ts[3]


@dataclass(frozen=True)
class SigmaRecord:
    closed_forms: tuple
    series_terms: tuple

    @property
    def residuals(self):
        return tuple(abs(a.value - b.value) for a, b in zip(self.closed_forms, self.series_terms))

    @property
    def bounds(self):
        return tuple(a.error_bound + b.error_bound for a, b in zip(self.closed_forms, self.series_terms))


def _sigma_values(x, y, ctx: PrecisionContext):
    mp = ctx.mp
    psi = lambda z: mp.psi(0, z)
    P = lambda a: psi(1 + a) + psi(1 - a)
    D = psi(1 + x + y) - psi(1 + x - y) - psi(1 - x + y) + psi(1 - x - y)
    pc = mp.pi * mp.cot(mp.pi * x)
    s1 = pc * (D / 16 - y * (P(x + y) + P(x - y)) / (8 * x) + y * P(y) / (4 * x))
    s2 = -pc * D / 16
    s3 = -pi_x_cot(y, mp) * D / (8 * x)
    s4 = (1 - (psi(1 + x) - psi(1 - y) + psi(x) - psi(y) + pc) * y) / (4 * (y * y - x * x))
    return tuple(closed(v, ctx) for v in (s1, s2, s3, s4))


def sigma_closed(x, y, ctx: PrecisionContext, *, limit: bool = False) -> SigmaRecord:
    """Digamma/cot closed forms of the four right-hand terms, next to the series."""
    x, y = to_number(x, ctx), to_number(y, ctx)
    _guard_square_positive_integer(x, ctx, "sigma (x)")
    _guard_square_positive_integer(y, ctx, "sigma (y)")
    mp = ctx.mp
    if y == 0:
        # every term carries a factor y
        zero = SeriesValue(mp.zero, mp.zero, 0, "closed_form")
        return SigmaRecord((zero,) * 4, (zero,) * 4)
    small = mp.mpf(10) ** (-(ctx.digits / 3))
    removable = (abs(x) < small or abs(x - y) < small or abs(x + y) < small
                 or _gf2_removable(x, y, ctx))
    if not removable:
        return SigmaRecord(_sigma_values(x, y, ctx), _gf2_terms(x, y, ctx))
    if not limit:
        raise RemovableSingularity("closed forms are singular here; request the limit path")
    both = _limit_path(lambda xv, c2: _sigma_values(xv, to_number(y, c2), c2)
                       + _gf2_terms(xv, to_number(y, c2), c2), x, ctx)
    return SigmaRecord(both[:4], both[4:])


# -- coth form and its x = 2y specialisation -----------------------------------

def _guard_square_negative_integer(z, ctx: PrecisionContext, what: str):
    _guard_square_positive_integer(z * ctx.mp.mpc(0, 1), ctx, what)


def _thm2_lhs(x, y, ctx: PrecisionContext) -> SeriesValue:
    mp = ctx.mp
    iy = mp.mpc(0, 1) * y
    c = mp.psi(0, 1 - iy) + mp.psi(0, 1 + iy)
    v = _em(lambda t, _: (t / (t * t + y * y) + mp.psi(0, t - iy) + mp.psi(0, t + iy) - c)
            / (t * t + x * x), ctx, _head(x, y))
    return _realify(v, x, y, ctx)


def _realify(v: SeriesValue, x, y, ctx) -> SeriesValue:
    """Drop the rounding-level imaginary part when both parameters are real."""
    mp = ctx.mp
    if mp.im(x) == 0 and mp.im(y) == 0 and hasattr(v.value, "imag"):
        return SeriesValue(mp.re(v.value), v.error_bound + abs(mp.im(v.value)), v.terms_used, v.method)
    return v


def _thm2_rhs(x, y, ctx: PrecisionContext) -> SeriesValue:
    mp = ctx.mp
    head = _head(x, y)
    Q = lambda t: (t * t - x * x + y * y) ** 2 + (2 * t * x) ** 2
    sa = _em(lambda t, _: t / ((t * t + y * y) * Q(t)), ctx, head)
    sb = _em(lambda t, _: t / Q(t), ctx, head)
    cx = pi_x_coth(x, mp)
    return sa * ((x * x - 4 * y * y) * cx) + sb * (2 * pi_x_coth(y, mp) + cx)


def thm2_sides(x, y, ctx: PrecisionContext, *, limit: bool = False) -> SidePair:
    """The coth form of the two-variable generating function."""
    mp = ctx.mp
    x, y = to_number(x, ctx), to_number(y, ctx)
    _guard_square_negative_integer(x, ctx, "thm2 (x)")
    _guard_square_negative_integer(y, ctx, "thm2 (y)")
    lhs = _thm2_lhs(x, y, ctx)
    i = mp.mpc(0, 1)
    if _removable_near(i * (x + y), ctx) or _removable_near(i * (x - y), ctx):
        if not limit:
            raise RemovableSingularity("i(x +- y) is an integer; request the limit path")
        rhs = _limit_path(lambda xv, c2: _thm2_rhs(xv, to_number(y, c2), c2), x, ctx)
    else:
        rhs = _thm2_rhs(x, y, ctx)
    return SidePair(lhs, rhs)


def gf2_3_sides(y, ctx: PrecisionContext, *, limit: bool = False) -> SidePair:
    """The x = 2y specialisation: the identity with coth(pi y) + coth(2 pi y)."""
    mp = ctx.mp
    y = to_number(y, ctx)
    _guard_square_negative_integer(2 * y, ctx, "gf2-3")
    lhs = _thm2_lhs(2 * y, y, ctx)

    def rhs_at(yv, c2):
        m2 = c2.mp
        s = _em(lambda t, _: t / ((t * t + yv * yv) * (t * t + 9 * yv * yv)), c2, _head(3 * yv))
        # (coth(pi y) + coth(2 pi y)) * 2 pi y, written to stay finite at y = 0
        return s * (2 * pi_x_coth(yv, m2) + pi_x_coth(2 * yv, m2))

    if _removable_near(3 * y * mp.mpc(0, 1), ctx):
        if not limit:
            raise RemovableSingularity("3iy is an integer; request the limit path")
        rhs = _limit_path(rhs_at, y, ctx)
    else:
        rhs = rhs_at(y, ctx)
    return SidePair(lhs, _realify(rhs, y, y, ctx))


# -- fixed odd b generating function and the cot expansion ------------------------

def fixed_b_gf_sides(x, t: int, ctx: PrecisionContext) -> SidePair:
    """sum zeta(2s, 2t+1) x^(2s-2) as a double series versus its cot/Hurwitz form."""
    mp = ctx.mp
    x = to_number(x, ctx)
    if t < 0:
        raise DomainError("t must be a nonnegative integer")
    _guard_square_positive_integer(x, ctx, "fixed-b")
    if abs(x) < mp.mpf(10) ** (-(ctx.digits / 3)):
        raise RemovableSingularity("the closed form is written with 1/x; use x != 0")
    b = 2 * t + 1
    head = _head(x)
    if b == 1:
        inner = lambda n: mp.psi(0, n) + mp.euler
        first = -mp.psi(0, 1 - x) - mp.psi(0, 1 + x) - 2 * mp.euler
    else:
        zb = mp.zeta(b)
        inner = lambda n: zb - hurwitz_raw(b, n, mp)
        first = hurwitz_raw(b, 1 - x, mp) + hurwitz_raw(b, 1 + x, mp) - 2 * zb
    lhs = _em(lambda n, _: inner(n) / (n * n - x * x), ctx, head)
    zeta_even = lambda k: mp.mpf(-1) / 2 if k == 0 else mp.zeta(k)
    tail = mp.fsum(zeta_even(2 * t + 2 - 2 * m) * (hurwitz_raw(2 * m, 1 - x, mp) - hurwitz_raw(2 * m, 1 + x, mp))
                   for m in range(1, t + 2))
    s = _em(lambda n, _: n ** (-b) / (n * n - x * x), ctx, head)
    rhs = s * (-mp.one / 2) + (mp.pi * mp.cot(mp.pi * x) / (4 * x) * first - tail / (2 * x))
    return SidePair(lhs, rhs)


def cot_expansion_sides(x, ctx: PrecisionContext) -> SidePair:
    """pi cot(pi x)/(2x)  versus  1/(2x^2) - sum 1/(k^2 - x^2)."""
    mp = ctx.mp
    x = to_number(x, ctx)
    _guard_square_positive_integer(x, ctx, "cot expansion")
    if x == 0:
        raise PoleError("both sides have a double pole at x = 0")
    s = _em(lambda k, _: 1 / (k * k - x * x), ctx, _head(x))
    return SidePair(closed(mp.pi * mp.cot(mp.pi * x) / (2 * x), ctx), 1 / (2 * x * x) - s)


# -- Taylor coefficients of the eu-dual sides at x = 0 ---------------------------

@dataclass(frozen=True)
class CoefficientCheck:
    k: int
    lhs: SeriesValue
    rhs: SeriesValue

    @property
    def residual(self):
        return abs(self.lhs.value - self.rhs.value)


def eu_dual_coefficients(ctx: PrecisionContext, orders=(0, 1, 2, 3), *, radius="1/8",
                         points: Optional[int] = None) -> list:
    """Coefficients of x^k on both sides of the eu-dual identity, via a discrete Cauchy integral.

    Both sides have nonnegative Taylor coefficients and radius of convergence
    1, so the aliasing error is bounded with the value at x = 0.8.  Returns one
    :class:`CoefficientCheck` per requested order; the expected common value
    for order k is zeta(k + 3).
    """
    orders = list(orders)
    if any(not 0 <= k <= 8 for k in orders):
        raise DepthUnsupported("coefficient extraction is provided for orders 0..8")
    mp = ctx.mp
    r = to_number(radius, ctx)
    rho = mp.mpf("0.8")
    q = r / rho
    if points is None:
        # aliasing decays like q^points; push it below the working epsilon
        points = int(ctx.working_dps / -math.log10(float(q))) + 4
        points += points % 2
    half = points // 2
    nodes, vals = [], []
    for j in range(half + 1):
        w = mp.expjpi(mp.mpf(2 * j) / points)
        x = mp.re(r * w) if j in (0, half) else r * w
        nodes.append(w)
        vals.append(eu_dual_sides(x, ctx))
    at_rho = eu_dual_sides(rho, ctx)

    def coeff(side, k):
        acc = mp.zero
        err = mp.zero
        for j in range(points):
            jj = j if j <= half else points - j
            v = getattr(vals[jj], side)
            w, val = nodes[jj], v.value
            if j > half:
                w, val = mp.conj(w), mp.conj(val)
            acc += val * w ** (-k)
            err += v.error_bound
        c = mp.re(acc) / points / r ** k
        big = abs(getattr(at_rho, side).value)
        alias = 2 * big * q ** points / rho ** k / (1 - q ** points)
        return SeriesValue(c, err / points / r ** k + alias, points, "euler_maclaurin")

    return [CoefficientCheck(k, coeff("lhs", k), coeff("rhs", k)) for k in orders]
