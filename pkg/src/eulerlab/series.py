"""Summation machinery: direct partial sums, Euler-Maclaurin tails, and
alternating-series acceleration.

``direct_sum`` is the brute-force oracle.  ``sum_em`` and
``sum_alternating`` are the accelerated paths that the identity evaluators
use; both return :class:`~eulerlab.numerics.SeriesValue` with an error bound.

Euler-Maclaurin needs odd derivatives of the summand at the split point.
They are taken from Taylor coefficients computed with a discrete Cauchy
integral on a circle of radius ``N0/4`` around the split point, so the
summand must extend analytically to complex arguments there (every summand
in this package is built from rational functions, logs and polygammas).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AccelUnreliable, CapExceeded, NonConvergent
from .numerics import PrecisionContext, SeriesValue

__all__ = [
    "TermSource",
    "direct_sum",
    "sum_em",
    "sum_alternating",
    "extrapolate_partial_sums",
    "taylor_coefficients",
]


@dataclass(frozen=True)
class TermSource:
    """A series sum_{n >= start} term(n).

    ``smooth(t, ctx)`` is the analytic continuation of the summand to real
    (and nearby complex) ``t``; when given, ``term`` defaults to it.  Sources
    flagged ``alternating`` have ``term(n) = (-1)**n * a(n)`` with ``a``
    smooth and eventually monotone in magnitude.  ``min_head`` pushes the
    Euler-Maclaurin split point past any singularities of ``smooth``.
    """

    smooth: Optional[Callable] = None
    term: Optional[Callable] = None
    alternating: bool = False
    start: int = 1
    tail_start: int = 1
    min_head: int = 0

    def at(self, n: int, ctx: PrecisionContext):
        if self.term is not None:
            return self.term(n, ctx)
        return self.smooth(ctx.mp.mpf(n), ctx)


def _decay_exponent(f, n, mp):
    """Empirical p with |f(t)| ~ t^-p from probes at n and 4n; None if f vanishes."""
    a = abs(f(mp.mpf(n)))
    b = abs(f(mp.mpf(4 * n)))
    if a == 0 and b == 0:
        return None
    if a == 0 or b == 0:
        return mp.inf
    return mp.log(a / b) / mp.log(4)


def _tail_estimate(src: TermSource, k: int, ctx: PrecisionContext):
    """Crude bound for sum_{n >= k} term(n)."""
    mp = ctx.mp
    k = max(k, 1)
    if src.alternating:
        return abs(src.at(k, ctx))
    if src.smooth is None:
        return mp.inf
    f = lambda t: src.smooth(t, ctx)
    p = _decay_exponent(f, k, mp)
    if p is None:
        return mp.zero
    if p <= 1.02:
        return mp.inf
    return 2 * abs(f(mp.mpf(k))) * k / (p - 1)


def direct_sum(src: TermSource, N: int, ctx: PrecisionContext) -> SeriesValue:
    """Sum of the first ``N`` terms; the error bound is a crude tail estimate."""
    if N > ctx.max_terms:
        raise CapExceeded(f"direct_sum of {N} terms exceeds max_terms={ctx.max_terms}")
    mp = ctx.mp
    s = mp.fsum(src.at(n, ctx) for n in range(src.start, src.start + N))
    tail = _tail_estimate(src, src.start + N, ctx)
    rounding = mp.mpf(10) ** (-(ctx.working_dps - 2)) * (abs(s) + 1) * max(1, math.isqrt(N))
    return SeriesValue(s, tail + rounding, N, "direct")


def taylor_coefficients(f, t0, order: int, radius, mp, points: Optional[int] = None):
    """Taylor coefficients c_0..c_order of f about t0 via a discrete Cauchy integral."""
    if points is None:
        points = int(1.7 * mp.dps) + 24
    points = max(points, order + 2)
    nodes = [mp.expjpi(mp.mpf(2 * j) / points) for j in range(points)]
    vals = [f(t0 + radius * w) for w in nodes]
    coeffs = []
    for k in range(order + 1):
        s = mp.fsum(vals[j] * nodes[(-j * k) % points] for j in range(points))
        coeffs.append(s / points / radius ** k)
    return coeffs


def sum_em(src: TermSource, ctx: PrecisionContext, *, split: Optional[int] = None) -> SeriesValue:
    """Sum a smooth series by head sum + integral + Bernoulli corrections."""
    if src.smooth is None:
        raise NonConvergent("sum_em needs a smooth tail descriptor")
    mp = ctx.mp
    f = lambda t: src.smooth(t, ctx)
    m = ctx.em_order
    tol = mp.mpf(10) ** (-(ctx.digits + ctx.guard_digits))
    N0 = split or max(50, 4 * ctx.digits, src.min_head, src.tail_start, src.start)

    bern = [mp.bernoulli(2 * k) / mp.factorial(2 * k) for k in range(1, m + 2)]
    while True:
        if N0 > ctx.max_terms:
            raise CapExceeded(f"Euler-Maclaurin split point {N0} exceeds max_terms={ctx.max_terms}")
        p = _decay_exponent(f, N0, mp)
        if p is None:
            # summand vanishes identically on the tail probes
            head = mp.fsum(src.at(n, ctx) for n in range(src.start, N0))
            return SeriesValue(head, ctx.closed_bound(head) * N0, N0, "euler_maclaurin")
        if p <= 1.05:
            raise NonConvergent(f"tail decay exponent {mp.nstr(p, 4)} does not exceed 1")
        c = taylor_coefficients(f, mp.mpf(N0), 2 * m + 1, mp.mpf(N0) / 4, mp)
        if not hasattr(f(mp.mpf(N0)), "imag") or mp.im(f(mp.mpf(N0))) == 0:
            # real on the real axis: the contour only adds rounding noise to Im
            c = [mp.re(v) for v in c]
        # f^(j)(N0) = j! c_j
        derivs = [mp.factorial(j) * c[j] for j in range(2 * m + 2)]
        corrections = [bern[k - 1] * derivs[2 * k - 1] for k in range(1, m + 1)]
        omitted = abs(bern[m] * derivs[2 * m + 1])
        if omitted <= tol:
            break
        N0 *= 2

    head = mp.fsum(src.at(n, ctx) for n in range(src.start, N0))
    integral, qerr = mp.quad(f, [N0, 2 * N0, 8 * N0, mp.inf], error=True)
    value = head + integral + derivs[0] / 2 - mp.fsum(corrections)
    rounding = mp.mpf(10) ** (-(ctx.working_dps - 3)) * (abs(head) + abs(integral) + 1)
    bound = 10 * omitted + abs(qerr) + rounding
    return SeriesValue(value, bound, N0, "euler_maclaurin")


def _cvz(a, n, mp):
    """Cohen-Villegas-Zagier weights applied to sum_k (-1)^k a_k."""
    d = (3 + mp.sqrt(8)) ** n
    d = (d + 1 / d) / 2
    b = mp.mpf(-1)
    c = -d
    s = mp.zero
    for k in range(n):
        c = b - c
        s += c * a[k]
        b = (k + n) * (k - n) * b / ((k + mp.mpf(1) / 2) * (k + 1))
    return s / d


def sum_alternating(
    src: TermSource,
    ctx: PrecisionContext,
    *,
    validate: bool = True,
    validate_terms: int = 10_000,
    validate_tol: float = 1e-6,
) -> SeriesValue:
    """Accelerated sum of an alternating series, checked against partial sums."""
    if not src.alternating:
        raise NonConvergent("sum_alternating needs an alternating source")
    mp = ctx.mp
    # CVZ error is about 5.828^-n relative to the leading magnitude
    n1 = int((ctx.working_dps + 3) / math.log10(3 + math.sqrt(8))) + 2
    n2 = n1 + max(6, n1 // 4)
    if src.start + n2 > ctx.max_terms:
        raise CapExceeded("alternating acceleration needs more terms than max_terms")
    terms = [src.at(src.start + k, ctx) for k in range(n2)]
    a = [(-1) ** k * t for k, t in enumerate(terms)]
    s1 = _cvz(a, n1, mp)
    s2 = _cvz(a, n2, mp)
    rounding = mp.mpf(10) ** (-(ctx.working_dps - 3)) * (max(abs(t) for t in terms) + 1)
    bound = abs(s1 - s2) + rounding

    if validate:
        N = min(validate_terms, ctx.max_terms - 1)
        partial = mp.fsum(src.at(n, ctx) for n in range(src.start, src.start + N))
        last = src.at(src.start + N, ctx)
        # mean of consecutive partial sums halves the alternating tail
        averaged = partial + last / 2
        if abs(averaged - s2) > validate_tol:
            raise AccelUnreliable(
                f"accelerated sum disagrees with direct partial sums by {mp.nstr(abs(averaged - s2), 3)}")
    return SeriesValue(s2, bound, n2, "alternating_accel")


def extrapolate_partial_sums(Ns: Sequence[int], sums: Sequence[complex], order: int = 3):
    """Limit of partial sums S_N = S - sum_j (a_j log N + b_j) / N^j.

    Least-squares fit over the supplied (N, S_N) pairs with ``order`` terms of
    the expansion and again with ``order - 1``; returns ``(limit, error)``
    where the error is the disagreement of the two fits.
    """
    Ns = np.asarray(Ns, dtype=float)
    S = np.asarray(sums, dtype=complex)

    def fit(J):
        cols = [np.ones_like(Ns)]
        for j in range(1, J + 1):
            cols += [np.log(Ns) / Ns ** j, 1.0 / Ns ** j]
        A = np.stack(cols, axis=1)
        scale = np.abs(A).max(axis=0)
        sol, *_ = np.linalg.lstsq(A / scale, S, rcond=None)
        return sol[0] / scale[0]

    hi = fit(order)
    lo = fit(order - 1)
    return hi, abs(hi - lo)
