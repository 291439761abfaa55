"""The polynomial recurrence a_n(t) and its conjectured infinite-product limit.

a_1 = a_2 = t^3 and

    n (n+1)^2 a_{n+2} = n (2n+1) a_{n+1} + (n^3 + (-1)^(n+1) t^3) a_n.

Every a_n is a polynomial in u = t^3, so :class:`CubicPoly` stores exact
rational coefficients in u.  The conjectured limit is
t^3 prod_{n>=1} (1 + t^3/(8 n^3)).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, DomainError, ZeroDivisor
from .numerics import PrecisionContext, SeriesValue, closed, hurwitz_raw, to_number

__all__ = [
    "CubicPoly",
    "EXACT_LIMIT",
    "DEFAULT_CAP",
    "a_poly",
    "recurrence_residual",
    "a_eval",
    "a_float",
    "product_limit",
    "gap",
    "gap_table",
    "gap_csv",
]

DEFAULT_CAP = 2000
EXACT_LIMIT = 200  # above this a_eval runs the recurrence in floating point


@dataclass(frozen=True)
class CubicPoly:
    """Polynomial in u = t^3; ``coefficients[i]`` multiplies u^i."""

    coefficients: tuple = ()

    def __post_init__(self):
        c = [Fraction(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __add__(self, other: "CubicPoly") -> "CubicPoly":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return CubicPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __sub__(self, other: "CubicPoly") -> "CubicPoly":
        return self + other.scale(-1)

    def scale(self, k) -> "CubicPoly":
        return CubicPoly(tuple(k * c for c in self.coefficients))

    def times_u(self) -> "CubicPoly":
        return CubicPoly((Fraction(0),) + self.coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def at_u(self, u, mp=None):
        """Horner evaluation at u (Fraction/int exactly, mpmath numbers via ``mp``)."""
        acc = mp.zero if mp is not None else Fraction(0)
        for c in reversed(self.coefficients):
            coef = mp.mpf(c.numerator) / c.denominator if mp is not None else c
            acc = acc * u + coef
        return acc

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts)


U = CubicPoly((0, 1))


_SEQ = [None, U, U]  # shared prefix of exact a_n; entries are immutable


def _exact_sequence(n: int) -> list:
    seq = _SEQ
    while len(seq) <= n:
        k = len(seq) - 2
        # k (k+1)^2 a_{k+2} = k (2k+1) a_{k+1} + (k^3 + (-1)^(k+1) u) a_k
        sign = 1 if k % 2 else -1
        rhs = seq[k + 1].scale(k * (2 * k + 1)) + seq[k].scale(k ** 3) + seq[k].times_u().scale(sign)
        seq.append(rhs.scale(Fraction(1, k * (k + 1) ** 2)))
    return seq


def a_poly(n: int, cap: int = DEFAULT_CAP) -> CubicPoly:
    """Exact a_n as a polynomial in u = t^3."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > cap:
        raise CapExceeded(f"a_poly({n}) exceeds the cap {cap}")
    return _exact_sequence(max(n, 2))[n]


def recurrence_residual(n: int) -> CubicPoly:
    """n(n+1)^2 a_{n+2} - n(2n+1) a_{n+1} - (n^3 + (-1)^(n+1) u) a_n, exactly."""
    a = _exact_sequence(n + 2)
    sign = 1 if n % 2 else -1
    return (a[n + 2].scale(n * (n + 1) ** 2) - a[n + 1].scale(n * (2 * n + 1))
            - a[n].scale(n ** 3) - a[n].times_u().scale(sign))


def a_float(n: int, t, ctx: PrecisionContext):
    """a_n(t) by running the recurrence in working precision."""
    u = to_number(t, ctx) ** 3
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > ctx.max_terms:
        raise CapExceeded(f"n = {n} exceeds max_terms")
    prev, cur = u, u
    for k in range(1, n - 1):
        sign = 1 if k % 2 else -1
        nxt = (k * (2 * k + 1) * cur + (k ** 3 + sign * u) * prev) / (k * (k + 1) ** 2)
        prev, cur = cur, nxt
    return prev if n == 1 else cur


def a_eval(n: int, t, ctx: PrecisionContext):
    """a_n(t): exact polynomial for n <= 200, floating recurrence beyond."""
    if n > EXACT_LIMIT:
        return a_float(n, t, ctx)
    mp = ctx.mp
    return a_poly(n).at_u(to_number(t, ctx) ** 3, mp)


def product_limit(t, ctx: PrecisionContext) -> SeriesValue:
    """t^3 prod (1 + t^3/(8n^3)), head product times the exponentiated log tail."""
    mp = ctx.mp
    t = to_number(t, ctx)
    u = t ** 3
    w = u / 8
    # zero factor when w = -n^3
    root = -w
    if mp.im(root) == 0 and mp.re(root) > 0:
        n = int(mp.nint(mp.cbrt(mp.re(root))))
        if n >= 1 and abs(root - n ** 3) < mp.mpf(10) ** (-(ctx.digits / 2)):
            raise ZeroDivisor(f"factor 1 + t^3/(8*{n}^3) vanishes")
    if u == 0:
        return closed(mp.zero, ctx)
    N = max(50, int(2 * float(abs(w)) ** (1 / 3)) + 10)
    head = mp.one
    for n in range(1, N + 1):
        head *= 1 + w / mp.mpf(n) ** 3
    # log prod_{n>N} (1 + w/n^3) = sum_j (-1)^(j+1) w^j / j * H(3j, N+1)
    tol = mp.mpf(10) ** (-ctx.working_dps)
    logtail = mp.zero
    j = 1
    while True:
        term = (-1) ** (j + 1) * w ** j / j * hurwitz_raw(3 * j, mp.mpf(N + 1), mp)
        logtail += term
        if abs(term) < tol:
            break
        j += 1
    v = u * head * mp.exp(logtail)
    if mp.im(t) == 0:
        v = mp.re(v)
    return SeriesValue(v, ctx.closed_bound(v) * N, N, "closed_form")


def gap(n: int, t, ctx: PrecisionContext):
    """|a_n(t) - t^3 prod (1 + t^3/(8 n^3))|."""
    return abs(a_eval(n, t, ctx) - product_limit(t, ctx).value)


def gap_table(ts, ns, ctx: PrecisionContext) -> list:
    """Rows (t, n, a_n(t), gap) for every t in ``ts`` and n in ``ns``."""
    rows = []
    for t in ts:
        lim = product_limit(t, ctx).value
        for n in ns:
            a = a_eval(n, t, ctx)
            rows.append((str(t), n, a, abs(a - lim)))
    return rows


def gap_csv(rows, ctx: PrecisionContext, digits: int = 15) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "n", "a_n", "gap"])
    for t, n, a, g in rows:
        w.writerow([t, n, ctx.mp.nstr(a, digits), ctx.mp.nstr(g, 6)])
    return buf.getvalue()
