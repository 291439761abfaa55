"""Precision contexts, error-carrying values and the special functions.

Every evaluation in the package is a pure function of its inputs and a
:class:`PrecisionContext`.  Each context owns a private ``mpmath.MPContext``
so that concurrent evaluations at different precisions never share mutable
precision state.

The special functions themselves (Gamma, digamma, polygamma, Riemann and
Hurwitz zeta) are delegated to mpmath; this module adds pole/domain policy
and wraps results as :class:`SeriesValue` objects carrying an absolute error
bound.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from numbers import Number

import mpmath

from .errors import DomainError, PoleError, PrecisionLossError

__all__ = [
    "PrecisionContext",
    "SeriesValue",
    "METHODS",
    "to_number",
    "parse_complex",
    "closed",
    "const_pi",
    "const_euler_gamma",
    "gamma",
    "digamma",
    "polygamma",
    "riemann_zeta",
    "hurwitz_zeta",
    "gauss_2f1_unit",
    "hurwitz_raw",
    "pi_x_cot",
    "pi_x_coth",
]

# Ordered from most to least precise; combining values keeps the weakest.
METHODS = ("closed_form", "euler_maclaurin", "alternating_accel", "direct")


@dataclass(frozen=True)
class PrecisionContext:
    digits: int = 30
    guard_digits: int = 10
    max_terms: int = 2_000_000
    em_order: int = 8

    def __post_init__(self):
        if self.digits < 2:
            raise DomainError(f"digits must be >= 2, got {self.digits}")
        if self.guard_digits < 4:
            raise DomainError(f"guard_digits must be >= 4, got {self.guard_digits}")
        if self.max_terms < 100:
            raise DomainError(f"max_terms must be >= 100, got {self.max_terms}")
        if self.em_order < 1:
            raise DomainError(f"em_order must be >= 1, got {self.em_order}")

    @classmethod
    def from_env(cls, digits: int = 30, **kw) -> "PrecisionContext":
        """Build a context, honouring ``EULERLAB_MAX_TERMS`` if set."""
        env = os.environ.get("EULERLAB_MAX_TERMS")
        if env and "max_terms" not in kw:
            kw["max_terms"] = int(env)
        return cls(digits=digits, **kw)

    @property
    def working_dps(self) -> int:
        return self.digits + self.guard_digits

    @cached_property
    def mp(self) -> mpmath.MPContext:
        ctx = mpmath.MPContext()
        ctx.dps = self.working_dps
        return ctx

    def __getstate__(self):
        # the mpmath context is rebuilt lazily after unpickling
        state = dict(self.__dict__)
        state.pop("mp", None)
        return state

    def with_digits(self, digits: int) -> "PrecisionContext":
        return replace(self, digits=digits)

    def with_extra_guard(self, extra: int) -> "PrecisionContext":
        return replace(self, guard_digits=self.guard_digits + extra)

    @property
    def eps(self):
        """Unit of the requested accuracy, 10**-digits."""
        return self.mp.mpf(10) ** (-self.digits)

    def closed_bound(self, value):
        """Error bound attached to a value computed directly at working precision."""
        mp = self.mp
        return mp.mpf(10) ** (-(self.working_dps - 3)) * (abs(value) + 1)


@dataclass(frozen=True)
class SeriesValue:
    """A number together with an absolute (heuristic-certified) error bound."""

    value: object
    error_bound: object
    terms_used: int = 0
    method: str = "closed_form"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        v = self.value
        if isinstance(v, mpmath.mpc) or isinstance(v, complex):
            finite = mpmath.isfinite(v.real) and mpmath.isfinite(v.imag)
        else:
            finite = mpmath.isfinite(v)
        if not finite:
            raise PrecisionLossError(f"non-finite value {v}")
        if not self.error_bound >= 0:
            raise PrecisionLossError(f"invalid error bound {self.error_bound}")

    @property
    def real(self):
        return mpmath.re(self.value)

    @property
    def imag(self):
        return mpmath.im(self.value)

    def __abs__(self):
        return abs(self.value)

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(mpmath.re(self.value))

    def contains(self, other) -> bool:
        """True if ``other`` lies within this value's error bound."""
        ov = other.value if isinstance(other, SeriesValue) else other
        return abs(self.value - ov) <= self.error_bound

    # -- arithmetic with bound propagation ---------------------------------

    def _combine(self, other, value, bound) -> "SeriesValue":
        method = self.method
        terms = self.terms_used
        if isinstance(other, SeriesValue):
            method = max(method, other.method, key=METHODS.index)
            terms += other.terms_used
        return SeriesValue(value, bound, terms, method)

    def __add__(self, other):
        if isinstance(other, SeriesValue):
            return self._combine(other, self.value + other.value, self.error_bound + other.error_bound)
        if isinstance(other, Number) or _is_mp(other):
            return self._combine(other, self.value + other, self.error_bound)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return SeriesValue(-self.value, self.error_bound, self.terms_used, self.method)

    def __sub__(self, other):
        if isinstance(other, (SeriesValue, Number)) or _is_mp(other):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SeriesValue):
            bound = (abs(self.value) * other.error_bound + abs(other.value) * self.error_bound
                     + self.error_bound * other.error_bound)
            return self._combine(other, self.value * other.value, bound)
        if isinstance(other, Number) or _is_mp(other):
            return self._combine(other, self.value * other, self.error_bound * abs(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SeriesValue):
            d = abs(other.value)
            if d <= other.error_bound:
                raise PrecisionLossError("division by a value indistinguishable from zero")
            q = self.value / other.value
            bound = (self.error_bound + abs(q) * other.error_bound) / (d - other.error_bound)
            return self._combine(other, q, bound)
        if isinstance(other, Number) or _is_mp(other):
            return self._combine(other, self.value / other, self.error_bound / abs(other))
        return NotImplemented

    def __repr__(self):
        return (f"SeriesValue({mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.error_bound, 3)}, "
                f"{self.method}, terms={self.terms_used})")


def _is_mp(v) -> bool:
    return isinstance(v, (mpmath.mpf, mpmath.mpc)) or hasattr(v, "_mpf_") or hasattr(v, "_mpc_")


# -- parsing and conversion -----------------------------------------------

_REAL_RE = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?$")


def _parse_real(text: str, mp):
    if not _REAL_RE.match(text):
        raise DomainError(f"cannot parse real literal {text!r}")
    if "/" in text:
        num, den = text.split("/")
        return mp.mpf(num) / mp.mpf(den)
    return mp.mpf(text)


def parse_complex(text: str, ctx: PrecisionContext):
    """Parse literals such as ``"1/3"``, ``"0.5+0.25i"``, ``"-2i"`` or ``"i"``."""
    mp = ctx.mp
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty complex literal")
    if s[-1] not in "ij":
        return _parse_real(s, mp)
    body = s[:-1]
    # split at the last sign that is not a leading sign or an exponent sign
    cut = None
    for i in range(len(body) - 1, 0, -1):
        if body[i] in "+-" and body[i - 1] not in "eE":
            cut = i
            break
    re_text, im_text = ("", body) if cut is None else (body[:cut], body[cut:])
    if im_text in ("", "+", "-"):
        im_text += "1"
    re_part = _parse_real(re_text, mp) if re_text else mp.zero
    return mp.mpc(re_part, _parse_real(im_text, mp))


def to_number(z, ctx: PrecisionContext):
    """Convert ints, Fractions, floats, complex, strings or mp numbers into ``ctx.mp``."""
    mp = ctx.mp
    if isinstance(z, SeriesValue):
        z = z.value
    if isinstance(z, str):
        return parse_complex(z, ctx)
    if isinstance(z, Fraction):
        return mp.mpf(z.numerator) / z.denominator
    if isinstance(z, complex):
        return mp.mpc(z.real, z.imag) if z.imag else mp.mpf(z.real)
    if hasattr(z, "_mpc_"):
        v = mp.mpc(z)
        return v if v.imag else v.real
    return mp.mpf(z)


def closed(value, ctx: PrecisionContext) -> SeriesValue:
    """Wrap a directly computed value as a ``closed_form`` SeriesValue."""
    return SeriesValue(value, ctx.closed_bound(value), 0, "closed_form")


# -- pole policy ------------------------------------------------------------

def _check_nonpositive_integer(z, ctx: PrecisionContext, what: str):
    """Raise on (or too near) the set {0, -1, -2, ...}."""
    mp = ctx.mp
    re_z = mp.re(z)
    if re_z > 0.5:
        return
    k = mp.nint(re_z)
    d = abs(z - k)
    if d == 0:
        raise PoleError(f"{what} has a pole at {mp.nstr(k, 5)}")
    if d < mp.mpf(10) ** (-(ctx.digits / 2)):
        raise PrecisionLossError(f"{what}: argument within {mp.nstr(d, 3)} of pole {mp.nstr(k, 5)}")


# -- constants --------------------------------------------------------------

def const_pi(ctx: PrecisionContext) -> SeriesValue:
    return closed(+ctx.mp.pi, ctx)


def const_euler_gamma(ctx: PrecisionContext) -> SeriesValue:
    return closed(+ctx.mp.euler, ctx)


# -- Gamma family -----------------------------------------------------------

def gamma(z, ctx: PrecisionContext) -> SeriesValue:
    z = to_number(z, ctx)
    _check_nonpositive_integer(z, ctx, "gamma")
    return closed(ctx.mp.gamma(z), ctx)


def digamma(z, ctx: PrecisionContext) -> SeriesValue:
    return polygamma(0, z, ctx)


def polygamma(m: int, z, ctx: PrecisionContext) -> SeriesValue:
    if m < 0 or int(m) != m:
        raise DomainError(f"polygamma order must be a nonnegative integer, got {m}")
    z = to_number(z, ctx)
    _check_nonpositive_integer(z, ctx, "polygamma")
    return closed(ctx.mp.psi(int(m), z), ctx)


def hurwitz_raw(s, a, mp):
    """Unchecked Hurwitz zeta; integer ``s`` goes through polygamma so complex ``a`` works."""
    if isinstance(s, int) or (mp.im(s) == 0 and mp.re(s) == int(mp.re(s))):
        k = int(mp.re(s))
        if k >= 2:
            return (-1) ** k * mp.psi(k - 1, a) / mp.factorial(k - 1)
    return mp.zeta(s, a)


def riemann_zeta(s, ctx: PrecisionContext) -> SeriesValue:
    s = to_number(s, ctx)
    mp = ctx.mp
    if s == 0:
        return SeriesValue(mp.mpf(-1) / 2, mp.zero, 0, "closed_form")
    if s == 1:
        raise PoleError("zeta has a pole at s=1")
    if mp.re(s) <= 1:
        raise DomainError("riemann_zeta is only provided for Re(s) > 1 and s = 0")
    return closed(mp.zeta(s), ctx)


def hurwitz_zeta(s, a, ctx: PrecisionContext) -> SeriesValue:
    s = to_number(s, ctx)
    a = to_number(a, ctx)
    mp = ctx.mp
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s=1")
    if mp.re(s) <= 1:
        raise DomainError("hurwitz_zeta is only provided for Re(s) > 1")
    _check_nonpositive_integer(a, ctx, "hurwitz_zeta")
    return closed(hurwitz_raw(s, a, mp), ctx)


def gauss_2f1_unit(a, b, c, ctx: PrecisionContext) -> SeriesValue:
    """2F1(a, b; c; 1) by Gauss's summation theorem."""
    mp = ctx.mp
    a, b, c = (to_number(v, ctx) for v in (a, b, c))
    if mp.re(c - a - b) <= 0:
        raise DomainError("Gauss summation needs Re(c - a - b) > 0")
    if mp.im(c) == 0 and mp.re(c) <= 0 and mp.re(c) == int(mp.re(c)):
        raise DomainError("c must not be a nonpositive integer")
    value = mp.gamma(c) * mp.gamma(c - a - b) * mp.rgamma(c - a) * mp.rgamma(c - b)
    return closed(value, ctx)


# -- trigonometric helpers with the removable point at zero handled ------------

def pi_x_cot(x, mp):
    """pi*x*cot(pi*x), equal to 1 at x = 0."""
    if x == 0:
        return mp.one
    if abs(x) < mp.mpf(2) ** (-mp.prec // 4):
        z2 = (mp.pi * x) ** 2
        return 1 - z2 / 3 - z2 ** 2 / 45
    return mp.pi * x * mp.cot(mp.pi * x)


def pi_x_coth(x, mp):
    """pi*x*coth(pi*x), equal to 1 at x = 0."""
    if x == 0:
        return mp.one
    if abs(x) < mp.mpf(2) ** (-mp.prec // 4):
        z2 = (mp.pi * x) ** 2
        return 1 + z2 / 3 - z2 ** 2 / 45
    return mp.pi * x * mp.coth(mp.pi * x)


def near_integer(z, mp, tol=0):
    """Distance from ``z`` to the nearest integer, and that integer."""
    k = mp.nint(mp.re(z))
    return abs(z - k), int(k)


def log10_bound(x) -> float:
    """Float log10 of a nonnegative bound, -inf for zero (used in reports)."""
    return math.log10(x) if x > 0 else float("-inf")
