import pickle
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from eulerlab import errors as E
from eulerlab.numerics import (
    PrecisionContext, SeriesValue, closed, const_euler_gamma, const_pi, digamma, gamma,
    gauss_2f1_unit, hurwitz_zeta, parse_complex, polygamma, riemann_zeta, to_number,
)

import oracles

# frozen from the integer Machin and Brent-McMillan oracles
PI_30 = "3.14159265358979323846264338328"
GAMMA_30 = "0.577215664901532860606512090082"


# -- context -------------------------------------------------------------------------

def test_context_defaults():
    c = PrecisionContext()
    assert (c.digits, c.guard_digits, c.max_terms, c.em_order) == (30, 10, 2_000_000, 8)
    assert c.working_dps == 40
    assert c.mp.dps == 40


@pytest.mark.parametrize("kw", [dict(digits=1), dict(guard_digits=3), dict(max_terms=99), dict(em_order=0)])
def test_context_rejects_bad_fields(kw):
    with pytest.raises(E.DomainError):
        PrecisionContext(**kw)


def test_context_env_override(monkeypatch):
    monkeypatch.setenv("EULERLAB_MAX_TERMS", "5000")
    assert PrecisionContext.from_env(digits=20).max_terms == 5000
    monkeypatch.setenv("EULERLAB_MAX_TERMS", "50")
    with pytest.raises(E.DomainError):
        PrecisionContext.from_env()


def test_context_pickles_and_contexts_are_isolated():
    a = PrecisionContext(digits=12)
    b = PrecisionContext(digits=50)
    assert a.mp.dps == 22 and b.mp.dps == 60
    c = pickle.loads(pickle.dumps(a))
    assert c == a and c.mp.dps == 22
    assert a.with_digits(40).working_dps == 50
    assert a.with_extra_guard(5).working_dps == 27


# -- parsing ---------------------------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("1/3", 1 / 3), ("0.5+0.25i", 0.5 + 0.25j), ("-2i", -2j), ("i", 1j), ("-i", -1j),
    ("1/2-3/4i", 0.5 - 0.75j), ("1e-3+2j", 0.001 + 2j), ("-0.7", -0.7),
])
def test_parse_complex(ctx20, text, expected):
    assert abs(complex(parse_complex(text, ctx20)) - expected) < 1e-15


@pytest.mark.parametrize("text", ["", "abc", "1//2", "1+2", "i+1i"])
def test_parse_complex_rejects(ctx20, text):
    with pytest.raises(E.DomainError):
        parse_complex(text, ctx20)


def test_parse_rational_is_exact(ctx30):
    assert parse_complex("1/3", ctx30) * 3 == 1
    assert to_number(Fraction(1, 3), ctx30) == parse_complex("1/3", ctx30)


# -- SeriesValue -------------------------------------------------------------------------

def test_series_value_arithmetic_propagates_bounds():
    a = SeriesValue(mpmath.mpf(2), mpmath.mpf("1e-10"), 5, "euler_maclaurin")
    b = SeriesValue(mpmath.mpf(3), mpmath.mpf("2e-10"), 7, "closed_form")
    s = a + b
    assert s.value == 5 and s.error_bound == mpmath.mpf("3e-10")
    assert s.method == "euler_maclaurin" and s.terms_used == 12
    p = a * b
    assert p.value == 6 and p.error_bound >= mpmath.mpf("7e-10")
    assert (a - b).value == -1
    assert (a / 2).error_bound == mpmath.mpf("0.5e-10")
    assert s.contains(5 + mpmath.mpf("1e-10"))
    assert not s.contains(5 + mpmath.mpf("1e-9"))


def test_series_value_rejects_nonfinite_and_bad_method():
    with pytest.raises(E.PrecisionLossError):
        SeriesValue(mpmath.inf, 0)
    with pytest.raises(E.PrecisionLossError):
        SeriesValue(mpmath.mpf(1), -1)
    with pytest.raises(ValueError):
        SeriesValue(mpmath.mpf(1), 0, 0, "magic")


def test_division_by_uncertain_zero():
    a = SeriesValue(mpmath.mpf(1), 0)
    with pytest.raises(E.PrecisionLossError):
        a / SeriesValue(mpmath.mpf("1e-12"), mpmath.mpf("1e-11"))


# -- constants -------------------------------------------------------------------------------

def test_pi_matches_machin_oracle(ctx30):
    m = mpmath.MPContext()
    m.dps = 50
    assert abs(m.mpf(oracles.machin_pi(32)) - m.mpf(PI_30)) <= m.mpf("1e-30")
    v = const_pi(ctx30)
    assert abs(v.value - ctx30.mp.mpf(PI_30)) <= mpmath.mpf("1e-30")
    assert v.error_bound < 1e-30


def test_gamma_matches_brent_mcmillan_oracle(ctx30):
    ref = oracles.brent_mcmillan_gamma(30)
    assert abs(ref - ref.context.mpf(GAMMA_30)) <= ref.context.mpf("1e-30")
    v = const_euler_gamma(ctx30)
    assert abs(v.value - ctx30.mp.mpf(GAMMA_30)) <= mpmath.mpf("1e-30")
    assert abs(digamma(1, ctx30).value + v.value) < 1e-35


def test_low_precision_pi():
    c = PrecisionContext(digits=2, guard_digits=4)
    assert c.mp.nstr(const_pi(c).value, 3) == "3.14"


# -- gamma family -----------------------------------------------------------------------------

def test_gamma_values(ctx30):
    mp = ctx30.mp
    assert abs(gamma(1, ctx30).value - 1) < 1e-35
    assert abs(gamma("1/2", ctx30).value - mp.sqrt(mp.pi)) < 1e-35
    assert abs(gamma(5, ctx30).value - 24) < 1e-33


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles(ctx30, z):
    with pytest.raises(E.PoleError):
        gamma(z, ctx30)
    with pytest.raises(E.PoleError):
        digamma(z, ctx30)


def test_digamma_near_pole_loses_precision(ctx30):
    with pytest.raises(E.PrecisionLossError):
        digamma(ctx30.mp.mpf(-3) + ctx30.mp.mpf("1e-20"), ctx30)


def test_digamma_values(ctx30):
    mp = ctx30.mp
    g = mp.euler
    assert abs(digamma("1/2", ctx30).value - (-g - 2 * mp.log(2))) < 1e-35
    for n in range(1, 12):
        h = sum(mp.mpf(1) / k for k in range(1, n))
        assert abs(digamma(n, ctx30).value - (-g + h)) < 1e-35


def test_polygamma_trigamma_at_one(ctx30):
    mp = ctx30.mp
    assert abs(polygamma(1, 1, ctx30).value - mp.pi ** 2 / 6) < 1e-35
    with pytest.raises(E.DomainError):
        polygamma(-1, 1, ctx30)


# -- zeta family -------------------------------------------------------------------------------

def test_zeta_values(ctx30):
    mp = ctx30.mp
    assert abs(riemann_zeta(2, ctx30).value - mp.pi ** 2 / 6) < 1e-35
    assert riemann_zeta(0, ctx30).value == mp.mpf(-1) / 2
    assert abs(hurwitz_zeta(2, 1, ctx30).value - mp.pi ** 2 / 6) < 1e-35
    assert abs(hurwitz_zeta(2, "1/2", ctx30).value - mp.pi ** 2 / 2) < 1e-35


def test_zeta_pole(ctx30):
    with pytest.raises(E.PoleError):
        riemann_zeta(1, ctx30)
    with pytest.raises(E.PoleError):
        hurwitz_zeta(1, "1/2", ctx30)
    with pytest.raises(E.PoleError):
        hurwitz_zeta(2, -3, ctx30)


# -- Gauss 2F1 at unit argument -------------------------------------------------------------------

def test_gauss_examples(ctx30):
    mp = ctx30.mp
    t = mp.mpf(1) / 2
    assert abs(gauss_2f1_unit(t, -t, 1, ctx30).value - 2 / mp.pi) < 1e-35
    assert gauss_2f1_unit(0, "0.3", "2.5", ctx30).value == 1
    t = (1 + 1j) * mp.mpf(1) / 4
    prod = gauss_2f1_unit(t, -t, 1, ctx30).value * gauss_2f1_unit(1j * t, -1j * t, 1, ctx30).value
    ref = (mp.cosh(mp.pi / 2) - mp.cos(mp.pi / 2)) / (mp.pi ** 2 / 4)
    assert abs(prod - ref) < 1e-34


def test_gauss_matches_mpmath_hyp2f1(ctx20):
    mp = ctx20.mp
    for a, b, c in [("0.3", "0.2", "1.7"), ("1/3", "-1/4", "2"), ("0.1+0.2i", "0.3", "1.5")]:
        a_, b_, c_ = (parse_complex(v, ctx20) for v in (a, b, c))
        v = gauss_2f1_unit(a_, b_, c_, ctx20)
        assert abs(v.value - mp.hyp2f1(a_, b_, c_, 1)) <= v.error_bound + mp.mpf("1e-25")


def test_gauss_divergent_domain(ctx20):
    with pytest.raises(E.DomainError):
        gauss_2f1_unit(1, 1, "1.5", ctx20)


# -- properties ------------------------------------------------------------------------------------

_ctx = PrecisionContext(digits=25)
reals = st.floats(min_value=0.05, max_value=20, allow_nan=False)
cplx = st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False)


@given(cplx.filter(lambda z: z.real > 0.05))
def test_digamma_recurrence(z):
    mp = _ctx.mp
    z = mp.mpc(z)
    lhs = digamma(z + 1, _ctx).value
    assert abs(lhs - digamma(z, _ctx).value - 1 / z) < mp.mpf("1e-28") * (1 + abs(lhs))


@given(st.floats(min_value=0.01, max_value=0.99))
def test_digamma_reflection(x):
    mp = _ctx.mp
    x = mp.mpf(x)
    d = digamma(1 - x, _ctx).value - digamma(x, _ctx).value
    assert abs(d - mp.pi * mp.cot(mp.pi * x)) < mp.mpf("1e-25") * (1 + abs(d))


@given(reals)
def test_gamma_functional_equation(x):
    mp = _ctx.mp
    x = mp.mpf(x)
    a, b = gamma(x + 1, _ctx).value, gamma(x, _ctx).value
    assert abs(a - x * b) < mp.mpf("1e-28") * abs(a)


@given(st.integers(min_value=2, max_value=8), reals)
def test_hurwitz_shift(s, a):
    mp = _ctx.mp
    a = mp.mpf(a)
    d = hurwitz_zeta(s, a, _ctx).value - hurwitz_zeta(s, a + 1, _ctx).value
    assert abs(d - a ** (-s)) < mp.mpf("1e-28") * (1 + a ** (-s))


def test_closed_bound_scales_with_value(ctx30):
    assert closed(ctx30.mp.mpf(10) ** 10, ctx30).error_bound > closed(ctx30.mp.one, ctx30).error_bound
