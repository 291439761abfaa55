from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eulerlab import conjecture as C
from eulerlab import errors as E
from eulerlab import mzv as Z
from eulerlab.conjecture import CubicPoly
from eulerlab.numerics import PrecisionContext, to_number


def product_oracle(t: float, K: int = 10 ** 6) -> float:
    """t^3 prod (1 + t^3/(8n^3)) in float64, log-summed to K with the 1/(16 K^2) tail."""
    w = t ** 3 / 8
    n = np.arange(1, K + 1, dtype=float)
    return t ** 3 * float(np.exp(np.sum(np.log1p(w / n ** 3)) + w / (2 * K ** 2)))


# -- polynomial type -----------------------------------------------------------------------

def test_cubic_poly_basics():
    p = CubicPoly((0, 1, Fraction(1, 4), 0, 0))
    assert p.coefficients == (0, 1, Fraction(1, 4)) and p.degree == 2
    assert str(p) == "u + 1/4*u^2"
    assert str(CubicPoly(())) == "0" and CubicPoly(()).is_zero()
    assert (p - p).is_zero()
    assert p.times_u() == CubicPoly((0, 0, 1, Fraction(1, 4)))
    assert p.at_u(Fraction(2)) == 3


# -- exact recurrence -------------------------------------------------------------------------

def test_hand_values():
    u = CubicPoly((0, 1))
    assert C.a_poly(1) == u and C.a_poly(2) == u
    assert C.a_poly(3) == CubicPoly((0, 1, Fraction(1, 4)))
    assert C.a_poly(4) == CubicPoly((0, 1, Fraction(1, 12)))


def test_recurrence_residual_zero_to_200():
    assert all(C.recurrence_residual(n).is_zero() for n in range(1, 201))


def test_a_poly_errors():
    with pytest.raises(E.DomainError):
        C.a_poly(0)
    with pytest.raises(E.CapExceeded):
        C.a_poly(50, cap=40)


def test_degree_growth():
    # every a_n is t^3-graded: a polynomial in u with no constant term
    for n in (5, 17, 60):
        p = C.a_poly(n)
        assert p.coefficients[0] == 0
        assert p.degree <= n


# -- numeric evaluation -----------------------------------------------------------------------

@pytest.mark.parametrize("t", ["1/4", "1", "3/2", "0.6+0.4i"])
def test_float_vs_exact(ctx30, t):
    mp = ctx30.mp
    for n in (3, 50, 200):
        exact = C.a_eval(n, t, ctx30)
        fl = C.a_float(n, t, ctx30)
        assert abs(exact - fl) <= mp.mpf(10) ** -30 * (1 + abs(exact))


def test_t_zero(ctx15):
    for n in (1, 10, 500):
        assert C.a_eval(n, 0, ctx15) == 0
    assert C.product_limit(0, ctx15).value == 0
    assert C.gap(100, 0, ctx15) == 0


def test_a_float_cap():
    with pytest.raises(E.CapExceeded):
        C.a_float(500, 1, PrecisionContext(digits=10, max_terms=100))


# -- product limit ------------------------------------------------------------------------------

def test_product_limit_against_oracle(ctx30):
    v = C.product_limit(1, ctx30)
    assert abs(float(v.value) - product_oracle(1.0)) < 1e-12
    assert ctx30.mp.nstr(v.value, 8) == "1.1536213"


@pytest.mark.parametrize("t", ["1", "1/2", "-1.3", "0.6+0.4i"])
def test_product_limit_vs_gamma_triple(ctx30, t):
    tv = to_number(t, ctx30)
    x = tv / 2
    rhs = Z.cube_gamma_sides(x, ctx30).rhs.value
    assert abs(C.product_limit(t, ctx30).value - tv ** 3 * rhs) < 1e-28


def test_product_zero_factor(ctx15):
    with pytest.raises(E.ZeroDivisor):
        C.product_limit(-2, ctx15)
    with pytest.raises(E.ZeroDivisor):
        C.product_limit(-4, ctx15)


# -- gap decay (measured: gap(1000)/gap(10) ~ 2.5e-4 for t in {1/4, 1/2, 1, 3/2}) ------------------

@pytest.mark.parametrize("t", ["1/4", "1/2", "1", "3/2"])
def test_gap_decreasing(ctx15, t):
    g = [C.gap(n, t, ctx15) for n in (10, 100, 1000)]
    assert g[0] > g[1] > g[2]
    assert g[2] <= 1e-3 * g[0]


def test_gap_table_and_csv(ctx15):
    rows = C.gap_table(["1"], [10, 100], ctx15)
    assert [r[:2] for r in rows] == [("1", 10), ("1", 100)]
    text = C.gap_csv(rows, ctx15, digits=10)
    lines = text.splitlines()
    assert lines[0] == "t,n,a_n,gap"
    assert lines[1].startswith("1,10,1.13")
    assert len(lines) == 3


@given(st.fractions(min_value=-1, max_value=2, max_denominator=8))
@settings(max_examples=10)
def test_exact_eval_matches_polynomial(t):
    ctx = PrecisionContext(digits=20)
    u = t ** 3
    for n in (5, 12):
        exact = C.a_poly(n).at_u(u)
        assert abs(C.a_eval(n, t, ctx) - ctx.mp.mpf(exact.numerator) / exact.denominator) < 1e-25
