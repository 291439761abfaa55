from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eulerlab import errors as E
from eulerlab import reduction as R
from eulerlab.mzv import MZVIndex, mzv_eval
from eulerlab.reduction import ZetaExpression, zeta

even = st.integers(1, 6).map(lambda k: 2 * k)
odd = st.integers(0, 6).map(lambda k: 2 * k + 1)


# -- expression algebra ---------------------------------------------------------------------

def test_build_is_canonical():
    e = ZetaExpression.build([((3, 2), 1), ((2, 3), 1), ((5,), Fraction(1, 2)), ((1, 4), 7), ((6,), 0)])
    assert e.as_dict() == {(5,): Fraction(1, 2), (2, 3): Fraction(2)}
    assert e.canonical() == e
    assert e.terms[0][0] == (5,)


def test_arithmetic():
    a = zeta(2) * zeta(3)
    assert a == zeta(2, 3)
    assert (a - a).terms == ()
    assert 2 * zeta(5) == zeta(5, coef=2)
    assert zeta(2) + 1 == ZetaExpression.build([((), 1), ((2,), 1)])
    with pytest.raises(TypeError):
        zeta(2) + 1.5
    with pytest.raises(E.DomainError):
        zeta(0)


def test_zeta_one_is_zero():
    assert zeta(1).terms == ()
    assert (zeta(1) * zeta(4) + zeta(3)) == zeta(3)


# -- text form ----------------------------------------------------------------------------------

@pytest.mark.parametrize("text", [
    "0",
    "z(3)",
    "9/2*z(5) - 2*z(2)*z(3)",
    "5/2*z(6) - z(2)*z(4) - 1/2*z(3)^2",
    "-1/3 + z(2)^2",
])
def test_render_parse_golden(text):
    assert R.render(R.parse(text)) == text


def test_render_known_reductions():
    assert R.render(R.reduce_s1(5)) == "5/2*z(6) - z(2)*z(4) - 1/2*z(3)^2"
    assert R.render(R.reduce_even_odd(2, 3)) == "9/2*z(5) - 2*z(2)*z(3)"


@pytest.mark.parametrize("text", ["z(", "2*y(3)", "z(2)+", "*z(2)"])
def test_parse_rejects(text):
    with pytest.raises(E.DomainError):
        R.parse(text)


@given(st.lists(st.tuples(st.lists(st.integers(2, 7), max_size=3),
                          st.fractions(min_value=-5, max_value=5, max_denominator=9)), max_size=5))
def test_parse_render_inverse(pairs):
    e = ZetaExpression.build(pairs)
    assert R.parse(R.render(e)) == e


# -- reductions -----------------------------------------------------------------------------------

def test_reduce_s1_examples():
    assert R.reduce_s1(2) == zeta(3)
    assert R.reduce_s1(3) == zeta(4, coef=Fraction(3, 2)) - zeta(2, 2, coef=Fraction(1, 2))
    assert R.reduce_s1(4) == zeta(5, coef=2) - zeta(2, 3)
    with pytest.raises(E.DomainError):
        R.reduce_s1(1)


def test_reduce_even_odd_examples():
    assert R.reduce_even_odd(2, 1) == R.reduce_s1(2)
    assert R.reduce_even_odd(2, 3) == zeta(5, coef=Fraction(9, 2)) - zeta(2, 3, coef=2)
    assert R.reduce_swap(3, 2) == zeta(5, coef=Fraction(-11, 2)) + zeta(2, 3, coef=3)


def test_reflect_examples():
    assert R.reflect(2, 2) == zeta(2, 2) - zeta(4)
    assert R.reflect(2, 3) == zeta(2, 3) - zeta(5)
    with pytest.raises(E.DomainError):
        R.reflect(1, 3)
    assert R.reflect(1, 3, formal=True) == -zeta(4)


@pytest.mark.parametrize("a,b", [(3, 2), (2, 2), (4, 4), (0, 3), (-2, 3)])
def test_parity_errors(a, b):
    with pytest.raises(E.ParityError):
        R.reduce_even_odd(a, b)
    with pytest.raises(E.ParityError):
        R.reduce_swap(b, a)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 13, 2) for b in range(1, 13, 2) if a + b <= 13])
def test_consistency_exact(a, b):
    # zeta(a,b) + zeta(b,a) reproduces the reflection formula exactly
    assert R.reduce_even_odd(a, b) + R.reduce_swap(b, a) == R.reflect(a, b, formal=True)


@given(even, odd)
def test_reductions_idempotent(a, b):
    e = R.reduce_even_odd(a, b)
    assert e.canonical() == e
    assert R.parse(str(e)) == e


@given(st.integers(2, 9), st.integers(2, 9))
def test_reflect_symmetric(s, t):
    assert R.reflect(s, t) == R.reflect(t, s)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 9, 2) for b in range(1, 9, 2) if a + b <= 9])
def test_numeric_faithfulness(ctx30, a, b):
    num = mzv_eval(MZVIndex.of(a, b), ctx30).value
    assert abs(R.expr_eval(R.reduce_even_odd(a, b), ctx30).value - num) < 1e-25
    if b >= 3:
        swap = mzv_eval(MZVIndex.of(b, a), ctx30).value
        assert abs(R.expr_eval(R.reduce_swap(b, a), ctx30).value - swap) < 1e-25


def test_numeric_examples(ctx30):
    mp = ctx30.mp
    assert abs(R.expr_eval(R.reduce_s1(3), ctx30).value - mp.pi ** 4 / 360) < 1e-35
    v = R.expr_eval(R.reduce_even_odd(2, 3), ctx30).value
    assert mp.nstr(v, 7) == "0.7115662"
    assert R.expr_eval(ZetaExpression(), ctx30).value == 0
    assert abs(R.expr_eval(zeta(3), ctx30).value - mp.zeta(3)) < 1e-35
    # zeta(3,2) + zeta(2,3) = zeta(2) zeta(3) - zeta(5)
    s = R.expr_eval(R.reduce_swap(3, 2) + R.reduce_even_odd(2, 3), ctx30).value
    assert abs(s - (mp.zeta(2) * mp.zeta(3) - mp.zeta(5))) < 1e-35


# -- sum formula ----------------------------------------------------------------------------------

def test_sum_formula_compositions():
    assert R.sum_formula_compositions(1, 0) == [MZVIndex.of(2)]
    assert R.sum_formula_compositions(2, 0) == [MZVIndex.of(2, 1)]
    assert set(R.sum_formula_compositions(1, 2)) == {MZVIndex.of(4)}
    assert set(R.sum_formula_compositions(2, 1)) == {MZVIndex.of(3, 1), MZVIndex.of(2, 2)}
    with pytest.raises(E.DomainError):
        R.sum_formula_compositions(0, 1)


@given(st.integers(1, 5), st.integers(0, 5))
def test_sum_formula_compositions_shape(r, s):
    idxs = R.sum_formula_compositions(r, s)
    from math import comb
    assert len(idxs) == comb(r + s - 1, r - 1)
    assert len(set(idxs)) == len(idxs)
    for i in idxs:
        assert i.depth == r and i.weight == r + s + 1 and i.convergent
