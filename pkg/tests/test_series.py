from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualcalc.errors import InternalError, UsageError
from dualcalc.scalars import GaussianRational
from dualcalc.series import LambdaSeries, TauLaurent, exp_monomial, sin_expand


# -- TauLaurent ---------------------------------------------------------------

def test_tau_basic():
    t = TauLaurent({1: 1, -2: Fraction(1, 3)})
    assert (t - t) == TauLaurent()
    assert t * TauLaurent.scalar(3) == TauLaurent({1: 3, -2: 1})
    assert t.subs_inverse() == TauLaurent({-1: 1, 2: Fraction(1, 3)})
    assert t.deriv() == TauLaurent({0: 1, -3: Fraction(-2, 3)})
    assert t.eval(2) == GaussianRational(Fraction(2) + Fraction(1, 12))


def test_tau_divexact():
    a = TauLaurent({0: 1, 1: 2, 2: 1})   # (1+tau)^2
    b = TauLaurent({0: 1, 1: 1})
    assert a.divexact(b) == b
    with pytest.raises(InternalError):
        TauLaurent({0: 1, 2: 1}).divexact(b)


def test_tau_divexact_laurent_shift():
    a = TauLaurent({-1: 2, 0: 2})
    b = TauLaurent({-1: 1})
    assert a.divexact(b) == TauLaurent({0: 2, 1: 2})


# -- LambdaSeries -------------------------------------------------------------

def mono(e, v, trunc):
    return LambdaSeries.mono(e, v, trunc)


def test_monomial_shift_product():
    # (L + L^2) * L^{-1} = 1 + L
    a = LambdaSeries.from_map({1: 1, 2: 1}, 8)
    b = mono(-1, 1, 8)
    assert (a * b).eq_through(LambdaSeries.from_map({0: 1, 1: 1}, 6), -1, 6)


def test_div_identity():
    a = LambdaSeries.from_map({0: 1, 1: 1}, 8)
    q = a.div(a)
    assert q.eq_through(LambdaSeries.one(8), 0, 8)


def test_geometric_series_oracle():
    # sum_k L^k times (1 - L) = 1, checked by direct convolution
    trunc = 8
    geo = LambdaSeries.from_map({k: 1 for k in range(trunc)}, trunc)
    one_minus = LambdaSeries.from_map({0: 1, 1: -1}, trunc)
    prod = geo * one_minus
    expect = LambdaSeries.one(prod.trunc)
    assert prod.eq_through(expect, 0, prod.trunc)


def test_inverse_of_unit():
    a = LambdaSeries.from_map({0: 1, 1: Fraction(1, 2), 3: -2}, 9)
    prod = a * a.inverse()
    assert prod.eq_through(LambdaSeries.one(prod.trunc), 0, prod.trunc)


def test_div_requires_invertible_lead():
    a = LambdaSeries.one(6)
    b = LambdaSeries(0, [])
    with pytest.raises(ZeroDivisionError):
        a.div(b)


def test_exp_log_round_trip():
    s = LambdaSeries.from_map({1: 1, 2: Fraction(-1, 3)}, 9)
    assert s.exp().log().eq_through(s, 1, 9)
    c = LambdaSeries.from_map({0: 1, 1: 2, 4: Fraction(1, 5)}, 9)
    assert c.log().exp().eq_through(c, 0, 9)


def test_exp_zero_is_one():
    z = LambdaSeries.from_map({1: 0}, 7)
    assert z.exp().eq_through(LambdaSeries.one(7), 0, 7)


def test_exp_requires_valuation():
    with pytest.raises(UsageError):
        LambdaSeries.one(5).exp()
    with pytest.raises(UsageError):
        LambdaSeries.from_map({1: 1, 2: 1}, 6).log()


def test_sin_expand_values():
    # m=1, trunc 4: L - L^3/24
    s = sin_expand(1, 4)
    assert s.scalar_coeff(1) == GaussianRational(1)
    assert s.scalar_coeff(2) == GaussianRational(0)
    assert s.scalar_coeff(3) == GaussianRational(Fraction(-1, 24))
    assert sin_expand(0, 5).is_exact_zero()
    for d in (1, 2, 5):
        assert sin_expand(d, 6).scalar_coeff(1) == GaussianRational(d)


def test_exp_monomial_matches_series_exp():
    a = exp_monomial(Fraction(3, 2), 1, 8)
    b = LambdaSeries.mono(1, Fraction(3, 2), 8).exp()
    assert a.eq_through(b, 0, 8)


def test_tau_plumbing_on_series():
    s = LambdaSeries.from_map({0: TauLaurent({1: 1}), 2: TauLaurent({-1: 2})}, 5)
    d = s.tau_deriv()
    assert d.coeff(0) == TauLaurent.scalar(1)
    assert d.coeff(2) == TauLaurent({-2: -2})
    e = s.tau_eval(Fraction(1, 2))
    assert e.coeff(2) == TauLaurent.scalar(4)
    inv = s.tau_inverse()
    assert inv.coeff(0) == TauLaurent({-1: 1})


def test_subst_scale():
    s = LambdaSeries.from_map({-1: 1, 2: 3}, 4)
    t = s.subst_scale(Fraction(2))
    assert t.scalar_coeff(-1) == GaussianRational(Fraction(1, 2))
    assert t.scalar_coeff(2) == GaussianRational(12)


small_frac = st.fractions(min_value=-8, max_value=8, max_denominator=4)


def series_strategy(floor=-2, trunc=5):
    n = trunc - floor
    return st.lists(small_frac, min_size=n, max_size=n).map(
        lambda cs: LambdaSeries(floor, [TauLaurent.scalar(c) for c in cs]))


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_series_ring_axioms(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    lo, hi = lhs.window_with(rhs)
    assert lhs.eq_through(rhs, lo, hi)
    d1 = a * (b + c)
    d2 = a * b + a * c
    lo, hi = d1.window_with(d2)
    assert d1.eq_through(d2, lo, hi)
