from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualcalc.errors import UsageError
from dualcalc.qfunc import QFunction, ULaurent
from dualcalc.scalars import GaussianRational
from dualcalc.series import LambdaSeries, sin_expand


def q(num, den, ipow=0):
    return QFunction(ipow, ULaurent(num), ULaurent(den))


def test_reduction_cancels():
    # (u^2 - 1)/(u - 1) = u + 1
    f = q({2: 1, 0: -1}, {1: 1, 0: -1})
    assert f == q({1: 1, 0: 1}, {0: 1})


def test_bracket_to_sine():
    # (-i)(u - u^{-1}) = 2 sin(lambda/2)
    f = QFunction(1, ULaurent.bracket(1), ULaurent.const(1))
    got = f.to_lambda(8)
    assert got.eq_through(sin_expand(1, 8), 0, 8)


def test_const_expansion():
    assert QFunction.const(1).to_lambda(5).eq_through(LambdaSeries.one(5), 0, 5)


def test_inverse_bracket_expansion():
    # value = 1/(2 sin(lambda/2)): 1/L + L/24 + 7 L^3 / 5760 + ...
    f = QFunction(-1, ULaurent.const(1), ULaurent.bracket(1))
    s = f.to_lambda(4)
    assert s.floor == -1
    assert s.scalar_coeff(-1) == GaussianRational(1)
    assert s.scalar_coeff(0) == GaussianRational(0)
    assert s.scalar_coeff(1) == GaussianRational(Fraction(1, 24))
    # independent oracle: series inversion of sin_expand(1, .)
    inv = sin_expand(1, 8).inverse()
    assert s.eq_through(inv, -1, 3)


def test_add_same_phase_and_mismatch():
    a = q({1: 1}, {0: 1}, ipow=1)
    b = q({0: 2}, {0: 1}, ipow=1)
    assert (a + b) == q({1: 1, 0: 2}, {0: 1}, ipow=1)
    c = q({0: 1}, {0: 1}, ipow=0)
    with pytest.raises(UsageError):
        a + c


def test_neg_folds_phase():
    a = q({1: 1}, {0: 1}, ipow=1)
    assert (-a).ipow == 1
    assert (-a).num == ULaurent({1: -1})
    assert a + (-a) == QFunction.zero()


def test_q_series_matches_geometric():
    # 1/(1-q) = 1 + q + q^2 + ...
    f = q({0: 1}, {0: 1, 2: -1})
    assert f.q_series(4) == [1, 1, 1, 1, 1]


small_frac = st.fractions(min_value=-5, max_value=5, max_denominator=3)
upoly = st.dictionaries(st.integers(-3, 3), small_frac, max_size=3).map(ULaurent)
nonzero_upoly = upoly.filter(bool)


@settings(max_examples=100, deadline=None)
@given(nonzero_upoly, nonzero_upoly, st.dictionaries(st.integers(-2, 2), small_frac,
                                                     min_size=1, max_size=2).map(ULaurent).filter(bool),
       st.dictionaries(st.integers(-2, 2), small_frac, min_size=1, max_size=2).map(ULaurent).filter(bool))
def test_to_lambda_is_ring_hom(n1, n2, d1, d2):
    f = QFunction(0, n1, d1)
    g = QFunction(0, n2, d2)
    trunc = 6
    lhs = (f * g).to_lambda(trunc)
    rhs = f.to_lambda(trunc) * g.to_lambda(trunc)
    lo, hi = lhs.window_with(rhs)
    if hi > lo:
        assert lhs.eq_through(rhs, lo, hi)


@settings(max_examples=60, deadline=None)
@given(nonzero_upoly, nonzero_upoly, nonzero_upoly)
def test_qfunction_mul_assoc(a, b, c):
    fa = QFunction(0, a, ULaurent.const(1))
    fb = QFunction(0, b, ULaurent.const(1))
    fc = QFunction(1, c, ULaurent.const(1))
    assert (fa * fb) * fc == fa * (fb * fc)
