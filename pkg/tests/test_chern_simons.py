from fractions import Fraction

from dualcalc.chern_simons import (check_pair_reduction, w_one, w_one_lambda,
                                   w_pair, w_pair_lambda)
from dualcalc.partitions import enumerate_partitions, size
from dualcalc.qfunc import QFunction, ULaurent
from dualcalc.scalars import GaussianRational
from dualcalc.series import sin_expand


def test_w_one_empty_and_single():
    assert w_one(()) == QFunction.const(1)
    # 1/(2 sin(lambda/2))
    assert w_one((1,)) == QFunction(-1, ULaurent.const(1), ULaurent.bracket(1))


def test_w_one_two_cells():
    # 1/(2 sin(lambda/2) 2 sin(lambda))
    expect = QFunction(-2, ULaurent.const(1),
                       ULaurent.bracket(1) * ULaurent.bracket(2))
    assert w_one((2,)) == expect
    assert w_one((1, 1)) == expect  # ratio part is 1 for (1,1)


def test_w_one_floor():
    for n in range(0, 7):
        for mu in enumerate_partitions(n):
            s = w_one_lambda(mu, 3)
            if n:
                assert s.valuation() == -n


def test_w_one_lambda_inverse_sine():
    s = w_one_lambda((1,), 4)
    assert s.scalar_coeff(-1) == GaussianRational(1)
    assert s.scalar_coeff(1) == GaussianRational(Fraction(1, 24))
    # independent oracle: invert the sine series directly
    assert s.eq_through(sin_expand(1, 8).inverse(), -1, 3)


def test_w_pair_basics():
    assert w_pair((), ()) == QFunction.const(1)
    # mu=(1), nu=(): -q^{1/2}/(1-q) = -u/(1-u^2)
    expect = QFunction(2, ULaurent.mono(1), ULaurent.const(1) - ULaurent.mono(2))
    assert w_pair((1,), ()) == expect
    # mu=nu=(1): q*(1/(1-q)^2 + q^{-1})
    one_minus_q = ULaurent.const(1) - ULaurent.mono(2)
    s11 = QFunction(0, ULaurent.const(1), one_minus_q * one_minus_q)
    expect11 = (s11 + QFunction.u_mono(-2)).mul_u_power(2)
    assert w_pair((1,), (1,)) == expect11


def test_w_pair_symmetry():
    for a in range(0, 6):
        for b in range(0, 6):
            for mu in enumerate_partitions(a):
                for nu in enumerate_partitions(b):
                    assert w_pair(mu, nu) == w_pair(nu, mu)


def test_pair_reduction_bridge():
    for n in range(0, 6):
        for mu in enumerate_partitions(n):
            assert check_pair_reduction(mu)


def test_w_pair_lambda_cached():
    a = w_pair_lambda((2, 1), (1,), 4)
    b = w_pair_lambda((2, 1), (1,), 4)
    assert a is b
