from fractions import Fraction

import pytest

from dualcalc.errors import UsageError
from dualcalc.hodge import (FramedSeries, b_constant, build_series,
                            convolution_check, elsv_limit_check,
                            framing_prefactor, hodge_extract,
                            initial_value_report, lambda_g_check, ov_term,
                            pde_residual, residual_window_ok,
                            slice_reduction_check, swap_symmetry_check)
from dualcalc.partitions import enumerate_partitions, length, size
from dualcalc.scalars import GR_I, GaussianRational
from dualcalc.series import LambdaSeries


@pytest.fixture(scope="module")
def fs3():
    return build_series(3, 11, families=1)


@pytest.fixture(scope="module")
def fs2fam():
    return build_series(2, 9, families=2)


def test_empty_key_is_one(fs3):
    c = fs3.disconnected.coeff(((),))
    assert c.eq_through(LambdaSeries.one(c.trunc), 0, c.trunc)


def test_p1_coefficient_is_inverse_sine(fs3):
    # coefficient of p_1 is tau-independent: 1/(2 sin(lambda/2))
    s = fs3.disconnected.coeff(((1,),))
    expect = ov_term(1).to_lambda(s.trunc)
    assert s.eq_through(expect, -1, s.trunc)


def test_single_part_floor(fs3):
    for d in (1, 2, 3):
        s = fs3.connected.coeff(((d,),))
        assert s.valuation() == -1


def test_pde_residual_one_family(fs3):
    res = pde_residual(fs3)
    assert res.is_zero_through_windows()
    # windows must cover the g <= 2 orders for every key
    assert residual_window_ok(res, lambda key: 2 * 2 - 2 + length(key[0]) + 1)


def test_pde_residual_degree_one_trivial():
    fs = build_series(1, 6, families=1)
    res = pde_residual(fs)
    assert res.is_zero_through_windows()


def test_initial_value(fs3):
    rep = initial_value_report(fs3)
    assert rep["ok"]
    assert rep["multi_part_vanish"] and rep["single_part_match"]
    assert rep["phase_by_degree"] == {1: "i^0", 2: "i^1", 3: "i^2"}


def test_framing_prefactor_structure():
    # degree |mu| + l - 2, lowest term degree l - 1, ends nonzero
    for n in range(1, 5):
        for mu in enumerate_partitions(n):
            a = framing_prefactor(mu)
            assert a.max_exp() == size(mu) + length(mu) - 2
            assert a.min_exp() == length(mu) - 1
            assert a.c[a.max_exp()] and a.c[a.min_exp()]


def test_hodge_extract_g0(fs3):
    # g=0 values follow the closed form |mu|^(l-3), including the
    # extension to l < 3
    for n in range(1, 4):
        for mu in enumerate_partitions(n):
            poly = hodge_extract(fs3, 0, mu)
            expect = Fraction(size(mu)) ** (length(mu) - 3)
            assert poly[0] == expect
            assert all(not c for c in poly[1:])


def test_hodge_extract_reality_and_degree(fs3):
    for g in (0, 1, 2):
        for n in range(1, 4):
            for mu in enumerate_partitions(n):
                poly = hodge_extract(fs3, g, mu)  # raises on any failure
                assert len(poly) <= 2 * g + 1


def test_lambda_g_values(fs3):
    assert b_constant(1) == Fraction(1, 24)
    assert b_constant(2) == Fraction(7, 5760)
    assert lambda_g_check(fs3, 1, (1,))
    assert lambda_g_check(fs3, 1, (2, 1))
    assert lambda_g_check(fs3, 2, (1,))
    # the (2,1) case carries b_1 |mu|^(2g+n-3) = (1/24) * 3^1 = 1/8 up to
    # the global sign (2g+n-3 = 1 for g=1, n=2)
    poly = hodge_extract(fs3, 1, (2, 1))
    assert abs(poly[0]) == Fraction(1, 8)


def test_elsv_limit(fs3):
    assert elsv_limit_check(fs3, g_max=2)


def test_convolution(fs3):
    assert convolution_check(fs3, tau_solve=1, tau_verify=(2, 3))


def test_two_family_pde(fs2fam):
    res = pde_residual(fs2fam)
    assert res.is_zero_through_windows()


def test_two_family_swap(fs2fam):
    assert swap_symmetry_check(fs2fam)


def test_two_family_slice_bridge(fs2fam):
    fs1 = build_series(2, 9, families=1)
    assert slice_reduction_check(fs2fam, fs1)


def test_family_count_guard(fs3, fs2fam):
    with pytest.raises(UsageError):
        initial_value_report(fs2fam)
    with pytest.raises(UsageError):
        swap_symmetry_check(fs3)
    with pytest.raises(UsageError):
        build_series(2, 6, families=3)
