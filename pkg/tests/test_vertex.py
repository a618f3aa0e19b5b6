from fractions import Fraction

import pytest

from dualcalc.chern_simons import w_pair
from dualcalc.errors import VerificationFailure
from dualcalc.partitions import kappa
from dualcalc.qfunc import QFunction
from dualcalc.vertex import (extract_gw, gv_forward, gv_invert,
                             local_p2_free_energy, local_p2_term_count,
                             local_p2_z, rebuild_partition_function)


def test_degree_zero_is_one():
    assert local_p2_z(0)[0] == QFunction.const(1)


def test_term_counts():
    assert local_p2_term_count(2) == 9
    assert local_p2_term_count(3) == 22


def test_degree_one_slice_explicit():
    # three placements of the single box, each contributing
    # -W((1),0) W(0,0) W(0,(1)) with kappa-prefactor 1
    z1 = local_p2_z(1)[1]
    single = w_pair((1,), ()) * w_pair((), ()) * w_pair((), (1,))
    expect = -(single + single + single)
    assert z1 == expect


def test_free_energy_low_degrees():
    z = local_p2_z(3)
    f = local_p2_free_energy(3)
    assert f[1] == z[1]
    assert f[2] == z[2] - (z[1] * z[1]).scale(Fraction(1, 2))


def test_gw_values_and_parity():
    n_table = extract_gw(3, 2)
    # degree-1 genus-0 slice comes out to 3 covers of the hyperplane class
    assert n_table[(0, 1)] == 3
    # denominators divide d^3-products
    for d in (1, 2, 3):
        assert (n_table[(0, d)] * d ** 3).denominator in (1, 2, 4, 8)


def test_gv_integrality_window():
    n_table = extract_gw(3, 2)
    gv = gv_invert(n_table, 3, 2)
    assert all(isinstance(v, int) for v in gv.values())
    assert gv[(0, 1)] == 3


def test_gv_zero_maps_to_zero():
    zeros = {(g, d): Fraction(0) for g in range(3) for d in range(1, 4)}
    assert all(v == 0 for v in gv_invert(zeros, 3, 2).values())


def test_gv_forward_round_trip_synthetic():
    # synthetic integer tables round-trip exactly (d <= 4, g <= 3)
    synth = {(g, d): ((-1) ** (g + d)) * (3 * g + 2 * d - 1)
             for g in range(4) for d in range(1, 5)}
    n_table = gv_forward(synth, 4, 3)
    assert gv_invert(n_table, 4, 3) == synth


def test_gv_non_integer_rejected():
    bad = {(g, d): Fraction(0) for g in range(2) for d in range(1, 3)}
    bad[(0, 1)] = Fraction(1, 3)
    with pytest.raises(VerificationFailure):
        gv_invert(bad, 2, 1)


def test_exp_log_round_trip():
    assert rebuild_partition_function(3)


def test_u_exponent_integrality():
    # q^{(1/2) sum kappa} is an integral u-power since kappa is even
    for nu in [(1,), (2,), (1, 1), (2, 1)]:
        assert kappa(nu) % 2 == 0
