from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest

from dualcalc.errors import UsageError
from dualcalc.hurwitz import (burnside_phi, double_hurwitz, elsv_I,
                              hurwitz_number, psi_from_asymptotics,
                              ramification_order)
from dualcalc.partitions import enumerate_partitions, length, size, zmu
from dualcalc.scalars import GaussianRational


def brute_hurwitz(g, mu):
    """Count tuples of transpositions in S_n with product in class mu.

    H_{g,mu} = |{(t_1..t_r): t_1...t_r has cycle type mu, transitive}| / n!
    with r = 2g-2+|mu|+l(mu).  Only feasible for tiny n, r.
    """
    n = size(mu)
    r = ramification_order(g, mu)
    trans = [p for p in permutations(range(n)) if _cycle_type(p) == (2,) + (1,) * (n - 2)]
    ident = tuple(range(n))
    count = 0
    for tup in product(trans, repeat=r):
        p = ident
        for t in tup:
            p = tuple(t[p[i]] for i in range(n))
        if _cycle_type_sorted(p) == mu and _transitive(tup, n):
            count += 1
    return Fraction(count, factorial(n))


def _cycle_type(p):
    return tuple(sorted(_cycles(p), reverse=True) + [])


def _cycle_type_sorted(p):
    return tuple(sorted(_cycles(p), reverse=True))


def _cycles(p):
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        ln, x = 0, s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            ln += 1
        out.append(ln)
    return out


def _transitive(tup, n):
    if n == 1:
        return True
    adj = {i: set() for i in range(n)}
    for t in tup:
        for i in range(n):
            if t[i] != i:
                adj[i].add(t[i])
                adj[t[i]].add(i)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def test_seed_values():
    assert hurwitz_number(0, (1,)) == 1
    assert hurwitz_number(0, (2,)) == Fraction(1, 2)
    for g in range(1, 4):
        assert hurwitz_number(g, (1,)) == 0


def test_brute_force_small():
    assert brute_hurwitz(0, (2,)) == Fraction(1, 2)
    assert brute_hurwitz(0, (1, 1)) == Fraction(1, 2)
    assert brute_hurwitz(0, (3,)) == 1
    assert brute_hurwitz(1, (2,)) == Fraction(1, 2)
    for g, mu in [(0, (2,)), (0, (1, 1)), (0, (3,)), (1, (2,))]:
        assert hurwitz_number(g, mu) == brute_hurwitz(g, mu)


def test_phi_structure():
    s = burnside_phi((1,), 6)
    assert s.scalar_coeff(0) == GaussianRational(1)
    assert all(not s.coeff(j) for j in range(1, 6))
    s2 = burnside_phi((2,), 6)
    assert s2.scalar_coeff(1) == GaussianRational(Fraction(1, 2))
    assert s2.scalar_coeff(0) == GaussianRational(0)
    with pytest.raises(UsageError):
        burnside_phi((1,), 0)


def test_oracle_equivalence_small():
    for n in range(1, 5):
        for mu in enumerate_partitions(n):
            for g in range(0, 3):
                assert hurwitz_number(g, mu, "burnside") == \
                    hurwitz_number(g, mu, "cutjoin"), (g, mu)


def test_nonnegative():
    for n in range(1, 6):
        for mu in enumerate_partitions(n):
            for g in range(0, 3):
                assert hurwitz_number(g, mu) >= 0


def test_double_hurwitz_basics():
    one = double_hurwitz((1,), (1,), 5)
    assert one.scalar_coeff(0) == GaussianRational(1)
    assert all(not one.coeff(j) for j in range(1, 5))
    # lambda^0 coefficient is delta_{mu nu} / z_mu by column orthogonality
    for n in range(1, 5):
        for mu in enumerate_partitions(n):
            for nu in enumerate_partitions(n):
                s = double_hurwitz(mu, nu, 3)
                expect = Fraction(1, zmu(mu)) if mu == nu else Fraction(0)
                assert s.coeff(0).as_scalar() == GaussianRational(expect)
    # kappa parity: mu=(2), nu=(1,1) gives an odd series
    s = double_hurwitz((2,), (1, 1), 7)
    for j in range(0, 7, 2):
        assert not s.coeff(j)
    assert s.scalar_coeff(1) != GaussianRational(0)
    with pytest.raises(UsageError):
        double_hurwitz((2,), (1,), 5)


def test_elsv_genus0_closed_form():
    # bare integral = |mu|^(l-3) for l(mu) = 3, 4 and |mu| <= 7
    for n in range(3, 8):
        for mu in enumerate_partitions(n):
            if length(mu) in (3, 4):
                _, bare = elsv_I(0, mu)
                assert bare == Fraction(size(mu)) ** (length(mu) - 3), mu


def test_elsv_seeds():
    i_val, bare = elsv_I(0, (1,))
    assert i_val == 1
    _, bare3 = elsv_I(0, (1, 1, 1))
    assert bare3 == 1


def test_psi_small_values():
    assert psi_from_asymptotics(0, (0, 0, 0)) == 1
    assert psi_from_asymptotics(1, (1,)) == Fraction(1, 24)
    assert psi_from_asymptotics(0, (1, 0, 0, 0)) == 1
    assert psi_from_asymptotics(1, (0, 2)) == Fraction(1, 24)
    assert psi_from_asymptotics(1, (1, 1)) == Fraction(1, 24)
    assert psi_from_asymptotics(2, (4,)) == Fraction(1, 1152)


def test_psi_preconditions():
    with pytest.raises(UsageError):
        psi_from_asymptotics(0, (1, 0, 0))  # dimension violated
    with pytest.raises(UsageError):
        psi_from_asymptotics(0, (0, 0))     # unstable
