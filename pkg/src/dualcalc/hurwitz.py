"""Hurwitz numbers two ways, the ELSV normalization, and psi-extraction.

* Burnside route: the connected generating series Phi_mu(lambda) is read off
  the character sum sum_nu chi_nu(mu)/z_mu e^{kappa_nu lambda/2} dim R_nu/|nu|!
  by Moebius inversion over set partitions of the parts of mu.
* Cut-and-join route: the same numbers are grown order by order from the
  genus-0 degree-1 seed by matching coefficients of the cut-and-join
  evolution d(Phi)/d(lambda) = CJ(Phi) in the series ring.
* ELSV: I_{g,mu} = H_{g,mu} / r! with r = 2g-2+|mu|+l(mu); the bare linear
  Hodge integral is I scaled by |Aut(mu)| prod(mu_i!/mu_i^mu_i).
* psi_from_asymptotics: interpolates the bare-integral polynomial in the
  ramification profile and reads psi-intersection numbers off its top-degree
  homogeneous part.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import InternalError, UsageError, VerificationFailure
from .partitions import (Partition, aut, character, enumerate_partitions,
                         hook_product, kappa, length, size, zmu)
from .pseries import PSeries
from .series import LambdaSeries

Frac = Fraction


def ramification_order(g: int, mu: Partition) -> int:
    """r = 2g - 2 + |mu| + l(mu), the simple-branch-point count."""
    return 2 * g - 2 + size(mu) + length(mu)


# ---------------------------------------------------------------------------
# Burnside route
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _disconnected_coeff(mu: Partition, order: int) -> Tuple[Frac, ...]:
    """Coefficients 0..order of sum_nu chi_nu(mu)/z_mu e^{kappa_nu L/2} / hooks."""
    z = zmu(mu)
    by_half_kappa: Dict[int, Frac] = {}
    for nu in enumerate_partitions(size(mu)):
        chi = character(nu, mu)
        if not chi:
            continue
        hk = kappa(nu) // 2
        by_half_kappa[hk] = by_half_kappa.get(hk, Frac(0)) + Frac(chi, z * hook_product(nu))
    out = [Frac(0)] * (order + 1)
    for hk, c in by_half_kappa.items():
        if not c:
            continue
        p = Frac(1)
        for j in range(order + 1):
            out[j] += c * p
            p = p * hk / (j + 1)
    return tuple(out)


def _set_partitions(items: Sequence[int]) -> Iterator[List[List[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


def _series_mul(a: Sequence[Frac], b: Sequence[Frac], order: int) -> List[Frac]:
    out = [Frac(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j in range(min(len(b), order + 1 - i)):
            if b[j]:
                out[i + j] += x * b[j]
    return out


@lru_cache(maxsize=None)
def _connected_coeff(mu: Partition, order: int) -> Tuple[Frac, ...]:
    """Connected coefficient of p_mu, via Moebius inversion on part blocks."""
    if not mu:
        raise UsageError("connected series needs a nonempty profile")
    total = [Frac(0)] * (order + 1)
    positions = list(range(len(mu)))
    for block_partition in _set_partitions(positions):
        w = Frac((-1) ** (len(block_partition) - 1) * factorial(len(block_partition) - 1))
        prod = [Frac(1)] + [Frac(0)] * order
        for block in block_partition:
            sub = tuple(sorted((mu[i] for i in block), reverse=True))
            w *= aut(sub)
            prod = _series_mul(prod, _disconnected_coeff(sub, order), order)
        for j in range(order + 1):
            total[j] += w * prod[j]
    a = aut(mu)
    return tuple(t / a for t in total)


def burnside_phi(mu: Partition, trunc: int) -> LambdaSeries:
    """Connected series Phi_mu = sum_g H_{g,mu} lambda^r / r! through trunc.

    Only exponents with r = |mu| + l(mu) (mod 2) appear; this parity is
    asserted.
    """
    if size(mu) < 1:
        raise UsageError("profile must be nonempty")
    r0 = ramification_order(0, mu)
    if trunc <= max(r0, 0):
        raise UsageError("truncation too small to contain any genus term")
    co = _connected_coeff(mu, trunc - 1)
    par = (size(mu) + length(mu)) % 2
    for j, c in enumerate(co):
        if c and j % 2 != par:
            raise InternalError(f"parity violation in Phi_{mu} at order {j}")
    return LambdaSeries.from_map({j: c for j, c in enumerate(co) if c}, trunc)


def _hurwitz_burnside(g: int, mu: Partition) -> Frac:
    r = ramification_order(g, mu)
    if r < 0:
        return Frac(0)
    co = _connected_coeff(mu, r)
    return co[r] * factorial(r)


# ---------------------------------------------------------------------------
# cut-and-join route
# ---------------------------------------------------------------------------

def _slice(cap: int, co: Dict[Tuple[Partition, ...], Frac]) -> PSeries:
    return PSeries(1, (cap,), {k: LambdaSeries.mono(0, v, 1) for k, v in co.items() if v})


def _quad_term(a: PSeries, b: PSeries, cap: int) -> PSeries:
    """(1/2) sum_{ordered i,j} i j p_{i+j} (dA/dp_i)(dB/dp_j)."""
    out = None
    da = {i: a.pderiv(0, i) for i in range(1, cap + 1)}
    db = {j: b.pderiv(0, j) for j in range(1, cap + 1)}
    for i, ai in da.items():
        if not ai.co:
            continue
        for j, bj in db.items():
            if i + j > cap or not bj.co:
                continue
            piece = (ai * bj).mul_parts(0, i + j).scale(Frac(i * j, 2))
            out = piece if out is None else out + piece
    return out if out is not None else PSeries(1, (cap,), {})


@lru_cache(maxsize=None)
def _cutjoin_slices(cap: int, orders: int) -> Tuple[Dict[Tuple[Partition, ...], Frac], ...]:
    """Coefficient slices of Phi by lambda-order, grown from the degree-1 seed."""
    slices: List[PSeries] = [_slice(cap, {((1,),): Frac(1)})]
    for r in range(1, orders + 1):
        rhs = slices[r - 1].cut_join_linear(0)
        for a in range(r):
            b = r - 1 - a
            rhs = rhs + _quad_term(slices[a], slices[b], cap)
        slices.append(rhs.scale(Frac(1, r)))
    out = []
    for s in slices:
        out.append({k: v.scalar_coeff(0).as_fraction() for k, v in s.co.items() if v.co})
    return tuple(out)


def _hurwitz_cutjoin(g: int, mu: Partition) -> Frac:
    r = ramification_order(g, mu)
    if r < 0:
        return Frac(0)
    cap = size(mu)
    slices = _cutjoin_slices(cap, r)
    val = slices[r].get((mu,), Frac(0))
    return val * factorial(r)


def hurwitz_number(g: int, mu: Partition, method: str = "burnside") -> Frac:
    """Connected simple Hurwitz number H_{g,mu}."""
    if g < 0:
        raise UsageError("genus must be nonnegative")
    if size(mu) < 1:
        raise UsageError("profile must be nonempty")
    if method == "burnside":
        return _hurwitz_burnside(g, mu)
    if method == "cutjoin":
        return _hurwitz_cutjoin(g, mu)
    raise UsageError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# double Hurwitz series
# ---------------------------------------------------------------------------

def double_hurwitz(mu: Partition, nu: Partition, trunc: int) -> LambdaSeries:
    """Disconnected two-profile series sum_eta chi(mu) chi(nu)/(z z) e^{kappa L/2}."""
    if size(mu) != size(nu):
        raise UsageError("profiles must have equal sizes")
    zz = zmu(mu) * zmu(nu)
    by_half_kappa: Dict[int, Frac] = {}
    for eta in enumerate_partitions(size(mu)):
        c = character(eta, mu) * character(eta, nu)
        if not c:
            continue
        hk = kappa(eta) // 2
        by_half_kappa[hk] = by_half_kappa.get(hk, Frac(0)) + Frac(c, zz)
    out = [Frac(0)] * trunc
    for hk, c in by_half_kappa.items():
        if not c:
            continue
        p = Frac(1)
        for j in range(trunc):
            out[j] += c * p
            p = p * hk / (j + 1)
    return LambdaSeries.from_map({j: c for j, c in enumerate(out) if c}, trunc)


# ---------------------------------------------------------------------------
# ELSV normalization
# ---------------------------------------------------------------------------

def elsv_I(g: int, mu: Partition) -> Tuple[Frac, Frac]:
    """(I_{g,mu}, bare linear Hodge integral).

    I = H / r!; bare = I * |Aut(mu)| * prod(mu_i! / mu_i^{mu_i}).
    """
    r = ramification_order(g, mu)
    if r < 0:
        raise UsageError(f"unstable profile (g={g}, mu={mu})")
    h = _hurwitz_burnside(g, mu)
    i_val = h / factorial(r)
    bare = i_val * aut(mu)
    for p in mu:
        bare *= Frac(factorial(p), p ** p)
    return i_val, bare


# ---------------------------------------------------------------------------
# psi-class intersections from large-profile asymptotics
# ---------------------------------------------------------------------------

def _exponent_multisets(total_max: int, n: int) -> List[Partition]:
    out: List[Partition] = []
    for m in range(total_max + 1):
        for rho in enumerate_partitions(m):
            if len(rho) <= n:
                out.append(rho)
    return out


def _monomial_symmetric(rho: Partition, point: Sequence[int]) -> Frac:
    n = len(point)
    padded = tuple(rho) + (0,) * (n - len(rho))
    seen = set()
    total = 0
    for perm in _distinct_permutations(padded):
        if perm in seen:
            continue
        seen.add(perm)
        v = 1
        for x, e in zip(point, perm):
            v *= x ** e
        total += v
    return Frac(total)


def _distinct_permutations(items: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    from itertools import permutations

    seen = set()
    for p in permutations(items):
        if p not in seen:
            seen.add(p)
            yield p


def _sample_points(n: int, count: int) -> List[Tuple[int, ...]]:
    """Strictly decreasing positive n-tuples, smallest sums first."""
    out: List[Tuple[int, ...]] = []
    top = n
    while len(out) < count:
        top += 1
        fresh = [tuple(sorted(c, reverse=True))
                 for c in combinations(range(1, top + 1), n)]
        fresh = [c for c in fresh if c not in out]
        fresh.sort(key=lambda c: (sum(c), c))
        out.extend(fresh)
    out.sort(key=lambda c: (sum(c), c))
    return out[:count]


@lru_cache(maxsize=None)
def _bare_polynomial(g: int, n: int) -> Dict[Partition, Frac]:
    """Interpolated bare-integral polynomial, in the monomial-symmetric basis.

    Sample rows are chosen greedily for rank (consecutive combination
    tuples alone can be collinear for the quadratic monomials), and only the
    selected profiles are fed to the Hurwitz evaluation.  Two extra points
    provide a consistency check on the interpolation degree.
    """
    deg = 3 * g - 3 + n
    basis = _exponent_multisets(deg, n)
    count = len(basis)
    candidates = _sample_points(n, 4 * count + 8)
    pts: List[Tuple[int, ...]] = []
    rows: List[List[Frac]] = []
    echelon: List[List[Frac]] = []
    for pt in candidates:
        row = [_monomial_symmetric(rho, pt) for rho in basis]
        if len(pts) < count:
            if not _adds_rank(echelon, row):
                continue
        pts.append(pt)
        rows.append(row)
        if len(pts) == count + 2:
            break
    if len(pts) < count:
        raise InternalError("singular interpolation system; add sample points")
    rhs = [elsv_I(g, tuple(pt))[1] for pt in pts]
    sol = _solve_overdetermined(rows, rhs, count)
    return {rho: c for rho, c in zip(basis, sol)}


def _adds_rank(echelon: List[List[Frac]], row: Sequence[Frac]) -> bool:
    work = list(row)
    for base in echelon:
        piv = next(i for i, x in enumerate(base) if x)
        if work[piv]:
            f = work[piv] / base[piv]
            work = [x - f * y for x, y in zip(work, base)]
    if any(work):
        echelon.append(work)
        return True
    return False


def _solve_overdetermined(rows: List[List[Frac]], rhs: List[Frac], ncols: int) -> List[Frac]:
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    pivots = []
    ri = 0
    for col in range(ncols):
        piv = None
        for r in range(ri, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise InternalError("singular interpolation system; add sample points")
        m[ri], m[piv] = m[piv], m[ri]
        pv = m[ri][col]
        m[ri] = [x / pv for x in m[ri]]
        for r in range(nrows):
            if r != ri and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[ri])]
        pivots.append(col)
        ri += 1
        if ri == ncols:
            break
    # every leftover row must now be identically zero: consistency check
    for r in range(ri, nrows):
        if any(m[r]):
            raise VerificationFailure("interpolation data is not polynomial of the expected degree")
    sol = [Frac(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][ncols]
    return sol


def psi_from_asymptotics(g: int, ks: Sequence[int]) -> Frac:
    """<tau_{k_1} ... tau_{k_n}>_g via interpolation of Hurwitz data."""
    ks = tuple(int(k) for k in ks)
    n = len(ks)
    if n < 1:
        raise UsageError("need at least one insertion")
    if any(k < 0 for k in ks):
        raise UsageError("indices must be nonnegative")
    if 2 * g - 2 + n <= 0:
        raise UsageError(f"unstable moduli (g={g}, n={n})")
    if sum(ks) != 3 * g - 3 + n:
        raise UsageError("dimension constraint sum(k) = 3g-3+n violated")
    poly = _bare_polynomial(g, n)
    rho = tuple(sorted((k for k in ks if k), reverse=True))
    return poly.get(rho, Frac(0))
