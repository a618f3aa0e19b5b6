"""Framed triple-Hodge generating series (one and two partition families).

The disconnected series is assembled directly from character sums,
framing exponentials and the W building blocks:

    one family:  sum_nu chi_nu(mu)/z_mu e^{i (tau+1/2) kappa_nu lambda/2} W_nu
    two family:  sum   chi chi / (z z) e^{i (kappa+ tau + kappa- / tau) lambda/2}
                 W_{nu+, nu-}

The connected series is its logarithm.  The module verifies the cut-and-join
evolution in tau, the initial value at tau = 0, the degeneration onto the
Hurwitz series, the convolution with double Hurwitz numbers, and extracts
triple Hodge integrals through the framing prefactor.

Phase conventions.  With the sine-normalized W, the tau = 0 slice of the
series equals sum_d i^{d-1} p_d / (2 d sin(d lambda / 2)): each degree-d part
carries the phase i^{d-1} relative to the all-real form of the initial-value
display.  The phase is forced: the series itself, the framing prefactor
A(tau), and the cut-and-join evolution all carry it consistently, and any
attempt to remove it by rescaling p_d breaks the evolution equation.  The
initial-value check therefore pins the phase exactly and verifies the
identity in this documented normalization.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .chern_simons import w_one_lambda, w_pair_lambda
from .errors import InternalError, UsageError, VerificationFailure
from .hurwitz import burnside_phi, double_hurwitz
from .partitions import (Partition, aut, character, enumerate_partitions,
                         kappa, length, size, zmu)
from .pseries import PSeries, empty_key
from .qfunc import QFunction, ULaurent
from .scalars import GaussianRational, GR_I
from .series import LambdaSeries, TauLaurent

Frac = Fraction


# ---------------------------------------------------------------------------
# framing exponentials
# ---------------------------------------------------------------------------

def _framing_exp_one(kap: int, trunc: int) -> LambdaSeries:
    """e^{i (tau + 1/2) kap lambda / 2} as a series with tau-polynomial coefficients."""
    half_k = Frac(kap, 2)
    co: Dict[int, TauLaurent] = {}
    # (tau + 1/2)^m expanded by Pascal's rule
    pasc = [Frac(1)]
    scalar = GaussianRational(1)
    for m in range(trunc):
        co[m] = TauLaurent({j: scalar * (pasc[j] * Frac(1, factorial(m)))
                            for j in range(m + 1)})
        nxt = [Frac(0)] * (m + 2)
        for j, v in enumerate(pasc):
            nxt[j] += v * Frac(1, 2)
            nxt[j + 1] += v
        pasc = nxt
        scalar = scalar * GR_I * half_k
    return LambdaSeries.from_map(co, trunc)


def _framing_exp_two(kp: int, km: int, trunc: int) -> LambdaSeries:
    """e^{i (kappa+ tau + kappa- tau^{-1}) lambda / 2}."""
    co: Dict[int, TauLaurent] = {}
    # (kp tau + km / tau)^m expanded binomially
    poly = {0: Frac(1)}
    scalar = GaussianRational(1)
    for m in range(trunc):
        co[m] = TauLaurent({j: scalar * (v * Frac(1, factorial(m)))
                            for j, v in poly.items()})
        nxt: Dict[int, Frac] = {}
        for j, v in poly.items():
            if kp:
                nxt[j + 1] = nxt.get(j + 1, Frac(0)) + v * kp
            if km:
                nxt[j - 1] = nxt.get(j - 1, Frac(0)) + v * km
        poly = {j: v * Frac(1, 2) for j, v in nxt.items() if v}
        scalar = scalar * GR_I
        if not poly and m + 1 < trunc:
            for mm in range(m + 1, trunc):
                co[mm] = TauLaurent()
            break
    return LambdaSeries.from_map(co, trunc)


# ---------------------------------------------------------------------------
# series construction
# ---------------------------------------------------------------------------

@dataclass
class FramedSeries:
    families: int
    caps: Tuple[int, ...]
    trunc: int
    disconnected: PSeries
    _connected: Optional[PSeries] = field(default=None, repr=False)

    @property
    def connected(self) -> PSeries:
        if self._connected is None:
            self._connected = self.disconnected.log()
        return self._connected


@lru_cache(maxsize=None)
def _one_family_term(nu: Partition, trunc: int) -> LambdaSeries:
    t = trunc + size(nu)
    return _framing_exp_one(kappa(nu), t) * w_one_lambda(nu, t)


@lru_cache(maxsize=None)
def _two_family_term(nup: Partition, num: Partition, trunc: int) -> LambdaSeries:
    t = trunc + size(nup) + size(num)
    return _framing_exp_two(kappa(nup), kappa(num), t) * w_pair_lambda(nup, num, t)


def build_series(degree_cap: int, trunc: int, families: int = 1,
                 cap_minus: Optional[int] = None) -> FramedSeries:
    """Assemble the disconnected series through the given caps."""
    if families == 1:
        caps: Tuple[int, ...] = (degree_cap,)
        co: Dict[Tuple[Partition, ...], LambdaSeries] = {
            empty_key(1): LambdaSeries.one(trunc)}
        for n in range(1, degree_cap + 1):
            parts = enumerate_partitions(n)
            terms = {nu: _one_family_term(nu, trunc) for nu in parts}
            for mu in parts:
                z = zmu(mu)
                acc: Optional[LambdaSeries] = None
                for nu in parts:
                    chi = character(nu, mu)
                    if not chi:
                        continue
                    piece = terms[nu].scale(Frac(chi, z))
                    acc = piece if acc is None else acc + piece
                if acc is not None and not acc.is_exact_zero():
                    co[(mu,)] = acc
        return FramedSeries(1, caps, trunc, PSeries(1, caps, co))
    if families == 2:
        cm = degree_cap if cap_minus is None else cap_minus
        caps = (degree_cap, cm)
        co = {empty_key(2): LambdaSeries.one(trunc)}
        for npos in range(0, degree_cap + 1):
            for nneg in range(0, cm + 1):
                if npos == 0 and nneg == 0:
                    continue
                pplus = enumerate_partitions(npos)
                pminus = enumerate_partitions(nneg)
                terms = {(a, b): _two_family_term(a, b, trunc)
                         for a in pplus for b in pminus}
                for mup in pplus:
                    for mum in pminus:
                        zz = zmu(mup) * zmu(mum)
                        acc = None
                        for a in pplus:
                            ca = character(a, mup)
                            if not ca:
                                continue
                            for b in pminus:
                                cb = character(b, mum)
                                if not cb:
                                    continue
                                piece = terms[(a, b)].scale(Frac(ca * cb, zz))
                                acc = piece if acc is None else acc + piece
                        if acc is not None and not acc.is_exact_zero():
                            co[(mup, mum)] = acc
        return FramedSeries(2, caps, trunc, PSeries(2, caps, co))
    raise UsageError("families must be 1 or 2")


# ---------------------------------------------------------------------------
# cut-and-join evolution
# ---------------------------------------------------------------------------

def _shift_scale(ps: PSeries, k: int, v) -> PSeries:
    return ps.map_coeffs(lambda key, s: s.shift(k).scale(v))


def pde_residual(fs: FramedSeries) -> PSeries:
    """Residual of the tau-evolution; identically zero when everything is right.

    One family (connected R):   dR/dtau - i lambda CJ_nl(R)
    Two families (disconnected G, with (CJ)+- = i lambda * [cut+join]):
        dG/dtau - (1/2)(CJ)+ G + (1/(2 tau^2))(CJ)- G

    The operators here carry the global 1/2 over ordered index pairs, so the
    displayed prefactor (1/2) i lambda (over a bracket without the half)
    becomes i lambda against cut_join_nonlinear.
    """
    if fs.families == 1:
        r = fs.connected
        lhs = r.tau_deriv()
        rhs = _shift_scale(r.cut_join_nonlinear(0), 1, GR_I)
        return lhs - rhs
    g = fs.disconnected
    lhs = g.tau_deriv()
    plus = _shift_scale(g.cut_join_linear(0), 1, GR_I)
    minus = _shift_scale(g.cut_join_linear(1), 1, GR_I)
    minus = minus.map_coeffs(lambda key, s: s.map_coeffs(lambda e, t: t.shift(-2)))
    return lhs - plus + minus


def residual_window_ok(res: PSeries, need) -> bool:
    """True when every stored coefficient window reaches need(key)."""
    for key, s in res.co.items():
        if s.co and s.trunc < need(key):
            return False
    return True


# ---------------------------------------------------------------------------
# initial value at tau = 0
# ---------------------------------------------------------------------------

def ov_term(d: int) -> QFunction:
    """1/(2 d sin(d lambda / 2)) as a q-function.

    2 sin(d lambda/2) = (-i)(u^d - u^{-d}), so the 2 lives in the bracket.
    """
    return QFunction(-1, ULaurent.const(Frac(1, d)), ULaurent.bracket(d))


def initial_value_report(fs: FramedSeries, through: Optional[int] = None) -> dict:
    """Check the tau = 0 slice of the connected series.

    Multi-part coefficients must vanish identically; the p_d coefficient
    must equal i^{d-1}/(2 d sin(d lambda/2)), with the phase i^{d-1} pinned
    exactly (see the module docstring).  When ``through`` is given, every
    coefficient window must reach that (exclusive) order; a window that
    falls short fails the check instead of silently narrowing it.
    """
    if fs.families != 1:
        raise UsageError("initial value check applies to the one-family series")
    r0 = fs.connected.tau_eval(0)
    multi_ok = True
    single_ok = True
    window_ok = True
    phases: Dict[int, str] = {}
    for key, s in r0.co.items():
        mu = key[0]
        if through is not None and s.trunc < through:
            window_ok = False
        hi = s.trunc if through is None else min(s.trunc, through)
        if length(mu) >= 2:
            if not all(not s.coeff(e) for e in range(s.floor, hi)):
                multi_ok = False
        else:
            d = mu[0]
            expect = ov_term(d).to_lambda(s.trunc).scale(GaussianRational.i_power(d - 1))
            lo, _ = s.window_with(expect)
            if not s.eq_through(expect, lo, hi):
                single_ok = False
            phases[d] = f"i^{(d - 1) % 4}"
    return {
        "multi_part_vanish": multi_ok,
        "single_part_match": single_ok,
        "window_reaches_order": window_ok,
        "phase_by_degree": phases,
        "ok": multi_ok and single_ok and window_ok,
    }


# ---------------------------------------------------------------------------
# Hodge-integral extraction
# ---------------------------------------------------------------------------

def framing_prefactor(mu: Partition) -> TauLaurent:
    """A(tau) = -(i)^{|mu|+l} / |Aut mu| [tau(tau+1)]^{l-1} prod prod (mu_i tau + a)/(mu_i - 1)!.

    Its tau-degree is |mu| + l(mu) - 2 and its lowest term has degree l - 1.
    """
    l = length(mu)
    if l == 0:
        raise UsageError("prefactor needs a nonempty partition")
    poly = TauLaurent.scalar(1)
    tt1 = TauLaurent({1: 1, 2: 1})
    for _ in range(l - 1):
        poly = poly * tt1
    denom = 1
    for p in mu:
        for a in range(1, p):
            poly = poly * TauLaurent({0: a, 1: p})
        denom *= factorial(p - 1)
    lead = GaussianRational.i_power(size(mu) + l) * Frac(-1, aut(mu) * denom)
    poly = poly.scale(lead)
    if poly.max_exp() - 0 != size(mu) + l - 2 or poly.min_exp() != l - 1:
        raise InternalError("framing prefactor degree bookkeeping is off")
    return poly


def hodge_extract(fs: FramedSeries, g: int, mu: Partition) -> List[Frac]:
    """Triple Hodge integral as a tau-polynomial (coefficient list).

    Reads the p_mu lambda^{2g-2+l(mu)} coefficient of the connected series
    and divides out the framing prefactor; the quotient must be a real
    polynomial of degree at most 2g.
    """
    mu = tuple(mu)
    if size(mu) > fs.caps[0]:
        raise UsageError("partition exceeds the built degree cap")
    e = 2 * g - 2 + length(mu)
    s = fs.connected.coeff((mu,))
    c = s.coeff(e)
    quotient = c.divexact(framing_prefactor(mu))
    if quotient and quotient.min_exp() < 0:
        raise InternalError("prefactor division left tau poles")
    deg = quotient.max_exp() if quotient else 0
    if deg > 2 * g:
        raise InternalError(f"tau-degree {deg} exceeds 2g for (g={g}, mu={mu})")
    out = []
    for j in range(deg + 1):
        v = quotient.c.get(j)
        if v is None:
            out.append(Frac(0))
        else:
            if v.im:
                raise InternalError("imaginary part survived prefactor division")
            out.append(v.re)
    # multiply-back divisibility oracle
    if TauLaurent({j: v for j, v in enumerate(out)}) * framing_prefactor(mu) != c:
        raise InternalError("prefactor division is not exact")
    return out


def b_constant(g: int) -> Frac:
    """(2^{2g-1} - 1)/2^{2g-1} |B_{2g}|/(2g)! for g > 0; 1 at g = 0."""
    from .scalars import bernoulli

    if g == 0:
        return Frac(1)
    p = 2 ** (2 * g - 1)
    return Frac(p - 1, p) * abs(bernoulli(2 * g)) / factorial(2 * g)


_global_sign: Optional[int] = None


def lambda_g_check(fs: FramedSeries, g: int, mu: Partition) -> bool:
    """tau = 0 value of the extracted polynomial against b_g |mu|^{2g+n-3}.

    One global sign relates the two sides; it is calibrated once on
    (g, mu) = (1, (1)) and then required for every case.
    """
    global _global_sign
    if g < 1:
        raise UsageError("the identity concerns g >= 1")
    mu = tuple(mu)
    poly = hodge_extract(fs, g, mu)
    value = poly[0]
    target = b_constant(g) * Frac(size(mu)) ** (2 * g + length(mu) - 3)
    if _global_sign is None:
        if abs(value) != abs(target):
            return False
        _global_sign = 1 if value == target else -1
    return value == _global_sign * target


# ---------------------------------------------------------------------------
# degeneration onto the Hurwitz series
# ---------------------------------------------------------------------------

def elsv_limit_check(fs: FramedSeries, g_max: int = 2) -> bool:
    """Substitute lambda -> lambda tau, tau -> 1/tau, p_d -> (lambda tau)^d p_d,
    send tau -> 0, and compare with the Burnside series at i lambda.
    """
    if fs.families != 1:
        raise UsageError("the degeneration applies to the one-family series")
    ok = True
    for key, s in fs.connected.co.items():
        mu = key[0]
        if not mu:
            continue
        w = size(mu)
        limit: Dict[int, GaussianRational] = {}
        for e in range(s.floor, s.trunc):
            c = s.coeff(e)
            if c and c.max_exp() > e + w:
                raise InternalError(
                    f"negative tau-power survives the degeneration at p_{mu} lambda^{e}")
            limit[e + w] = c.c.get(e + w, GaussianRational(0)) if c else GaussianRational(0)
        got = LambdaSeries.from_map(
            {o: TauLaurent.scalar(v) for o, v in limit.items() if v}, s.trunc + w)
        expect = burnside_phi(mu, s.trunc + w).subst_scale(GR_I)
        need = 2 * g_max - 2 + w + length(mu) + 1
        lo = min(got.floor, expect.floor)
        hi = min(min(got.trunc, expect.trunc), max(need, lo))
        if not got.eq_through(expect, lo, hi):
            ok = False
    return ok


# ---------------------------------------------------------------------------
# convolution with double Hurwitz numbers
# ---------------------------------------------------------------------------

def _series_solve(mat: List[List[LambdaSeries]], vec: List[LambdaSeries]) -> List[LambdaSeries]:
    """Gaussian elimination over truncated series; pivots are unit series."""
    n = len(mat)
    m = [row[:] for row in mat]
    v = vec[:]
    for i in range(n):
        piv = m[i][i]
        if piv.pruned().valuation() != 0:
            raise VerificationFailure("convolution system is singular through truncation")
        inv = piv.inverse()
        m[i] = [x * inv for x in m[i]]
        v[i] = v[i] * inv
        for r in range(n):
            if r != i:
                f = m[r][i]
                if f.is_exact_zero():
                    continue
                m[r] = [a - f * b for a, b in zip(m[r], m[i])]
                v[r] = v[r] - f * v[i]
    return v


def convolution_check(fs: FramedSeries, tau_solve: int = 1,
                      tau_verify: Sequence[int] = (2, 3),
                      max_weight: Optional[int] = None) -> bool:
    """Solve for the kernel at one framing value, verify at others.

    Implemented as G_mu(lambda, tau) = sum_nu Phi2_{mu,nu}(i tau lambda) z_nu K_nu;
    the + sign of the scaled argument is the one that makes the kernel
    framing-independent given the e^{+kappa lambda/2} normalization of the
    double Hurwitz series.
    """
    if fs.families != 1:
        raise UsageError("convolution check applies to the one-family series")
    trunc = fs.trunc
    top = fs.caps[0] if max_weight is None else min(max_weight, fs.caps[0])
    for n in range(1, top + 1):
        parts = list(enumerate_partitions(n))
        phi = {(mu, nu): double_hurwitz(mu, nu, trunc) for mu in parts for nu in parts}

        def matvec(tau_val: int):
            mat = [[phi[(mu, nu)].subst_scale(GR_I * tau_val).scale(zmu(nu))
                    for nu in parts] for mu in parts]
            vec = [fs.disconnected.coeff((mu,)).tau_eval(tau_val) for mu in parts]
            return mat, vec

        mat0, vec0 = matvec(tau_solve)
        kernel = _series_solve(mat0, vec0)
        for tv in tau_verify:
            mat1, vec1 = matvec(tv)
            for i, mu in enumerate(parts):
                acc: Optional[LambdaSeries] = None
                for j in range(len(parts)):
                    piece = mat1[i][j] * kernel[j]
                    acc = piece if acc is None else acc + piece
                diff = acc - vec1[i]
                if not diff.is_zero_through():
                    return False
    return True


# ---------------------------------------------------------------------------
# two-family structure checks
# ---------------------------------------------------------------------------

def swap_symmetry_check(fs: FramedSeries) -> bool:
    """R(p+, p-; tau) = R(p-, p+; 1/tau) coefficientwise."""
    if fs.families != 2:
        raise UsageError("swap symmetry concerns the two-family series")
    g = fs.disconnected
    for (mup, mum), s in g.co.items():
        other = g.coeff((mum, mup)).tau_inverse()
        lo, hi = s.window_with(other)
        if not s.eq_through(other, lo, hi):
            return False
    return True


def slice_reduction_check(fs2: FramedSeries, fs1: FramedSeries) -> bool:
    """The p- = 0 slice matches the one-family series up to (-i)^{|mu|}."""
    if fs2.families != 2 or fs1.families != 1:
        raise UsageError("need a two-family and a one-family series")
    for n in range(1, min(fs2.caps[0], fs1.caps[0]) + 1):
        for mu in enumerate_partitions(n):
            got = fs2.disconnected.coeff((mu, ()))
            # bridge factor (-i)^{|mu|} = i^{3|mu|}
            expect = fs1.disconnected.coeff((mu,)).scale(
                GaussianRational.i_power(3 * size(mu)))
            lo, hi = got.window_with(expect)
            if not got.eq_through(expect, lo, hi):
                return False
    return True
