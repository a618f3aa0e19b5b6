"""Mirror hypergeometric engine.

Quintic side: the degree-5 hypersurface series in Q[H]/(H^5), the mirror-map
change of variables and the cubic-normalized potential, plus the classical
k^{-3} multiple-cover inversion.

Grassmannian side: the product-of-projective-spaces series, the
antisymmetrizing derivative operator with its pi sqrt(-1) bookkeeping symbol
P, the composition-sum localization formula, and the equality test between
the two after reduction to the Schur basis of H*(Gr(k,n)).

Sign conventions: the projective-space displays use (x - m alpha) while the
composition sum uses (x_i + l alpha); the bridge, validated by the equality
test, is alpha -> -alpha inside the composition sum.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InternalError, UsageError, VerificationFailure
from .nilpotent import AlphaLaurent, XPoly, _perm_sign, exp_x_times

Frac = Fraction


# ===========================================================================
# quintic
# ===========================================================================

def _hmul(a: List[Frac], b: List[Frac], nilp: int) -> List[Frac]:
    out = [Frac(0)] * nilp
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), nilp - i)):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def _hinv(a: List[Frac], nilp: int) -> List[Frac]:
    if not a[0]:
        raise UsageError("cannot invert a nilpotent-ring element with zero constant")
    out = [Frac(0)] * nilp
    out[0] = 1 / a[0]
    for m in range(1, nilp):
        acc = Frac(0)
        for j in range(1, m + 1):
            if j < len(a) and a[j]:
                acc += a[j] * out[m - j]
        out[m] = -acc / a[0]
    return out


@lru_cache(maxsize=None)
def quintic_hg(d_max: int) -> Tuple[Dict[int, List[Frac]], ...]:
    """Bracket coefficients (f0, f1, f2, f3) of the quintic series.

    Each f_i maps degree d to the t-polynomial coefficient list of e^{dt}.
    The m = 0 factor keeps the overall 5; downstream ratios are insensitive.
    """
    if d_max < 1:
        raise UsageError("need at least degree 1")
    nilp = 5
    f: Tuple[Dict[int, List[Frac]], ...] = tuple({} for _ in range(4))
    for d in range(d_max + 1):
        num = [Frac(1)] + [Frac(0)] * (nilp - 1)
        for m in range(0, 5 * d + 1):
            num = _hmul(num, [Frac(m), Frac(5)] + [Frac(0)] * (nilp - 2), nilp)
        den = [Frac(1)] + [Frac(0)] * (nilp - 1)
        for m in range(1, d + 1):
            lin = [Frac(m), Frac(1)] + [Frac(0)] * (nilp - 2)
            for _ in range(5):
                den = _hmul(den, lin, nilp)
        slice_d = _hmul(num, _hinv(den, nilp), nilp)
        if slice_d[0]:
            raise InternalError("quintic slice not divisible by the hyperplane class")
        # multiply by e^{Ht} and read off coefficients of H^{i+1}
        for i in range(4):
            tpoly = [Frac(0)] * (i + 2)
            for j in range(i + 2):
                h = i + 1 - j
                if h < nilp and slice_d[h]:
                    tpoly[j] = slice_d[h] / factorial(j)
            while tpoly and not tpoly[-1]:
                tpoly.pop()
            f[i][d] = tpoly
    return f


# -- Q-series helpers (lists indexed by the e^{t}-degree) ---------------------

def _qmul(a: Sequence[Frac], b: Sequence[Frac], n: int) -> List[Frac]:
    out = [Frac(0)] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def _qinv(a: Sequence[Frac], n: int) -> List[Frac]:
    if not a[0]:
        raise UsageError("Q-series not invertible")
    out = [Frac(0)] * n
    out[0] = 1 / a[0]
    for m in range(1, n):
        acc = Frac(0)
        for j in range(1, m + 1):
            if j < len(a) and a[j]:
                acc += a[j] * out[m - j]
        out[m] = -acc / a[0]
    return out


def _qexp(a: Sequence[Frac], n: int) -> List[Frac]:
    if a[0]:
        raise UsageError("exp needs zero constant term")
    out = [Frac(0)] * n
    out[0] = Frac(1)
    term = list(out)
    for m in range(1, n):
        term = [x / m for x in _qmul(term, a, n)]
        out = [x + y for x, y in zip(out, term)]
    return out


def _qcompose(outer: Sequence[Frac], inner: Sequence[Frac], n: int) -> List[Frac]:
    """outer(inner(Q)) with inner(0) = 0."""
    if inner[0]:
        raise UsageError("composition needs zero constant inner term")
    out = [Frac(0)] * n
    out[0] = outer[0] if outer else Frac(0)
    power = [Frac(0)] * n
    power[0] = Frac(1)
    for m in range(1, len(outer)):
        power = _qmul(power, inner, n)
        if outer[m]:
            out = [x + outer[m] * y for x, y in zip(out, power)]
    return out


def candelas(d_max: int) -> dict:
    """Mirror map and degree coefficients of the cubic-normalized potential.

    Returns {"K": [K_1..K_dmax], "mirror_map": u-series, "cubic": 5/6,
    "inverse_map": B-series with Q = Qt * B(Qt)}.
    """
    if d_max < 1:
        raise UsageError("need at least degree 1")
    f = quintic_hg(d_max)
    n = d_max + 1

    def tq(fi: Dict[int, List[Frac]]) -> Dict[int, List[Frac]]:
        out: Dict[int, List[Frac]] = {}
        for d, tpoly in fi.items():
            for j, c in enumerate(tpoly):
                if c:
                    out.setdefault(j, [Frac(0)] * n)[d] = c
        return out

    F = [tq(fi) for fi in f]
    # peel the e^{Ht}-injected t-powers: f_k = sum_j t^j/j! S_{k-j}
    S: List[List[Frac]] = []
    for k in range(4):
        Sk = list(F[k].get(0, [Frac(0)] * n))
        for j in range(1, k + 1):
            expect = [c / factorial(j) for c in S[k - j]]
            got = F[k].get(j, [Frac(0)] * n)
            if got != expect:
                raise InternalError("bracket coefficients violate the e^{Ht} structure")
        S.append(Sk)
    s0 = S[0]
    if s0[0] != 5:
        raise InternalError("unexpected overall normalization of the quintic series")
    u = _qmul(S[1], _qinv(s0, n), n)       # mirror map: T = t + u(Q)
    if u[0]:
        raise InternalError("mirror map must fix the log term")
    # inverse map: Q = Qt B(Qt) with Qt = Q e^{u(Q)}
    e_u = _qexp(u, n)
    B = [Frac(1)] + [Frac(0)] * (n - 1)
    for _ in range(n):
        inner = _qmul([Frac(0), Frac(1)], B, n)      # Qt * B
        B = _qinv(_qcompose(e_u, inner, n), n)
    q_of_qt = _qmul([Frac(0), Frac(1)], B, n)

    # potential as a t-polynomial with Q-series coefficients
    inv0 = _qinv(s0, n)
    inv0sq = _qmul(inv0, inv0, n)

    def fprod(a: Dict[int, List[Frac]], b: Dict[int, List[Frac]]) -> Dict[int, List[Frac]]:
        out: Dict[int, List[Frac]] = {}
        for j1, c1 in a.items():
            for j2, c2 in b.items():
                cur = out.setdefault(j1 + j2, [Frac(0)] * n)
                prod = _qmul(c1, c2, n)
                out[j1 + j2] = [x + y for x, y in zip(cur, prod)]
        return out

    def fscale(a: Dict[int, List[Frac]], qs: List[Frac]) -> Dict[int, List[Frac]]:
        return {j: _qmul(c, qs, n) for j, c in a.items()}

    pot = fscale(fprod(F[1], F[2]), inv0sq)
    f3s = fscale(F[3], inv0)
    potential: Dict[int, List[Frac]] = {}
    for j in set(pot) | set(f3s):
        a = pot.get(j, [Frac(0)] * n)
        b = f3s.get(j, [Frac(0)] * n)
        potential[j] = [Frac(5, 2) * (x - y) for x, y in zip(a, b)]

    # substitute t = T - u(Q), then Q = Q(Qt)
    minus_u_pow = {0: [Frac(1)] + [Frac(0)] * (n - 1)}
    for j in range(1, max(potential) + 1):
        minus_u_pow[j] = _qmul(minus_u_pow[j - 1], [-c for c in u], n)
    in_T: Dict[int, List[Frac]] = {}
    for j, qs in potential.items():
        for r in range(j + 1):
            w = comb(j, r)
            piece = _qmul(qs, minus_u_pow[j - r], n)
            cur = in_T.setdefault(r, [Frac(0)] * n)
            in_T[r] = [x + w * y for x, y in zip(cur, piece)]
    for r in in_T:
        in_T[r] = _qcompose(in_T[r], q_of_qt, n)

    cubic = in_T.get(3, [Frac(0)] * n)
    if cubic[0] != Frac(5, 6) or any(cubic[1:]):
        raise VerificationFailure("cubic coefficient of the potential is not 5/6")
    for r in (1, 2):
        if any(in_T.get(r, [])):
            raise VerificationFailure(f"T^{r} coefficient of the potential survives")
    k_series = in_T.get(0, [Frac(0)] * n)
    if k_series[0]:
        raise VerificationFailure("constant term of the potential survives")
    return {
        "K": k_series[1:],
        "mirror_map": u,
        "inverse_map": B,
        "cubic": cubic[0],
        "q_of_qt": q_of_qt,
    }


def mirror_map_round_trip(d_max: int) -> bool:
    """t(T(t)) = t through e^{d_max t}: Q(Qt(Q)) = Q as series."""
    data = candelas(d_max)
    n = d_max + 1
    e_u = _qexp(data["mirror_map"], n)
    qt_of_q = _qmul([Frac(0), Frac(1)], e_u, n)
    round_trip = _qcompose(data["q_of_qt"], qt_of_q, n)
    return round_trip == [Frac(0), Frac(1)] + [Frac(0)] * (n - 2)


def multiple_cover_invert(k_list: Sequence[Frac]) -> List[int]:
    """K_d = sum_{k | d} n_{d/k} / k^3, solved triangularly; entries must be integers."""
    out: List[int] = []
    for d in range(1, len(k_list) + 1):
        v = Frac(k_list[d - 1])
        for k in range(2, d + 1):
            if d % k == 0:
                v -= Frac(out[d // k - 1], k ** 3)
        if v.denominator != 1:
            raise VerificationFailure(f"multiple-cover count n_{d} = {v} is not an integer")
        out.append(int(v))
    return out


def multiple_cover_forward(n_list: Sequence[int]) -> List[Frac]:
    out = []
    for d in range(1, len(n_list) + 1):
        v = Frac(0)
        for k in range(1, d + 1):
            if d % k == 0:
                v += Frac(n_list[d // k - 1], k ** 3)
        out.append(v)
    return out


# ===========================================================================
# general convex toric series
# ===========================================================================

def toric_b_series(generators: Sequence[Tuple[str, int]],
                   line_bundles: Sequence[Sequence[int]],
                   divisors: Sequence[Sequence[int]],
                   d_max: int) -> Dict[Tuple[int, ...], Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Frac]]:
    """Degree slices of the convex-case toric series.

    Classes are integer vectors in the generator basis; the pairing of a
    class with a multidegree d is the dot product (generators dual to the
    degree basis).  Output: {d: {(gen exps, t exps): coefficient}} including
    the e^{-H t} factor.
    """
    r = len(generators)
    nilps = tuple(n for _, n in generators)
    if any(len(v) != r for v in line_bundles) or any(len(v) != r for v in divisors):
        raise UsageError("class vectors must match the generator count")

    def ring_mul(a, b):
        out: Dict[Tuple[int, ...], Frac] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if any(e[i] >= nilps[i] for i in range(r)):
                    continue
                out[e] = out.get(e, Frac(0)) + v1 * v2
        return {k: v for k, v in out.items() if v}

    def lin(vec, const) -> Dict[Tuple[int, ...], Frac]:
        out = {(0,) * r: Frac(const)} if const else {}
        for i, c in enumerate(vec):
            if c:
                e = tuple(1 if j == i else 0 for j in range(r))
                out[e] = out.get(e, Frac(0)) + c
        return out

    def ring_inv(a):
        # (c0 + N)^{-1} = sum_m (-1)^m N^m / c0^{m+1} with N nilpotent
        c0 = a.get((0,) * r, Frac(0))
        if not c0:
            raise UsageError("non-invertible denominator factor")
        nil = {k: v for k, v in a.items() if any(k)}
        max_steps = sum(nn - 1 for nn in nilps)
        out: Dict[Tuple[int, ...], Frac] = {}
        power = {(0,) * r: Frac(1)}
        for m in range(max_steps + 1):
            for kk, v in power.items():
                out[kk] = out.get(kk, Frac(0)) + ((-1) ** m) * v / c0 ** (m + 1)
            power = ring_mul(power, nil)
            if not power:
                break
        return {k: v for k, v in out.items() if v}

    def degrees(total: int):
        def rec(i, left):
            if i == r - 1:
                yield (left,)
                return
            for v in range(left + 1):
                for rest in rec(i + 1, left - v):
                    yield (v,) + rest
        for s in range(total + 1):
            yield from rec(0, s)

    # e^{-H t} = prod_j e^{-G_j t_j}
    expfac: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Frac] = {}
    base = [((0,) * r, (0,) * r, Frac(1))]
    for j in range(r):
        new = []
        for ge, te, v in base:
            for m in range(nilps[j]):
                ge2 = tuple(ge[i] + (m if i == j else 0) for i in range(r))
                if any(ge2[i] >= nilps[i] for i in range(r)):
                    continue
                te2 = tuple(te[i] + (m if i == j else 0) for i in range(r))
                new.append((ge2, te2, v * Frac((-1) ** m, factorial(m))))
        base = new
    for ge, te, v in base:
        expfac[(ge, te)] = expfac.get((ge, te), Frac(0)) + v

    out: Dict[Tuple[int, ...], Dict] = {}
    for d in degrees(d_max):
        num = {(0,) * r: Frac(1)}
        for vec in line_bundles:
            pair = sum(c * dd for c, dd in zip(vec, d))
            if pair < 0:
                raise UsageError("negative line-bundle pairing: outside the convex case")
            for k in range(0, pair + 1):
                num = ring_mul(num, lin(vec, -k))
        den = {(0,) * r: Frac(1)}
        for vec in divisors:
            pair = sum(c * dd for c, dd in zip(vec, d))
            if pair < 0:
                for k in range(0, -pair):
                    num = ring_mul(num, lin(vec, k))
            else:
                for k in range(1, pair + 1):
                    den = ring_mul(den, lin(vec, -k))
        slice_d = ring_mul(num, ring_inv(den))
        full: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Frac] = {}
        for (ge, te), v in expfac.items():
            for e2, v2 in slice_d.items():
                e = tuple(x + y for x, y in zip(ge, e2))
                if any(e[i] >= nilps[i] for i in range(r)):
                    continue
                key = (e, te)
                s = full.get(key, Frac(0)) + v * v2
                if s:
                    full[key] = s
                elif key in full:
                    del full[key]
        out[d] = full
    return out


# ===========================================================================
# projective space and Grassmannian series
# ===========================================================================

@lru_cache(maxsize=None)
def hg_projective(n: int, d_max: int, cap: Optional[int] = None) -> Tuple[XPoly, ...]:
    """Degree slices of the fundamental series of P^{n-1}.

    Slice d: e^{-t x / alpha} / prod_{m=1}^{d} (x - m alpha)^n, expanded in x
    through the cap (default n-1, the nilpotency order).
    """
    if n < 2:
        raise UsageError("need projective space of dimension >= 1")
    if cap is None:
        cap = n - 1
    pre = exp_x_times(1, cap, 0, "t", 0, -1, True)
    out: List[XPoly] = []
    for d in range(d_max + 1):
        slice_d = XPoly.const(1, cap, 1)
        for m in range(1, d + 1):
            slice_d = slice_d * _inv_linear_power(1, cap, 0, -m, n)
        out.append(pre * slice_d)
    return tuple(out)


def _inv_linear_power(k: int, cap: int, var: int, mcoef: int, power: int) -> XPoly:
    """(x_var + mcoef*alpha)^{-power} as a truncated x-series over AlphaLaurent."""
    if mcoef == 0:
        raise UsageError("non-invertible linear factor")
    c: Dict[Tuple[int, ...], AlphaLaurent] = {}
    for j in range(cap + 1):
        key = [0] * (k + 2)
        key[var] = j
        coeff = Frac(comb(power - 1 + j, j) * (-1) ** j, mcoef ** (power + j))
        c[tuple(key)] = AlphaLaurent.mono(-(power + j), coeff)
    return XPoly(k, cap, c)


def _compositions_nonneg(d: int, k: int) -> List[Tuple[int, ...]]:
    if k == 1:
        return [(d,)]
    out = []
    for first in range(d + 1):
        for rest in _compositions_nonneg(d - first, k - 1):
            out.append((first,) + rest)
    return out


def _loc_raw(k: int, n: int, d: int, cap: int) -> XPoly:
    """Composition sum after Vandermonde division, with the printed sign."""
    total: Optional[XPoly] = None
    for compn in _compositions_nonneg(d, k):
        term = XPoly.const(k, cap, 1)
        for i in range(k):
            for j in range(i + 1, k):
                diff = (XPoly.x_var(k, cap, i) - XPoly.x_var(k, cap, j)
                        + XPoly.const(k, cap, AlphaLaurent.mono(1, compn[i] - compn[j])))
                term = term * diff
        for i in range(k):
            for l in range(1, compn[i] + 1):
                term = term * _inv_linear_power(k, cap, i, l, n)
        total = term if total is None else total + term
    assert total is not None
    if not total.is_antisymmetric():
        raise InternalError("composition sum is not antisymmetric")
    quo = total.vandermonde_divide()
    if not quo.is_symmetric():
        raise InternalError("composition sum divided by Vandermonde is not symmetric")
    if ((k - 1) * d) % 2:
        quo = -quo
    return quo


def gr_loc_sum(k: int, n: int, d: int,
               cap: Optional[int] = None) -> Dict[Tuple[int, ...], AlphaLaurent]:
    """Localization-sum class in the Schur basis of H*(Gr(k,n))."""
    if not (1 <= k < n):
        raise UsageError("need 1 <= k < n")
    if cap is None:
        cap = k * (n - k) + k * (k - 1) // 2 + 2
    quo = _loc_raw(k, n, d, cap)
    comps = quo.schur_components()
    out: Dict[Tuple[int, ...], AlphaLaurent] = {}
    for (lam, pe, te), v in comps.items():
        if pe or te:
            raise InternalError("unexpected symbol in the localization sum")
        if lam and lam[0] > n - k:
            continue
        if sum(lam) > k * (n - k):
            continue
        out[lam] = v
    return out


def hori_vafa_series(k: int, n: int, d_max: int) -> dict:
    """Operator-formula series, localization series, and their equality.

    Output: {"operator": {d: {t_exp: {lam: AlphaLaurent}}}, "localization":
    same shape, "equal": bool}.  The alpha -> -alpha bridge between the two
    printed conventions is applied to the composition sum.
    """
    if not (1 <= k < n):
        raise UsageError("need 1 <= k < n")
    cap = k * (n - k) + k * (k - 1) // 2 + 2
    trusted = cap
    slices = hg_projective(n, d_max, cap=cap)

    # per-copy powers of (alpha d/dt_i), acting on slice * e^{d t_i} as
    # (d + d/dt); framed-substituted, with the copy sign from e^{d t_i}
    der: Dict[Tuple[int, int], XPoly] = {}
    for d in range(d_max + 1):
        cur = slices[d]
        for r2 in range(k):
            if r2:
                cur = cur.scale(d) + cur.dt()
            sub = cur.subs_t_plus_p_alpha()
            if ((k - 1) * d) % 2:
                sub = -sub
            der[(d, r2)] = sub

    prefactor = XPoly.const(k, cap, 1)
    for i in range(k):
        prefactor = prefactor * exp_x_times(k, cap, i, "P", 0, 1, False)

    # alpha^{k(k-1)/2} from the operator factors, and the Vandermonde
    # orientation sign relating the determinant expansion to the prefactor
    # denominator (for k = 1 both are empty products)
    vand_alpha = AlphaLaurent.mono(k * (k - 1) // 2,
                                   (-1) ** (k * (k - 1) // 2))
    operator_out: Dict[int, Dict[int, Dict[Tuple[int, ...], AlphaLaurent]]] = {}
    for d in range(d_max + 1):
        total: Optional[XPoly] = None
        for compn in _compositions_nonneg(d, k):
            for sigma in permutations(range(1, k + 1)):
                sign = _perm_sign(tuple(s - 1 for s in sigma))
                term: Optional[XPoly] = None
                for i in range(k):
                    fac = der[(compn[i], k - sigma[i])].embed(k, i, cap)
                    term = fac if term is None else term * fac
                assert term is not None
                total = term.scale(sign) if total is None else total + term.scale(sign)
        assert total is not None
        total = total.scale(vand_alpha)
        total = total * prefactor
        total = XPoly(k, trusted, {key: v for key, v in total.c.items()
                                   if sum(key[:k]) <= trusted})
        if not total.p_free():
            raise InternalError("surviving P-dependence in the operator formula")
        quo = total.vandermonde_divide()
        comps = quo.schur_components()
        by_t: Dict[int, Dict[Tuple[int, ...], AlphaLaurent]] = {}
        for (lam, pe, te), v in comps.items():
            if pe:
                raise InternalError("surviving P-dependence after reduction")
            if lam and lam[0] > n - k:
                continue
            if sum(lam) > k * (n - k):
                continue
            by_t.setdefault(te, {})[lam] = v
        operator_out[d] = by_t

    # localization side: e^{-t sigma/alpha} sum_d L_d e^{dt}, alpha flipped in L_d
    pre_t = XPoly.const(k, cap, 1)
    for i in range(k):
        pre_t = pre_t * exp_x_times(k, cap, i, "t", 0, -1, True)
    loc_out: Dict[int, Dict[int, Dict[Tuple[int, ...], AlphaLaurent]]] = {}
    for d in range(d_max + 1):
        raw = _loc_raw(k, n, d, cap).negate_alpha()
        assembled = pre_t * raw
        comps = assembled.schur_components()
        by_t = {}
        for (lam, pe, te), v in comps.items():
            if pe:
                raise InternalError("unexpected symbol on the localization side")
            if lam and lam[0] > n - k:
                continue
            if sum(lam) > k * (n - k):
                continue
            by_t.setdefault(te, {})[lam] = v
        loc_out[d] = by_t

    equal = _reduced_equal(operator_out, loc_out)
    return {"operator": operator_out, "localization": loc_out, "equal": equal}


def _reduced_equal(a, b) -> bool:
    def norm(side):
        out = {}
        for d, by_t in side.items():
            for te, lams in by_t.items():
                for lam, v in lams.items():
                    if v:
                        out[(d, te, lam)] = v
        return out

    return norm(a) == norm(b)


def gr23_matches_p2(d_max: int = 2) -> bool:
    """The (2,3) operator output equals the P^2 series under s_1 <-> x."""
    hv = hori_vafa_series(2, 3, d_max)
    p2 = hg_projective(3, d_max)
    lam_of_deg = {0: (), 1: (1,), 2: (1, 1)}
    for d in range(d_max + 1):
        got = hv["operator"].get(d, {})
        expect: Dict[int, Dict[Tuple[int, ...], AlphaLaurent]] = {}
        for (xe, pe, te), v in p2[d].c.items():
            if xe > 2 or not v:
                continue
            expect.setdefault(te, {})[lam_of_deg[xe]] = v
        norm_got = {(te, lam): v for te, lams in got.items()
                    for lam, v in lams.items() if v}
        norm_exp = {(te, lam): v for te, lams in expect.items()
                    for lam, v in lams.items() if v}
        if norm_got != norm_exp:
            return False
    return True
