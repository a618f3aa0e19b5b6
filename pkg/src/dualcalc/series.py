"""Truncated Laurent series in the string coupling with tau-Laurent coefficients.

Two layers:

* ``TauLaurent`` -- finite Laurent polynomials in the framing parameter tau
  over ``GaussianRational``.
* ``LambdaSeries`` -- truncated Laurent series in lambda whose coefficients
  are ``TauLaurent`` values.  Every series carries an explicit window
  ``[floor, trunc)``; arithmetic narrows windows so that no operation ever
  claims coefficients it has not actually computed.  A series with an empty
  coefficient list is an *exact* zero (valid to every order).
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .errors import InternalError, UsageError
from .scalars import GR_ONE, GR_ZERO, GaussianRational


def _gr(x) -> GaussianRational:
    return x if isinstance(x, GaussianRational) else GaussianRational.coerce(x)


class TauLaurent:
    """Finite Laurent polynomial in tau over GaussianRational."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Optional[Dict[int, object]] = None):
        c: Dict[int, GaussianRational] = {}
        if coeffs:
            for k, v in coeffs.items():
                g = _gr(v)
                if g:
                    c[k] = g
        self.c = c

    # -- constructors ------------------------------------------------------
    @staticmethod
    def scalar(v) -> "TauLaurent":
        return TauLaurent({0: v})

    @staticmethod
    def mono(exp: int, v=1) -> "TauLaurent":
        return TauLaurent({exp: v})

    # -- predicates ----------------------------------------------------------
    def __bool__(self):
        return bool(self.c)

    def is_scalar(self) -> bool:
        return not self.c or set(self.c) == {0}

    def as_scalar(self) -> GaussianRational:
        if not self.c:
            return GR_ZERO
        if set(self.c) != {0}:
            raise InternalError(f"tau-dependent where scalar expected: {self}")
        return self.c[0]

    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def min_exp(self) -> int:
        return min(self.c)

    def max_exp(self) -> int:
        return max(self.c)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other: "TauLaurent") -> "TauLaurent":
        if not other.c:
            return self
        if not self.c:
            return other
        c = dict(self.c)
        for k, v in other.c.items():
            s = c.get(k)
            s = v if s is None else s + v
            if s:
                c[k] = s
            elif k in c:
                del c[k]
        out = TauLaurent.__new__(TauLaurent)
        out.c = c
        return out

    def __neg__(self):
        out = TauLaurent.__new__(TauLaurent)
        out.c = {k: -v for k, v in self.c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TauLaurent") -> "TauLaurent":
        if not self.c or not other.c:
            return TL_ZERO
        c: Dict[int, GaussianRational] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                p = v1 * v2
                s = c.get(k)
                s = p if s is None else s + p
                if s:
                    c[k] = s
                elif k in c:
                    del c[k]
        out = TauLaurent.__new__(TauLaurent)
        out.c = c
        return out

    def scale(self, v) -> "TauLaurent":
        g = _gr(v)
        if not g:
            return TL_ZERO
        out = TauLaurent.__new__(TauLaurent)
        out.c = {k: w * g for k, w in self.c.items()}
        return out

    def shift(self, d: int) -> "TauLaurent":
        out = TauLaurent.__new__(TauLaurent)
        out.c = {k + d: v for k, v in self.c.items()}
        return out

    def deriv(self) -> "TauLaurent":
        return TauLaurent({k - 1: v * k for k, v in self.c.items() if k})

    def subs_inverse(self) -> "TauLaurent":
        """tau -> 1/tau."""
        out = TauLaurent.__new__(TauLaurent)
        out.c = {-k: v for k, v in self.c.items()}
        return out

    def eval(self, x) -> GaussianRational:
        g = _gr(x)
        if not self.c:
            return GR_ZERO
        pows: Dict[int, GaussianRational] = {}

        def p(k: int) -> GaussianRational:
            v = pows.get(k)
            if v is None:
                v = g ** k
                pows[k] = v
            return v

        acc = GR_ZERO
        for k, v in self.c.items():
            acc = acc + v * p(k)
        return acc

    def divexact(self, other: "TauLaurent") -> "TauLaurent":
        """Exact Laurent division; raises InternalError on a remainder."""
        if not other.c:
            raise ZeroDivisionError("TauLaurent division by zero")
        if not self.c:
            return TL_ZERO
        if other.is_monomial():
            (k, v), = other.c.items()
            inv = v.inverse()
            return TauLaurent({kk - k: vv * inv for kk, vv in self.c.items()})
        sh_a, sh_b = self.min_exp(), other.min_exp()
        rem = {k - sh_a: v for k, v in self.c.items()}
        div = {k - sh_b: v for k, v in other.c.items()}
        db = max(div)
        lead = div[db]
        lead_inv = lead.inverse()
        q: Dict[int, GaussianRational] = {}
        while rem:
            da = max(rem)
            if da < db:
                raise InternalError("tau division leaves a remainder")
            f = rem[da] * lead_inv
            q[da - db] = f
            for k, v in div.items():
                kk = k + da - db
                s = rem.get(kk, GR_ZERO) - f * v
                if s:
                    rem[kk] = s
                elif kk in rem:
                    del rem[kk]
        return TauLaurent({k + sh_a - sh_b: v for k, v in q.items()})

    def inverse(self) -> "TauLaurent":
        if not self.is_monomial():
            raise InternalError("only monomial TauLaurent values are invertible")
        (k, v), = self.c.items()
        return TauLaurent({-k: v.inverse()})

    def max_abs(self) -> Fraction:
        m = Fraction(0)
        for v in self.c.values():
            a = abs(v.re) + abs(v.im)
            if a > m:
                m = a
        return m

    def __eq__(self, other):
        return isinstance(other, TauLaurent) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"({v})*tau^{k}" if k else f"({v})"
                          for k, v in sorted(self.c.items()))


TL_ZERO = TauLaurent()
TL_ONE = TauLaurent({0: 1})


class LambdaSeries:
    """Laurent series in lambda with TauLaurent coefficients, truncated at ``trunc``.

    The window invariant: all coefficients with exponent in [floor, trunc)
    are exactly known; nothing is claimed outside.  ``co == []`` encodes the
    exact zero series.
    """

    __slots__ = ("floor", "co")

    def __init__(self, floor: int, co: List[TauLaurent]):
        self.floor = floor
        self.co = co

    # -- constructors --------------------------------------------------------
    @staticmethod
    def zero() -> "LambdaSeries":
        return LambdaSeries(0, [])

    @staticmethod
    def from_map(m: Dict[int, object], trunc: int) -> "LambdaSeries":
        items = {k: (v if isinstance(v, TauLaurent) else TauLaurent.scalar(v))
                 for k, v in m.items()}
        items = {k: v for k, v in items.items() if v}
        if not items:
            return LambdaSeries(trunc - 1, [TL_ZERO])
        floor = min(items)
        if max(items) >= trunc:
            raise UsageError("coefficient at or beyond the truncation order")
        co = [items.get(e, TL_ZERO) for e in range(floor, trunc)]
        return LambdaSeries(floor, co)

    @staticmethod
    def one(trunc: int) -> "LambdaSeries":
        return LambdaSeries.from_map({0: 1}, trunc)

    @staticmethod
    def mono(exp: int, v, trunc: int) -> "LambdaSeries":
        return LambdaSeries.from_map({exp: v}, trunc)

    # -- structure ---------------------------------------------------------------
    @property
    def trunc(self) -> int:
        return self.floor + len(self.co)

    def is_exact_zero(self) -> bool:
        return not self.co

    def pruned(self) -> "LambdaSeries":
        """Advance floor past leading zero coefficients, keeping the window."""
        i = 0
        while i < len(self.co) and not self.co[i]:
            i += 1
        if i == 0:
            return self
        if i == len(self.co):
            # all-zero through the window: keep a sentinel so trunc survives
            return LambdaSeries(self.trunc - 1, [TL_ZERO])
        return LambdaSeries(self.floor + i, self.co[i:])

    def valuation(self) -> Optional[int]:
        for i, c in enumerate(self.co):
            if c:
                return self.floor + i
        return None

    def coeff(self, e: int) -> TauLaurent:
        if not self.co:
            return TL_ZERO
        if e < self.floor:
            return TL_ZERO
        if e >= self.trunc:
            raise InternalError(f"coefficient lambda^{e} beyond truncation {self.trunc}")
        return self.co[e - self.floor]

    def scalar_coeff(self, e: int) -> GaussianRational:
        return self.coeff(e).as_scalar()

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "LambdaSeries") -> "LambdaSeries":
        if not other.co:
            return self
        if not self.co:
            return other
        floor = min(self.floor, other.floor)
        trunc = min(self.trunc, other.trunc)
        if trunc <= floor:
            raise InternalError("empty window in series addition")
        co = [self.coeff(e) + other.coeff(e) for e in range(floor, trunc)]
        return LambdaSeries(floor, co).pruned()

    def __neg__(self):
        return LambdaSeries(self.floor, [-c for c in self.co])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LambdaSeries") -> "LambdaSeries":
        a, b = self.pruned(), other.pruned()
        if not a.co or not b.co:
            return LambdaSeries(0, [])
        floor = a.floor + b.floor
        trunc = min(a.floor + b.trunc, b.floor + a.trunc)
        n = trunc - floor
        out = [TL_ZERO] * n
        for i, ca in enumerate(a.co):
            if not ca:
                continue
            jmax = min(len(b.co), n - i)
            for j in range(jmax):
                cb = b.co[j]
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return LambdaSeries(floor, out)

    def scale(self, v) -> "LambdaSeries":
        g = _gr(v)
        if not g:
            return LambdaSeries(0, [])
        return LambdaSeries(self.floor, [c.scale(g) for c in self.co])

    def scale_tau(self, t: TauLaurent) -> "LambdaSeries":
        if not t:
            return LambdaSeries(0, [])
        return LambdaSeries(self.floor, [c * t for c in self.co])

    def shift(self, d: int) -> "LambdaSeries":
        return LambdaSeries(self.floor + d, list(self.co))

    def inverse(self) -> "LambdaSeries":
        a = self.pruned()
        if not a.co or not a.co[0]:
            raise UsageError("cannot invert a series with zero leading coefficient")
        v = a.floor
        lead_inv = a.co[0].inverse()
        n = len(a.co)
        out: List[TauLaurent] = [lead_inv]
        for m in range(1, n):
            acc = TL_ZERO
            for j in range(1, m + 1):
                if j < len(a.co) and a.co[j] and out[m - j]:
                    acc = acc + a.co[j] * out[m - j]
            out.append((-acc) * lead_inv if acc else TL_ZERO)
        return LambdaSeries(-v, out)

    def div(self, other: "LambdaSeries") -> "LambdaSeries":
        """Division, exact through the common window.

        The leading coefficient of ``other`` must divide exactly at every
        step (monomial leads always do); otherwise InternalError signals a
        nonzero remainder.
        """
        a, b = self.pruned(), other.pruned()
        if not b.co:
            raise ZeroDivisionError("series division by exact zero")
        if not b.co[0]:
            raise UsageError("division by series with zero leading coefficient")
        if not a.co:
            return LambdaSeries(0, [])
        v = b.floor
        lead = b.co[0]
        n = min(len(a.co), len(b.co))
        qfloor = a.floor - v
        q: List[TauLaurent] = []
        rem = list(a.co[:n])
        for m in range(n):
            qm = rem[m].divexact(lead) if rem[m] else TL_ZERO
            q.append(qm)
            if qm:
                for j in range(1, n - m):
                    if j < len(b.co) and b.co[j]:
                        rem[m + j] = rem[m + j] - qm * b.co[j]
        return LambdaSeries(qfloor, q)

    def __pow__(self, k: int) -> "LambdaSeries":
        if k < 0:
            return self.inverse() ** (-k)
        # repeated multiplication keeps window bookkeeping exact
        out: Optional[LambdaSeries] = None
        base = self
        kk = k
        while kk:
            if kk & 1:
                out = base if out is None else out * base
            kk >>= 1
            if kk:
                base = base * base
        if out is None:
            raise UsageError("power 0 has no well-defined window; use one(trunc)")
        return out

    def exp(self) -> "LambdaSeries":
        s = self.pruned()
        if not s.co:
            raise UsageError("exp needs an explicit window; got exact zero")
        val = s.valuation()
        if val is not None and val < 1:
            raise UsageError("exp requires valuation >= 1")
        trunc = s.trunc
        out = LambdaSeries.one(trunc)
        if val is None:
            return out
        term = LambdaSeries.one(trunc)
        kmax = (trunc - 1) // val
        for k in range(1, kmax + 1):
            term = (term * s).scale(Fraction(1, k))
            term = LambdaSeries(term.floor, term.co[: trunc - term.floor])
            out = out + term
        return out

    def log(self) -> "LambdaSeries":
        s = self.pruned()
        if not s.co or s.floor > 0 or s.coeff(0) != TL_ONE:
            raise UsageError("log requires constant term 1")
        if s.floor < 0:
            s = LambdaSeries(0, s.co[-s.floor:])
        trunc = s.trunc
        x = s - LambdaSeries.one(trunc)
        x = x.pruned()
        if not x.co:
            return LambdaSeries(0, [])
        val = x.valuation()
        out: Optional[LambdaSeries] = None
        term = LambdaSeries.one(trunc)
        kmax = (trunc - 1) // val
        for k in range(1, kmax + 1):
            term = term * x
            term = LambdaSeries(term.floor, term.co[: trunc - term.floor])
            piece = term.scale(Fraction((-1) ** (k - 1), k))
            out = piece if out is None else out + piece
        return out if out is not None else LambdaSeries(0, [])

    # -- tau plumbing ----------------------------------------------------------
    def map_coeffs(self, f: Callable[[int, TauLaurent], TauLaurent]) -> "LambdaSeries":
        return LambdaSeries(self.floor,
                            [f(self.floor + i, c) for i, c in enumerate(self.co)]).pruned()

    def tau_deriv(self) -> "LambdaSeries":
        return self.map_coeffs(lambda e, c: c.deriv())

    def tau_eval(self, x) -> "LambdaSeries":
        g = _gr(x)
        return self.map_coeffs(lambda e, c: TauLaurent.scalar(c.eval(g)))

    def tau_inverse(self) -> "LambdaSeries":
        return self.map_coeffs(lambda e, c: c.subs_inverse())

    def subst_scale(self, c) -> "LambdaSeries":
        """lambda -> c*lambda for an invertible scalar c."""
        g = _gr(c)
        return self.map_coeffs(lambda e, t: t.scale(g ** e))

    # -- comparisons -------------------------------------------------------------
    def window_with(self, other: "LambdaSeries") -> Tuple[int, int]:
        if not self.co:
            return (other.floor, other.trunc) if other.co else (0, 0)
        if not other.co:
            return (self.floor, self.trunc)
        return (min(self.floor, other.floor), min(self.trunc, other.trunc))

    def eq_through(self, other: "LambdaSeries", lo: int, hi: int) -> bool:
        if self.co and self.trunc < hi:
            raise UsageError(f"truncation {self.trunc} below requested order {hi}")
        if other.co and other.trunc < hi:
            raise UsageError(f"truncation {other.trunc} below requested order {hi}")
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi))

    def is_zero_through(self, hi: Optional[int] = None) -> bool:
        if not self.co:
            return True
        hi = self.trunc if hi is None else hi
        if hi > self.trunc:
            raise UsageError(f"truncation {self.trunc} below requested order {hi}")
        return all(not self.coeff(e) for e in range(self.floor, hi))

    def __eq__(self, other):
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        lo, hi = self.window_with(other)
        return self.eq_through(other, lo, hi)

    def __repr__(self):
        if not self.co:
            return "O(lambda^inf) [exact zero]"
        parts = [f"({c})*L^{self.floor + i}" for i, c in enumerate(self.co) if c]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(L^{self.trunc})"


def sin_expand(m: int, trunc: int) -> LambdaSeries:
    """2*sin(m*lambda/2) as a series with rational coefficients, to order ``trunc``."""
    if trunc <= 1:
        raise UsageError("truncation order must exceed 1")
    if m == 0:
        return LambdaSeries(0, [])
    half = Fraction(m, 2)
    coeffs: Dict[int, object] = {}
    k = 1
    while k < trunc:
        coeffs[k] = 2 * (-1) ** ((k - 1) // 2) * half ** k / factorial(k)
        k += 2
    return LambdaSeries.from_map(coeffs, trunc)


def exp_monomial(coeff, exp: int, trunc: int) -> LambdaSeries:
    """exp(coeff * lambda^exp) for exp >= 1, truncated at ``trunc``."""
    if exp < 1:
        raise UsageError("exp_monomial requires exponent >= 1")
    g = _gr(coeff)
    m: Dict[int, object] = {}
    k = 0
    p = GR_ONE
    while k * exp < trunc:
        m[k * exp] = p * Fraction(1, factorial(k))
        p = p * g
        k += 1
    return LambdaSeries.from_map(m, trunc)


def ls_sum(terms: Iterable[LambdaSeries]) -> LambdaSeries:
    out: Optional[LambdaSeries] = None
    for t in terms:
        out = t if out is None else out + t
    return out if out is not None else LambdaSeries(0, [])
