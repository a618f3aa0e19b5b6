"""Formal series in partition-indexed variables, up to three families.

A ``PSeries`` stores a map from keys (one partition per family) to
``LambdaSeries`` coefficients.  Keys are truncated by per-family weight caps.
The cut-and-join operators act family by family:

    linear part   (1/2) sum_{i,j>=1} [ (i+j) p_i p_j d/dp_{i+j}
                                       + i j p_{i+j} d^2/dp_i dp_j ]
    nonlinear     linear + (1/2) sum_{i,j} i j p_{i+j} (dF/dp_i)(dF/dp_j)

with the sums over ordered pairs and the global 1/2 as displayed; both
conserve total weight within their family.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from .errors import UsageError
from .partitions import Partition, add_parts, multiplicities, remove_part
from .series import LambdaSeries

Key = Tuple[Partition, ...]


def empty_key(fams: int) -> Key:
    return ((),) * fams


def key_weight(key: Key) -> int:
    return sum(sum(mu) for mu in key)


class PSeries:
    __slots__ = ("fams", "caps", "co")

    def __init__(self, fams: int, caps: Tuple[int, ...],
                 co: Optional[Dict[Key, LambdaSeries]] = None):
        if fams not in (1, 2, 3):
            raise UsageError("1 to 3 families supported")
        if len(caps) != fams or any(c < 0 for c in caps):
            raise UsageError("need one nonnegative weight cap per family")
        self.fams = fams
        self.caps = tuple(caps)
        self.co = {}
        if co:
            for k, s in co.items():
                if self._fits(k) and not s.is_exact_zero():
                    self.co[k] = s

    # -- helpers ------------------------------------------------------------
    def _fits(self, key: Key) -> bool:
        return all(sum(mu) <= cap for mu, cap in zip(key, self.caps))

    def _like(self, co: Dict[Key, LambdaSeries]) -> "PSeries":
        return PSeries(self.fams, self.caps, co)

    def coeff(self, key: Key) -> LambdaSeries:
        return self.co.get(tuple(tuple(m) for m in key), LambdaSeries.zero())

    def keys(self):
        return sorted(self.co.keys())

    def check_compatible(self, other: "PSeries"):
        if self.fams != other.fams or self.caps != other.caps:
            raise UsageError("family count / degree cap mismatch")

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "PSeries") -> "PSeries":
        self.check_compatible(other)
        co = dict(self.co)
        for k, s in other.co.items():
            co[k] = s if k not in co else co[k] + s
        return self._like(co)

    def __neg__(self):
        return self._like({k: -s for k, s in self.co.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, v) -> "PSeries":
        return self._like({k: s.scale(v) for k, s in self.co.items()})

    def scale_series(self, ls: LambdaSeries) -> "PSeries":
        return self._like({k: s * ls for k, s in self.co.items()})

    def map_coeffs(self, f: Callable[[Key, LambdaSeries], LambdaSeries]) -> "PSeries":
        return self._like({k: f(k, s) for k, s in self.co.items()})

    def tau_deriv(self) -> "PSeries":
        return self.map_coeffs(lambda k, s: s.tau_deriv())

    def tau_eval(self, x) -> "PSeries":
        return self.map_coeffs(lambda k, s: s.tau_eval(x))

    # -- multiplication ----------------------------------------------------------
    def __mul__(self, other: "PSeries") -> "PSeries":
        self.check_compatible(other)
        co: Dict[Key, LambdaSeries] = {}
        for k1, s1 in self.co.items():
            for k2, s2 in other.co.items():
                key = tuple(add_parts(a, *b) for a, b in zip(k1, k2))
                if not self._fits(key):
                    continue
                prod = s1 * s2
                co[key] = prod if key not in co else co[key] + prod
        return self._like(co)

    def pow(self, k: int) -> "PSeries":
        if k < 1:
            raise UsageError("pow expects a positive exponent")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    # -- grading -----------------------------------------------------------------
    def min_weight(self) -> Optional[int]:
        w = None
        for k, s in self.co.items():
            if s.is_exact_zero():
                continue
            kw = key_weight(k)
            if w is None or kw < w:
                w = kw
        return w

    def drop_empty_key(self) -> "PSeries":
        co = dict(self.co)
        co.pop(empty_key(self.fams), None)
        return self._like(co)

    def exp(self, trunc: int) -> "PSeries":
        """exp of a series with no constant (empty-key) term."""
        ek = empty_key(self.fams)
        if ek in self.co and not self.co[ek].is_zero_through():
            raise UsageError("exp requires zero constant term")
        x = self.drop_empty_key()
        out = self._like({ek: LambdaSeries.one(trunc)})
        if not x.co:
            return out
        mw = x.min_weight()
        if mw is None or mw < 1:
            return out
        term = self._like({ek: LambdaSeries.one(trunc)})
        mmax = sum(self.caps) // mw
        for m in range(1, mmax + 1):
            term = (term * x).scale(Fraction(1, m))
            out = out + term
        return out

    def log(self) -> "PSeries":
        """log of a series with constant (empty-key) term 1."""
        ek = empty_key(self.fams)
        one = self.co.get(ek)
        if one is None or not (one - LambdaSeries.one(one.trunc)).is_zero_through():
            raise UsageError("log requires constant term exactly 1")
        x = self._like({k: s for k, s in self.co.items() if k != ek})
        if not x.co:
            return self._like({})
        mw = x.min_weight()
        out: Optional[PSeries] = None
        term = None
        mmax = sum(self.caps) // mw
        for m in range(1, mmax + 1):
            term = x if term is None else term * x
            piece = term.scale(Fraction((-1) ** (m - 1), m))
            out = piece if out is None else out + piece
        return out if out is not None else self._like({})

    # -- derivatives and multiplication by variables ------------------------------
    def pderiv(self, fam: int, part: int) -> "PSeries":
        co: Dict[Key, LambdaSeries] = {}
        for k, s in self.co.items():
            mu = k[fam]
            m = mu.count(part)
            if not m:
                continue
            key = k[:fam] + (remove_part(mu, part),) + k[fam + 1:]
            piece = s.scale(m)
            co[key] = piece if key not in co else co[key] + piece
        return self._like(co)

    def mul_parts(self, fam: int, *parts: int) -> "PSeries":
        co: Dict[Key, LambdaSeries] = {}
        for k, s in self.co.items():
            key = k[:fam] + (add_parts(k[fam], *parts),) + k[fam + 1:]
            if not self._fits(key):
                continue
            co[key] = s if key not in co else co[key] + s
        return self._like(co)

    # -- cut-and-join --------------------------------------------------------------
    def cut_join_linear(self, fam: int = 0) -> "PSeries":
        co: Dict[Key, LambdaSeries] = {}

        def put(key: Key, s: LambdaSeries):
            if s.is_exact_zero():
                return
            co[key] = s if key not in co else co[key] + s

        for k, s in self.co.items():
            mu = k[fam]
            mult = multiplicities(mu)
            parts = sorted(mult)
            # join: remove i and j, add i+j
            for ii, i in enumerate(parts):
                for j in parts[ii:]:
                    if i == j:
                        m = mult[i]
                        if m < 2:
                            continue
                        coefficient = Fraction(i * i * m * (m - 1), 2)
                        nu = add_parts(remove_part(remove_part(mu, i), i), 2 * i)
                    else:
                        coefficient = Fraction(i * j * mult[i] * mult[j])
                        nu = add_parts(remove_part(remove_part(mu, i), j), i + j)
                    key = k[:fam] + (nu,) + k[fam + 1:]
                    put(key, s.scale(coefficient))
            # cut: remove s', add i + j with i + j = s'
            for sp, m in mult.items():
                base = remove_part(mu, sp)
                for i in range(1, sp // 2 + 1):
                    j = sp - i
                    coefficient = Fraction(sp * m) if i != j else Fraction(sp * m, 2)
                    nu = add_parts(base, i, j)
                    key = k[:fam] + (nu,) + k[fam + 1:]
                    put(key, s.scale(coefficient))
        return self._like(co)

    def cut_join_nonlinear(self, fam: int = 0) -> "PSeries":
        out = self.cut_join_linear(fam)
        cap = self.caps[fam]
        derivs: Dict[int, PSeries] = {}
        for i in range(1, cap + 1):
            d = self.pderiv(fam, i)
            if d.co:
                derivs[i] = d
        for i, di in derivs.items():
            for j, dj in derivs.items():
                if j < i or i + j > cap:
                    continue
                prod = (di * dj).mul_parts(fam, i + j)
                w = Fraction(i * j) if i != j else Fraction(i * j, 2)
                out = out + prod.scale(w)
        return out

    # -- predicates ---------------------------------------------------------------
    def is_zero_through_windows(self) -> bool:
        return all(s.is_zero_through() for s in self.co.values())

    def max_abs(self) -> Fraction:
        m = Fraction(0)
        for s in self.co.values():
            for c in s.co:
                a = c.max_abs()
                if a > m:
                    m = a
        return m

    def eq_through_windows(self, other: "PSeries") -> bool:
        self.check_compatible(other)
        return (self - other).is_zero_through_windows()

    def __repr__(self):
        lines = [f"PSeries(fams={self.fams}, caps={self.caps})"]
        for k in self.keys():
            lines.append(f"  {k}: {self.co[k]!r}")
        return "\n".join(lines)
