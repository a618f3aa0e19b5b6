"""Partition combinatorics and symmetric-group character data.

Partitions are plain tuples of weakly decreasing positive integers; the empty
partition is ``()``.  Characters are computed by the Murnaghan-Nakayama
ribbon recursion with a shared memo cache; cached values are pure functions
of their keys, so concurrent use only ever repeats idempotent inserts.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Tuple

from .errors import UsageError

Partition = Tuple[int, ...]


def check_partition(mu) -> Partition:
    mu = tuple(int(p) for p in mu)
    if any(p <= 0 for p in mu):
        raise UsageError(f"parts must be positive: {mu}")
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise UsageError(f"parts must be weakly decreasing: {mu}")
    return mu


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    return check_partition(int(t) for t in text.split(","))


def format_partition(mu: Partition) -> str:
    return ",".join(str(p) for p in mu)


def size(mu: Partition) -> int:
    return sum(mu)


def length(mu: Partition) -> int:
    return len(mu)


def aut(mu: Partition) -> int:
    """|Aut(mu)|: product of factorials of part multiplicities."""
    out = 1
    mult: Dict[int, int] = {}
    for p in mu:
        mult[p] = mult.get(p, 0) + 1
    for m in mult.values():
        out *= factorial(m)
    return out


def zmu(mu: Partition) -> int:
    """prod_j m_j! j^{m_j} = |Aut(mu)| * prod(parts)."""
    out = aut(mu)
    for p in mu:
        out *= p
    return out


def kappa(mu: Partition) -> int:
    """|mu| + sum_i (mu_i^2 - 2 i mu_i); always even."""
    k = sum(mu) + sum(p * p - 2 * (i + 1) * p for i, p in enumerate(mu))
    assert k % 2 == 0
    return k


def conjugate(mu: Partition) -> Partition:
    if not mu:
        return ()
    out = []
    for i in range(1, mu[0] + 1):
        out.append(sum(1 for p in mu if p >= i))
    return tuple(out)


def contains(mu: Partition, rho: Partition) -> bool:
    """Young-diagram containment rho subset-of mu."""
    if len(rho) > len(mu):
        return False
    return all(rho[i] <= mu[i] for i in range(len(rho)))


def intersection(mu: Partition, nu: Partition) -> Partition:
    out = tuple(min(a, b) for a, b in zip(mu, nu))
    return tuple(p for p in out if p > 0)


def sub_diagrams(mu: Partition) -> Iterator[Partition]:
    """All partitions contained in the diagram of mu."""
    if not mu:
        yield ()
        return

    def rec(i: int, prev: int) -> Iterator[Tuple[int, ...]]:
        if i == len(mu):
            yield ()
            return
        cap = min(mu[i], prev)
        for first in range(cap, -1, -1):
            if first == 0:
                yield ()
                return
            for rest in rec(i + 1, first):
                yield (first,) + rest

    seen = set()
    for rho in rec(0, mu[0]):
        if rho not in seen:
            seen.add(rho)
            yield rho


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of n, reverse-lexicographic: (n) first, (1,...,1) last."""
    if n < 0:
        raise UsageError("cannot partition a negative integer")
    if n == 0:
        return ((),)

    def gen(rem: int, cap: int) -> Iterator[Partition]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def multiplicities(mu: Partition) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for p in mu:
        out[p] = out.get(p, 0) + 1
    return out


def remove_part(mu: Partition, p: int) -> Partition:
    out = list(mu)
    out.remove(p)
    return tuple(out)


def add_parts(mu: Partition, *parts: int) -> Partition:
    return tuple(sorted(mu + tuple(parts), reverse=True))


# ---------------------------------------------------------------------------
# hooks and dimensions
# ---------------------------------------------------------------------------

def hook_lengths(nu: Partition) -> List[int]:
    conj = conjugate(nu)
    out = []
    for i, row in enumerate(nu):
        for j in range(row):
            out.append(row - j + conj[j] - i - 1)
    return out


def hook_product(nu: Partition) -> int:
    out = 1
    for h in hook_lengths(nu):
        out *= h
    return out


def hook_dim(nu: Partition) -> Fraction:
    """dim R_nu / |nu|! = 1/prod of hook lengths."""
    return Fraction(1, hook_product(nu))


def dim(nu: Partition) -> int:
    d = factorial(size(nu)) // hook_product(nu)
    assert d * hook_product(nu) == factorial(size(nu))
    return d


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama characters
# ---------------------------------------------------------------------------

def _beta_set(nu: Partition) -> Tuple[int, ...]:
    l = len(nu)
    return tuple(nu[i] + l - 1 - i for i in range(l))


def _shape_from_beta(beta: List[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    l = len(beta)
    sh = tuple(beta[i] - (l - 1 - i) for i in range(l))
    return tuple(p for p in sh if p > 0)


_char_cache: Dict[Tuple[Partition, Partition], int] = {}


def character(nu: Partition, mu: Partition) -> int:
    """Irreducible character chi_nu at the conjugacy class C(mu)."""
    if size(nu) != size(mu):
        raise UsageError(f"size mismatch: |{nu}| != |{mu}|")
    return _mn(nu, mu)


def _mn(nu: Partition, mu: Partition) -> int:
    if not mu:
        return 1
    key = (nu, mu)
    val = _char_cache.get(key)
    if val is not None:
        return val
    k = mu[0]
    rest = mu[1:]
    beta = set(_beta_set(nu))
    total = 0
    for b in beta:
        b2 = b - k
        if b2 < 0 or b2 in beta:
            continue
        ht = sum(1 for x in beta if b2 < x < b)
        nb = list(beta)
        nb.remove(b)
        nb.append(b2)
        total += (-1) ** ht * _mn(_shape_from_beta(nb), rest)
    _char_cache[key] = total
    return total


def basic_stats(mu: Partition) -> Tuple[int, int, int]:
    """(z_mu, |Aut(mu)|, kappa_mu)."""
    return zmu(mu), aut(mu), kappa(mu)
