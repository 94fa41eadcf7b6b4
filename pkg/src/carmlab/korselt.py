"""Korselt's criterion: certification, the (6m+1)(12m+1)(18m+1) family,
and bulk enumeration by a blocked factor sieve.

A composite n is Carmichael exactly when it is squarefree and (p - 1)
divides (n - 1) for every prime p dividing n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, DomainError
from .factoring import (DEFAULT_BUDGET, FactorBudget, Factorization, factorize,
                        is_prime, primes_up_to)

DEFAULT_ENUMERATION_CAP = 100_000_000
_BLOCK_ODDS = 1 << 19  # odd candidates per sieve block


@dataclass(frozen=True)
class CarmichaelCertificate:
    """Korselt evidence for one n: the factorization, squarefreeness, and
    the per-prime (p - 1) | (n - 1) outcomes.  Truthy iff n is Carmichael."""

    n: int
    factorization: Factorization
    squarefree: bool
    divisibility_checks: tuple[tuple[int, bool], ...]

    @property
    def composite(self) -> bool:
        return sum(e for _, e in self.factorization.factors) >= 2

    @property
    def is_carmichael(self) -> bool:
        return (self.composite and self.squarefree
                and len(self.factorization.factors) >= 2
                and all(ok for _, ok in self.divisibility_checks))

    def __bool__(self) -> bool:
        return self.is_carmichael

    def to_json_dict(self) -> dict:
        return {"n": self.n,
                "factors": [[p, e] for p, e in self.factorization.factors],
                "squarefree": self.squarefree,
                "divisibility_checks": [[p, ok] for p, ok in self.divisibility_checks],
                "is_carmichael": self.is_carmichael}


def certificate_from_factorization(factorization: Factorization) -> CarmichaelCertificate:
    n = factorization.subject
    checks = tuple((p, (n - 1) % (p - 1) == 0) for p in factorization.primes)
    return CarmichaelCertificate(n, factorization, factorization.squarefree, checks)


def is_carmichael(n: int, factorization: Factorization | None = None,
                  budget: FactorBudget = DEFAULT_BUDGET) -> CarmichaelCertificate:
    """Certificate for n; use its truth value for the plain verdict.

    Primes and 1 yield a falsy certificate (not composite).
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if factorization is None:
        factorization = Factorization(1, ()) if n == 1 else factorize(n, budget)
    elif factorization.subject != n:
        raise DomainError("factorization does not describe n")
    return certificate_from_factorization(factorization)


def chernick(m: int) -> int | None:
    """(6m+1)(12m+1)(18m+1) when all three factors are prime, else None.

    Any such product is Carmichael, so scanning m is a cheap generator of
    examples; absence (a composite factor) is expected, not an error.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    parts = (6 * m + 1, 12 * m + 1, 18 * m + 1)
    if all(is_prime(x) for x in parts):
        return parts[0] * parts[1] * parts[2]
    return None


def enumerate_carmichael(limit: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[int]:
    """All Carmichael numbers <= limit, in increasing order.

    Blocked factor sieve over the odd candidates: shared scans over the
    primes below sqrt(limit) factor every candidate, and Korselt's
    conditions are applied as the factors appear, so the per-candidate
    cost is amortized instead of a fresh factorization each.
    """
    if limit < 0:
        raise DomainError(f"limit must be non-negative, got {limit}")
    if limit > cap:
        raise CapExceededError(f"limit {limit} exceeds the enumeration cap {cap}")
    return enumerate_carmichael_range(3, limit)


def enumerate_carmichael_range(lo: int, hi: int) -> list[int]:
    """Carmichael numbers in [lo, hi]; blocks are independent, so disjoint
    ranges can run concurrently and concatenate in order."""
    lo = max(lo, 3)
    if hi < 9:  # smallest odd composite is 9
        return []
    if lo % 2 == 0:
        lo += 1
    primes = [p for p in primes_up_to(math.isqrt(hi)) if p > 2]
    found: list[int] = []
    for block_lo in range(lo, hi + 1, 2 * _BLOCK_ODDS):
        block_hi = min(block_lo + 2 * (_BLOCK_ODDS - 1), hi)
        if block_hi % 2 == 0:
            block_hi -= 1
        found.extend(_scan_block(block_lo, block_hi, primes))
    return found


def _scan_block(lo: int, hi: int, primes: list[int]) -> list[int]:
    """Korselt scan of the odd values in [lo, hi]; primes covers sqrt(hi)."""
    count = (hi - lo) // 2 + 1
    n_vals = lo + 2 * np.arange(count, dtype=np.int64)
    remainder = n_vals.copy()
    ok = np.ones(count, dtype=bool)
    distinct = np.zeros(count, dtype=np.int64)
    for p in primes:
        if p * p > hi:
            break
        first = ((lo + p - 1) // p) * p
        if first % 2 == 0:
            first += p
        if first > hi:
            continue
        # odd multiples of p sit p index positions apart
        sl = slice((first - lo) // 2, count, p)
        nv = n_vals[sl]
        if p > 3:  # (n-1) % 2 == 0 always holds for odd n
            ok[sl] &= (nv - 1) % (p - 1) == 0
        ok[sl] &= nv % (p * p) != 0  # squarefree
        remainder[sl] //= p
        distinct[sl] += 1
    # what survives division is either 1 or a single prime above sqrt(hi)
    has_residual = remainder > 1
    ok &= distinct + has_residual >= 2  # composite: at least two distinct primes
    pending = ok & has_residual
    ok[pending] = (n_vals[pending] - 1) % (remainder[pending] - 1) == 0
    return n_vals[ok].tolist()
