"""Pure-Python scan kernel.

Same contract as the compiled module (`_scan`): exact integer results, so a
compiled and a pure run over the same interval are interchangeable.
"""

from __future__ import annotations

import math

from .. import arith

_base_primes: list[int] = []
_base_limit = 0


def _primes_up_to(limit: int) -> list[int]:
    global _base_primes, _base_limit
    if limit > _base_limit:
        _base_primes = arith._small_prime_sieve(max(limit, 1 << 12))
        _base_limit = max(limit, 1 << 12)
    return _base_primes


def sigma_bu_range(lo: int, hi: int) -> list[int]:
    """sigma**(n) for every n in [lo, hi], by a segmented factor sweep."""
    if not 1 <= lo <= hi:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    size = hi - lo + 1
    rem = list(range(lo, hi + 1))
    sig = [1] * size
    root = math.isqrt(hi)
    for p in _primes_up_to(root):
        if p > root:
            break
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi + 1, p):
            i = m - lo
            r = rem[i]
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            rem[i] = r
            sig[i] *= arith.sigma_bu_prime_power(p, e)
    for i in range(size):
        if rem[i] > 1:
            # single prime factor above sqrt(hi), exponent 1
            sig[i] *= rem[i] + 1
    return sig


def scan_block(lo: int, hi: int) -> list[tuple[int, int, int, int]]:
    """All (n, s1, s2, k) with n in [lo, hi] and s2 = sigma**(sigma**(n)) = k*n."""
    out = []
    for i, s1 in enumerate(sigma_bu_range(lo, hi)):
        n = lo + i
        s2 = arith.sigma_bu(arith.factorize(s1))
        if s2 % n == 0:
            out.append((n, s1, s2, s2 // n))
    return out
