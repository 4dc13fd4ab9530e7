"""Exact evaluation of the biunitary divisor sum and related arithmetic functions.

Everything here works on plain Python integers but enforces a 64-bit result
contract: any public operation whose result would not fit in an unsigned
64-bit word raises :class:`Overflow64Error` instead of silently returning a
big integer.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

U64_MAX = 2**64 - 1

ORACLE_BOUND = 10**6

# Deterministic Miller-Rabin witness set for the full unsigned 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1 << 16


class Overflow64Error(ArithmeticError):
    """Result does not fit in an unsigned 64-bit integer."""


class FactorizationGiveUp(RuntimeError):
    """Pollard rho exhausted its iteration budget without splitting."""


def _check_u64(x: int, context: str) -> int:
    if x > U64_MAX:
        raise Overflow64Error(f"{context}: {x} exceeds 64 bits")
    return x


def _small_prime_sieve(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(limit + 1) if sieve[i]]


SMALL_PRIMES: list[int] = _small_prime_sieve(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact over the 64-bit range."""
    if n < 0 or n > U64_MAX:
        raise ValueError(f"is_prime expects an unsigned 64-bit integer, got {n}")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: strictly increasing (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]
    value: int

    def __post_init__(self) -> None:
        prev = 0
        prod = 1
        for p, e in self.pairs:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p**e
            prev = p
        if prod != self.value:
            raise ValueError(f"pairs reconstruct {prod}, not {self.value}")
        _check_u64(self.value, "Factorization value")

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class Valuation:
    """Exact p-adic valuation: base**count divides the subject exactly."""

    base: int
    count: int


def _brent_rho(n: int, max_iter: int = 1 << 20) -> int:
    """Find a nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    for _ in range(16):
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        count = 0
        while g == 1 and count < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            count += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationGiveUp(f"rho gave up on {n}")


def _factor_into(n: int, acc: dict[int, int]) -> None:
    while n > 1:
        if is_prime(n):
            acc[n] = acc.get(n, 0) + 1
            return
        d = _brent_rho(n)
        _factor_into(d, acc)
        n //= d


def factorize(n: int, spf: "SpfLookup | None" = None) -> Factorization:
    """Canonical factorization of n >= 1.

    If ``spf`` covers n, the smallest-prime-factor table is used; otherwise
    trial division by the base prime list followed by a rho splitter with
    deterministic primality certification.
    """
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    _check_u64(n, "factorize input")
    if n == 1:
        return Factorization((), 1)
    acc: dict[int, int] = {}
    m = n
    if spf is not None:
        # strip factors while the quotient stays inside the table's range
        while m > 1 and spf.covers(m):
            p = spf.least_factor(m)
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            acc[p] = acc.get(p, 0) + e
    if m > 1:
        for p in SMALL_PRIMES:
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                acc[p] = acc.get(p, 0) + e
        if m > 1:
            if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
                acc[m] = acc.get(m, 0) + 1
            else:
                _factor_into(m, acc)
    pairs = tuple(sorted(acc.items()))
    return Factorization(pairs, n)


class SpfLookup:
    """Smallest-prime-factor table over a contiguous interval [lo, hi]."""

    def __init__(self, lo: int, hi: int, table: list[int]):
        if len(table) != hi - lo + 1:
            raise ValueError("table length does not match interval")
        self.lo = lo
        self.hi = hi
        self._table = table

    def covers(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def least_factor(self, n: int) -> int:
        return self._table[n - self.lo]


def sigma_bu_prime_power(p: int, e: int) -> int:
    """Sum of biunitary divisors of p**e.

    Odd e: full geometric sum (p**(e+1)-1)/(p-1); even e: the same sum minus
    the middle divisor p**(e/2).
    """
    if e < 1:
        raise ValueError(f"exponent must be positive, got {e}")
    s = (p ** (e + 1) - 1) // (p - 1)
    if e % 2 == 0:
        s -= p ** (e // 2)
    return _check_u64(s, f"sigma_bu({p}^{e})")


def sigma_bu_prime_power_floor(p: int, e: int) -> int:
    """Single-formula variant: (p^floor((e+2)/2)+1)(p^floor((e+1)/2)-1)/(p-1)."""
    if e < 1:
        raise ValueError(f"exponent must be positive, got {e}")
    s = (p ** ((e + 2) // 2) + 1) * (p ** ((e + 1) // 2) - 1) // (p - 1)
    return _check_u64(s, f"sigma_bu({p}^{e})")


def sigma_bu(f: Factorization) -> int:
    """Biunitary divisor sum, assembled multiplicatively. sigma_bu(1) = 1."""
    s = 1
    for p, e in f:
        s *= sigma_bu_prime_power(p, e)
    return _check_u64(s, f"sigma_bu({f.value})")


def sigma_bu_of(n: int) -> int:
    return sigma_bu(factorize(n))


def _divisors(f: Factorization) -> list[int]:
    divs = [1]
    for p, e in f:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return divs


def sigma_bu_oracle(n: int, bound: int = ORACLE_BOUND) -> int:
    """Ground truth by divisor enumeration, independent of the formula path.

    d | n is biunitary iff no prime p has v_p(d) >= 1 with 2*v_p(d) = v_p(n).
    """
    if not 1 <= n <= bound:
        raise ValueError(f"oracle accepts 1 <= n <= {bound}, got {n}")
    f = factorize(n)
    total = 0
    for d in _divisors(f):
        ok = True
        for p, e in f:
            vd = 0
            dd = d
            while dd % p == 0:
                dd //= p
                vd += 1
            if vd >= 1 and 2 * vd == e:
                ok = False
                break
        if ok:
            total += d
    return total


def sigma_unitary(f: Factorization) -> int:
    """Unitary divisor sum: product of (p**e + 1)."""
    s = 1
    for p, e in f:
        s *= p**e + 1
    return _check_u64(s, f"sigma_unitary({f.value})")


def sigma_unitary_of(n: int) -> int:
    return sigma_unitary(factorize(n))


def sigma_classic(f: Factorization) -> int:
    """Ordinary divisor sum: product of (p**(e+1) - 1)/(p - 1)."""
    s = 1
    for p, e in f:
        s *= (p ** (e + 1) - 1) // (p - 1)
    return _check_u64(s, f"sigma({f.value})")


def sigma_classic_of(n: int) -> int:
    return sigma_classic(factorize(n))


def omega(f: Factorization) -> int:
    """Number of distinct prime factors."""
    return len(f.pairs)


def valuation(n: int, p: int) -> Valuation:
    """Exact p-adic valuation of n (p prime, n >= 1)."""
    if n < 1:
        raise ValueError(f"valuation expects n >= 1, got {n}")
    if not is_prime(p):
        raise ValueError(f"valuation base must be prime, got {p}")
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return Valuation(p, count)
