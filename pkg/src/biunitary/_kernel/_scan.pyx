# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel: segmented sigma** sweep plus 64-bit factorization.

Exact u64 arithmetic throughout; valid for intervals with hi <= 2^40 (second
iterates stay far below 2^64 there).
"""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    """
    typedef unsigned __int128 bu_u128;
    static inline unsigned long long bu_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long m) {
        return (unsigned long long)(((bu_u128)a * b) % m);
    }
    """
    u64 bu_mulmod(u64 a, u64 b, u64 m) nogil


cdef u64[54] SMALL_PRIMES
cdef int N_SMALL = 54
cdef u64[12] MR_BASES

def _init_small_primes():
    ps = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
          67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
          139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
          211, 223, 227, 229, 233, 239, 241, 251]
    for i, p in enumerate(ps):
        SMALL_PRIMES[i] = p
    for i, b in enumerate([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]):
        MR_BASES[i] = b

_init_small_primes()


# ---------------------------------------------------------------------------
# base prime table for the segmented sweep (primes up to sqrt(hi))

cdef u64 *_base_primes = NULL
cdef long _n_base = 0
cdef u64 _base_limit = 0

cdef int _grow_base_primes(u64 limit) except -1:
    global _base_primes, _n_base, _base_limit
    if limit <= _base_limit:
        return 0
    if limit < 4096:
        limit = 4096
    cdef unsigned char *sieve = <unsigned char *> malloc(limit + 1)
    if sieve == NULL:
        raise MemoryError()
    cdef u64 i, j
    for i in range(limit + 1):
        sieve[i] = 1
    sieve[0] = 0
    sieve[1] = 0
    i = 2
    while i * i <= limit:
        if sieve[i]:
            j = i * i
            while j <= limit:
                sieve[j] = 0
                j += i
        i += 1
    cdef long count = 0
    for i in range(limit + 1):
        if sieve[i]:
            count += 1
    cdef u64 *primes = <u64 *> malloc(count * sizeof(u64))
    if primes == NULL:
        free(sieve)
        raise MemoryError()
    cdef long k = 0
    for i in range(limit + 1):
        if sieve[i]:
            primes[k] = i
            k += 1
    free(sieve)
    if _base_primes != NULL:
        free(_base_primes)
    _base_primes = primes
    _n_base = count
    _base_limit = limit
    return 0


# ---------------------------------------------------------------------------
# u64 primitives

cdef inline u64 _gcd(u64 a, u64 b) nogil:
    cdef u64 t
    while b:
        t = a % b
        a = b
        b = t
    return a

cdef u64 _powmod(u64 a, u64 d, u64 m) nogil:
    cdef u64 r = 1
    a %= m
    while d:
        if d & 1:
            r = bu_mulmod(r, a, m)
        a = bu_mulmod(a, a, m)
        d >>= 1
    return r

cdef bint _mr_core(u64 n) nogil:
    # n odd, > 251, no factor <= 251
    cdef u64 d, x
    cdef int r, i, j, nbases
    d = n - 1
    r = 0
    while d % 2 == 0:
        d >>= 1
        r += 1
    # smallest known sufficient witness sets by size
    if n < 3215031751ULL:
        nbases = 4
    elif n < 3474749660383ULL:
        nbases = 5
    elif n < 341550071728321ULL:
        nbases = 7
    else:
        nbases = 12
    for i in range(nbases):
        x = _powmod(MR_BASES[i], d, n)
        if x == 1 or x == n - 1:
            continue
        for j in range(r - 1):
            x = bu_mulmod(x, x, n)
            if x == n - 1:
                break
        else:
            return False
    return True

cdef bint _is_prime(u64 n) nogil:
    cdef int i
    cdef u64 p
    if n < 2:
        return False
    for i in range(N_SMALL):
        p = SMALL_PRIMES[i]
        if n % p == 0:
            return n == p
        if p * p > n:
            return True
    return _mr_core(n)

cdef u64 _brent(u64 n) nogil:
    # n odd composite, all factors > 251
    cdef u64 c, x, y, ys, q, g, r, k, m, i
    c = 1
    while True:
        y = 2
        m = 128
        g = 1
        r = 1
        q = 1
        x = y
        ys = y
        while g == 1:
            x = y
            for i in range(r):
                y = bu_mulmod(y, y, n) + c
                if y >= n:
                    y -= n
            k = 0
            while k < r and g == 1:
                ys = y
                i = 0
                while i < m and i < r - k:
                    y = bu_mulmod(y, y, n) + c
                    if y >= n:
                        y -= n
                    q = bu_mulmod(q, x - y if x > y else y - x, n)
                    i += 1
                g = _gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = bu_mulmod(ys, ys, n) + c
                if ys >= n:
                    ys -= n
                g = _gcd(x - ys if x > ys else ys - x, n)
        if g != n:
            return g
        c += 1

cdef inline void _add_factor(u64 *fp, int *fe, int *cnt, u64 p, int e) nogil:
    cdef int j
    for j in range(cnt[0]):
        if fp[j] == p:
            fe[j] += e
            return
    fp[cnt[0]] = p
    fe[cnt[0]] = e
    cnt[0] += 1

cdef int _factor(u64 n, u64 *fp, int *fe) nogil:
    cdef int cnt = 0
    cdef int i, e
    cdef u64 p, m, d
    cdef u64[64] stack
    cdef int sp = 0
    for i in range(N_SMALL):
        p = SMALL_PRIMES[i]
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            _add_factor(fp, fe, &cnt, p, e)
    if n > 1:
        # residual has no factor <= 251 (or is prime below 251^2)
        if n < 63504 or _mr_core(n):
            _add_factor(fp, fe, &cnt, n, 1)
        else:
            stack[0] = n
            sp = 1
            while sp > 0:
                sp -= 1
                m = stack[sp]
                if _mr_core(m):
                    _add_factor(fp, fe, &cnt, m, 1)
                else:
                    d = _brent(m)
                    stack[sp] = d
                    stack[sp + 1] = m // d
                    sp += 2
    return cnt

cdef inline u64 _sbu_pp(u64 p, int e) nogil:
    # geometric sum 1+p+...+p^e, minus the middle term p^(e/2) for even e
    cdef u64 s = 1, pk = 1, half = 1
    cdef int i
    for i in range(e):
        pk *= p
        s += pk
        if 2 * (i + 1) == e:
            half = pk
    if e % 2 == 0:
        s -= half
    return s

cdef u64 _sigma_bu_u64(u64 n) nogil:
    cdef u64[64] fp
    cdef int[64] fe
    cdef int cnt, i
    cdef u64 s = 1
    if n == 1:
        return 1
    cnt = _factor(n, fp, fe)
    for i in range(cnt):
        s *= _sbu_pp(fp[i], fe[i])
    return s


# ---------------------------------------------------------------------------
# public entry points

def sigma_bu_range(lo_obj, hi_obj):
    """sigma**(n) for every n in [lo, hi], by a segmented factor sweep."""
    cdef u64 lo = lo_obj
    cdef u64 hi = hi_obj
    if lo < 1 or hi < lo:
        raise ValueError(f"bad interval [{lo_obj}, {hi_obj}]")
    cdef u64 size = hi - lo + 1
    cdef u64 *rem = <u64 *> malloc(size * sizeof(u64))
    cdef u64 *sig = <u64 *> malloc(size * sizeof(u64))
    if rem == NULL or sig == NULL:
        if rem != NULL:
            free(rem)
        if sig != NULL:
            free(sig)
        raise MemoryError()
    cdef u64 root = 1
    while (root + 1) * (root + 1) <= hi:
        root += 1
    _grow_base_primes(root)
    cdef u64 i, p, start, m, r
    cdef long pi
    cdef int e
    with nogil:
        for i in range(size):
            rem[i] = lo + i
            sig[i] = 1
        for pi in range(_n_base):
            p = _base_primes[pi]
            if p * p > hi:
                break
            start = ((lo + p - 1) // p) * p
            m = start
            while m <= hi:
                i = m - lo
                r = rem[i]
                e = 0
                while r % p == 0:
                    r //= p
                    e += 1
                rem[i] = r
                sig[i] *= _sbu_pp(p, e)
                m += p
        for i in range(size):
            if rem[i] > 1:
                sig[i] *= rem[i] + 1
    out = [0] * size
    for i in range(size):
        out[i] = sig[i]
    free(rem)
    free(sig)
    return out


def scan_block(lo_obj, hi_obj):
    """All (n, s1, s2, k) with n in [lo, hi] and s2 = sigma**(sigma**(n)) = k*n."""
    cdef u64 lo = lo_obj
    cdef u64 hi = hi_obj
    if lo < 1 or hi < lo:
        raise ValueError(f"bad interval [{lo_obj}, {hi_obj}]")
    cdef u64 size = hi - lo + 1
    cdef u64 *rem = <u64 *> malloc(size * sizeof(u64))
    cdef u64 *sig = <u64 *> malloc(size * sizeof(u64))
    if rem == NULL or sig == NULL:
        if rem != NULL:
            free(rem)
        if sig != NULL:
            free(sig)
        raise MemoryError()
    cdef u64 root = 1
    while (root + 1) * (root + 1) <= hi:
        root += 1
    _grow_base_primes(root)

    # hit buffer, grown geometrically (hits are sparse)
    cdef u64 cap = 256
    cdef u64 nhits = 0
    cdef u64 *hits = <u64 *> malloc(cap * 4 * sizeof(u64))
    if hits == NULL:
        free(rem)
        free(sig)
        raise MemoryError()

    cdef u64 i, p, start, m, r, n, s1, s2
    cdef long pi
    cdef int e
    cdef u64 *tmp
    with nogil:
        for i in range(size):
            rem[i] = lo + i
            sig[i] = 1
        for pi in range(_n_base):
            p = _base_primes[pi]
            if p * p > hi:
                break
            start = ((lo + p - 1) // p) * p
            m = start
            while m <= hi:
                i = m - lo
                r = rem[i]
                e = 0
                while r % p == 0:
                    r //= p
                    e += 1
                rem[i] = r
                sig[i] *= _sbu_pp(p, e)
                m += p
        for i in range(size):
            if rem[i] > 1:
                sig[i] *= rem[i] + 1
        for i in range(size):
            n = lo + i
            s1 = sig[i]
            s2 = _sigma_bu_u64(s1)
            if s2 % n == 0:
                if nhits == cap:
                    with gil:
                        cap *= 2
                        tmp = <u64 *> malloc(cap * 4 * sizeof(u64))
                        if tmp == NULL:
                            raise MemoryError()
                        for m in range(nhits * 4):
                            tmp[m] = hits[m]
                        free(hits)
                        hits = tmp
                hits[nhits * 4] = n
                hits[nhits * 4 + 1] = s1
                hits[nhits * 4 + 2] = s2
                hits[nhits * 4 + 3] = s2 // n
                nhits += 1
    out = []
    for i in range(nhits):
        out.append((hits[i * 4], hits[i * 4 + 1], hits[i * 4 + 2], hits[i * 4 + 3]))
    free(rem)
    free(sig)
    free(hits)
    return out
