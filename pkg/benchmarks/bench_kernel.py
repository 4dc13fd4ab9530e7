#!/usr/bin/env python3
"""Benchmark the compiled scan kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernel.py [max_exponent]

Scans [1, 2^e] for growing e with both backends (fallback capped at smaller
intervals to keep runtime sane) and reports per-integer cost and speedup.
"""

import sys
import time

from biunitary import _kernel
from biunitary._kernel import fallback

FALLBACK_CAP = 1 << 18


def bench(fn, lo, hi):
    t0 = time.perf_counter()
    hits = fn(lo, hi)
    return time.perf_counter() - t0, len(hits)


def main():
    max_exp = int(sys.argv[1]) if len(sys.argv) > 1 else 22
    if _kernel.BACKEND != "compiled":
        print("compiled kernel not available; benchmarking fallback only")
    print(f"{'interval':>12} {'backend':>9} {'time':>9} {'ns/n':>8} {'hits':>5} {'speedup':>8}")
    for e in range(14, max_exp + 1, 2):
        hi = 1 << e
        t_fb = None
        if hi <= FALLBACK_CAP:
            t_fb, hits = bench(fallback.scan_block, 1, hi)
            print(f"{f'[1,2^{e}]':>12} {'fallback':>9} {t_fb:>8.2f}s {t_fb / hi * 1e9:>7.0f} {hits:>5}")
        if _kernel.BACKEND == "compiled":
            t_c, hits = bench(_kernel._compiled.scan_block, 1, hi)
            speedup = f"{t_fb / t_c:>7.1f}x" if t_fb else ""
            print(f"{f'[1,2^{e}]':>12} {'compiled':>9} {t_c:>8.2f}s {t_c / hi * 1e9:>7.0f} {hits:>5} {speedup}")
    # agreement spot check on a shared interval
    cap = min(FALLBACK_CAP, 1 << max_exp)
    assert fallback.scan_block(1, cap) == _kernel.scan_block(1, cap)
    print(f"agreement check on [1,{cap}]: ok")


if __name__ == "__main__":
    main()
