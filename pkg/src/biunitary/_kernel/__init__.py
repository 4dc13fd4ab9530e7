"""Scan kernel selection: compiled Cython module when built, else pure Python.

Both backends expose the same two entry points with identical exact-integer
results:

    scan_block(lo, hi)     -> list of (n, s1, s2, k) hits
    sigma_bu_range(lo, hi) -> list of sigma**(n) for n in [lo, hi]
"""

from . import fallback

try:
    from . import _scan as _compiled

    BACKEND = "compiled"
    scan_block = _compiled.scan_block
    sigma_bu_range = _compiled.sigma_bu_range
except ImportError:
    _compiled = None
    BACKEND = "fallback"
    scan_block = fallback.scan_block
    sigma_bu_range = fallback.sigma_bu_range

__all__ = ["BACKEND", "scan_block", "sigma_bu_range", "fallback"]
