"""Exhaustive, resumable scan for n dividing sigma**(sigma**(n)).

Segments of the interval are processed independently (optionally by a process
pool) and merged in ascending order, so the output is identical for any
worker count and across interrupt/resume cycles.  Checkpoints are atomic
binary files written after each contiguous prefix of completed segments.
"""

from __future__ import annotations

import math
import os
import struct
import sys
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import arith
from ._kernel import scan_block, sigma_bu_range
from .lemmas import LemmaId, LemmaReport

MAX_HI = 1 << 40  # keeps second iterates far below 2^64

DEFAULT_SEGMENT_SIZE = 1 << 22

CHECKPOINT_MAGIC = b"BUSP"
CHECKPOINT_VERSION = 1

_HEADER = struct.Struct("<IQQQQ")  # version, lo, hi, watermark, record_count
_RECORD = struct.Struct("<QQQI")  # n, s1, s2, k


class CheckpointError(RuntimeError):
    """Corrupt checkpoint file or one belonging to a different run."""


class SearchInterrupted(RuntimeError):
    """Raised by the test-only interruption hook after a checkpoint write."""


@dataclass(frozen=True)
class SearchRecord:
    n: int
    s1: int
    s2: int
    k: int

    def __post_init__(self) -> None:
        if self.s2 != self.k * self.n:
            raise ValueError(f"record {self} violates s2 = k*n")


@dataclass
class Checkpoint:
    format_version: int
    lo: int
    hi: int
    watermark: int
    records: list[SearchRecord] = field(default_factory=list)


@dataclass
class Segment:
    """A sub-interval plus (lazily built) smallest-prime-factor table."""

    lo: int
    hi: int
    spf_table: list[int] | None = None

    def spf(self) -> arith.SpfLookup:
        if self.spf_table is None:
            self.spf_table = build_spf(self.lo, self.hi)
        return arith.SpfLookup(self.lo, self.hi, self.spf_table)


def build_spf(lo: int, hi: int) -> list[int]:
    """Smallest prime factor for each n in [lo, hi] (spf of 1 is 1)."""
    if not 1 <= lo <= hi:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    spf = [0] * (hi - lo + 1)
    for p in arith._small_prime_sieve(math.isqrt(hi)):
        start = max(((lo + p - 1) // p) * p, p)
        for m in range(start, hi + 1, p):
            if spf[m - lo] == 0:
                spf[m - lo] = p
    for i, v in enumerate(spf):
        if v == 0:
            spf[i] = lo + i if lo + i > 1 else 1  # prime above sqrt(hi), or n=1
    return spf


def scan_segment(seg: Segment) -> list[SearchRecord]:
    """All records in [seg.lo, seg.hi], ascending."""
    if seg.hi > MAX_HI:
        raise ValueError(f"segment bound {seg.hi} exceeds 2^40")
    return [SearchRecord(*hit) for hit in scan_block(seg.lo, seg.hi)]


def checkpoint_to_bytes(ckpt: Checkpoint) -> bytes:
    payload = _HEADER.pack(
        ckpt.format_version, ckpt.lo, ckpt.hi, ckpt.watermark, len(ckpt.records)
    )
    payload += b"".join(_RECORD.pack(r.n, r.s1, r.s2, r.k) for r in ckpt.records)
    return CHECKPOINT_MAGIC + payload + struct.pack("<I", zlib.crc32(payload))


def checkpoint_from_bytes(data: bytes) -> Checkpoint:
    if len(data) < 4 + _HEADER.size + 4 or data[:4] != CHECKPOINT_MAGIC:
        raise CheckpointError("not a BUSP checkpoint")
    payload, (crc,) = data[4:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(payload) != crc:
        raise CheckpointError("checkpoint CRC mismatch")
    version, lo, hi, watermark, count = _HEADER.unpack_from(payload)
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")
    if len(payload) != _HEADER.size + count * _RECORD.size:
        raise CheckpointError("checkpoint record count does not match length")
    records = [
        SearchRecord(*_RECORD.unpack_from(payload, _HEADER.size + i * _RECORD.size))
        for i in range(count)
    ]
    return Checkpoint(version, lo, hi, watermark, records)


def save_checkpoint(ckpt: Checkpoint, path: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(checkpoint_to_bytes(ckpt))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, "rb") as fh:
        return checkpoint_from_bytes(fh.read())


def _scan_bounds(bounds: tuple[int, int]) -> list[tuple[int, int, int, int]]:
    return scan_block(bounds[0], bounds[1])


def search_records(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    checkpoint_path: str | None = None,
    progress=None,
    _stop_after_segments: int | None = None,
) -> list[SearchRecord]:
    """Scan [lo, hi] and return every SearchRecord, ascending by n.

    With a checkpoint path, resumes an interrupted run over the same interval
    and persists progress after each contiguous completed segment.
    ``_stop_after_segments`` is a test hook: abort (after checkpointing) once
    that many new segments have merged.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"bad interval [{lo}, {hi}]")
    if hi > MAX_HI:
        raise ValueError(f"hi = {hi} exceeds the supported bound 2^40")
    if segment_size < 1 or workers < 1:
        raise ValueError("segment_size and workers must be positive")
    if progress is None:
        progress = sys.stderr

    records: list[SearchRecord] = []
    start = lo
    if checkpoint_path and os.path.exists(checkpoint_path):
        ckpt = load_checkpoint(checkpoint_path)
        if (ckpt.lo, ckpt.hi) != (lo, hi):
            raise CheckpointError(
                f"checkpoint covers [{ckpt.lo}, {ckpt.hi}], not [{lo}, {hi}]"
            )
        records = list(ckpt.records)
        start = ckpt.watermark + 1
        if start > hi:
            return records

    segments = []
    a = start
    while a <= hi:
        b = min(a + segment_size - 1, hi)
        segments.append((a, b))
        a = b + 1

    merged_segments = 0

    def merge(bounds: tuple[int, int], hits, t0: float) -> None:
        nonlocal merged_segments
        records.extend(SearchRecord(*h) for h in hits)
        print(
            f"segment [{bounds[0]},{bounds[1]}] done, hits={len(hits)}, "
            f"elapsed={time.monotonic() - t0:.2f}",
            file=progress,
        )
        if checkpoint_path:
            save_checkpoint(
                Checkpoint(CHECKPOINT_VERSION, lo, hi, bounds[1], list(records)),
                checkpoint_path,
            )
        merged_segments += 1
        if _stop_after_segments is not None and merged_segments >= _stop_after_segments:
            raise SearchInterrupted(f"stopped after {merged_segments} segments")

    if workers == 1:
        for bounds in segments:
            t0 = time.monotonic()
            merge(bounds, _scan_bounds(bounds), t0)
    else:
        t0 = time.monotonic()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # pool.map preserves submission order, so merging stays ascending
            for bounds, hits in zip(segments, pool.map(_scan_bounds, segments)):
                merge(bounds, hits, t0)
                t0 = time.monotonic()
    return records


def run_search(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    checkpoint_path: str | None = None,
    progress=None,
):
    """Scan [lo, hi] and aggregate the hits into a TableSummary."""
    from .report import aggregate

    records = search_records(
        lo, hi, segment_size, workers, checkpoint_path, progress
    )
    return aggregate(records, (lo, hi))


def verify_named_sets(perfect_bound: int = 10**5) -> LemmaReport:
    """Cross-checks against the two smaller catalogs the search relates to.

    Biunitary perfect numbers (sigma**(N) = 2N) up to ``perfect_bound`` must
    be exactly {6, 60, 90}; unitary superperfect (sigma*(sigma*(N)) = 2N)
    numbers up to 238 must be exactly {2, 9, 165, 238}.
    """
    bad = []
    bi_perfect = []
    lo = 1
    while lo <= perfect_bound:
        hi = min(lo + (1 << 20) - 1, perfect_bound)
        for i, s in enumerate(sigma_bu_range(lo, hi)):
            n = lo + i
            if s == 2 * n:
                bi_perfect.append(n)
        lo = hi + 1
    if bi_perfect != [6, 60, 90]:
        bad.append(("biunitary perfect", bi_perfect))

    unitary_super = [
        n for n in range(1, 239) if arith.sigma_unitary_of(arith.sigma_unitary_of(n)) == 2 * n
    ]
    if unitary_super != [2, 9, 165, 238]:
        bad.append(("unitary superperfect", unitary_super))

    report = LemmaReport(
        LemmaId.NAMED_SETS,
        f"sigma** perfect <= {perfect_bound}; sigma* superperfect <= 238",
        not bad,
        bad,
    )
    report.notes["biunitary_perfect"] = bi_perfect
    report.notes["unitary_superperfect"] = unitary_super
    return report
