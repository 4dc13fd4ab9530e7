"""Aggregation of search records, reference-table comparison, CSV/JSON output.

The reference data is the published catalog of (2,k)-multiperfect hits below
2^30: per-k counts (173 values in total) plus the member values that are
printed explicitly.  Truncated rows are compared on count and printed
exemplars only; inventing the omitted members is deliberately not done.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import __version__
from .search import SearchRecord

FULL_INTERVAL = (1, 1 << 30)

PAPER_TOTAL = 173

PAPER_COUNTS = {
    1: 1, 2: 2, 3: 4, 4: 8, 5: 9, 6: 13, 7: 13, 8: 18, 9: 26, 10: 18,
    11: 8, 12: 26, 13: 8, 14: 9, 15: 3, 16: 4, 17: 1, 18: 1, 20: 1,
}

# every member value printed explicitly in the reference table
PAPER_MEMBERS = {
    1: [1],
    2: [2, 9],
    3: [8, 10, 21, 512],
    4: [15, 18, 324, 1023, 8925, 15345],
    5: [24, 30, 144, 288, 14976, 23040],
    6: [42, 60, 160, 270, 673254400],
    7: [240, 1200, 2400, 171196416],
    8: [648, 2808, 3570, 1062892908],
    9: [168, 960, 10368, 769600000],
    10: [480, 2856, 13824, 627720192],
    11: [321408, 1392768, 125706240],
    12: [4320, 10080, 779688000],
    13: [57120, 17821440, 942120960],
    14: [103680, 217728, 773760000],
    15: [1827840, 181059840, 754427520],
    16: [23591520, 594397440],
    17: [898128000],
    18: [374250240],
    20: [11975040],
}

assert sum(PAPER_COUNTS.values()) == PAPER_TOTAL


@dataclass
class TableSummary:
    interval: tuple[int, int]
    per_k: dict[int, list[int]]  # k -> ascending member list
    records: list[SearchRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(len(m) for m in self.per_k.values())

    def counts(self) -> dict[int, int]:
        return {k: len(m) for k, m in self.per_k.items()}


@dataclass
class ComparisonReport:
    mode: str  # "full" or "exemplar"
    matched: bool
    mismatches: list[str] = field(default_factory=list)
    checked: int = 0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "matched": self.matched,
            "checks": self.checked,
            "mismatches": self.mismatches,
        }


def aggregate(records: list[SearchRecord], interval: tuple[int, int]) -> TableSummary:
    """Group records by multiplier k; member lists come out ascending."""
    per_k: dict[int, list[int]] = {}
    for r in sorted(records, key=lambda r: r.n):
        per_k.setdefault(r.k, []).append(r.n)
    return TableSummary(interval, dict(sorted(per_k.items())), sorted(records, key=lambda r: r.n))


def compare_to_paper(summary: TableSummary) -> ComparisonReport:
    """Compare a summary against the published table.

    A summary over exactly [1, 2^30] is compared in full (counts, explicit
    members, the 173 total, and emptiness of k = 19 and k >= 21); any other
    interval gets exemplar-only mode, checking just the printed members that
    fall inside it.
    """
    mismatches: list[str] = []
    checked = 0
    lo, hi = summary.interval
    full = (lo, hi) == FULL_INTERVAL

    if full:
        for k, expected in PAPER_COUNTS.items():
            checked += 1
            got = len(summary.per_k.get(k, []))
            if got != expected:
                mismatches.append(f"k={k}: count {got}, expected {expected}")
        for k in summary.per_k:
            if k not in PAPER_COUNTS:
                mismatches.append(f"k={k}: unexpected nonempty row ({summary.per_k[k]})")
        checked += 1
        if summary.total != PAPER_TOTAL:
            mismatches.append(f"total {summary.total}, expected {PAPER_TOTAL}")

    for k, members in PAPER_MEMBERS.items():
        for n in members:
            if not lo <= n <= hi:
                continue
            checked += 1
            if n not in summary.per_k.get(k, []):
                mismatches.append(f"member {n} missing from k={k}")

    return ComparisonReport(
        mode="full" if full else "exemplar",
        matched=not mismatches,
        mismatches=mismatches,
        checked=checked,
    )


def summary_to_json_dict(summary: TableSummary) -> dict:
    return {
        "interval": {"lo": summary.interval[0], "hi": summary.interval[1]},
        "generated_by": {"version": __version__},
        "per_k": [
            {"k": k, "count": len(members), "members": members}
            for k, members in summary.per_k.items()
        ],
        "total": summary.total,
    }


def summary_from_json_dict(data: dict) -> TableSummary:
    interval = (data["interval"]["lo"], data["interval"]["hi"])
    per_k = {row["k"]: list(row["members"]) for row in data["per_k"]}
    for row in data["per_k"]:
        if row["count"] != len(row["members"]):
            raise ValueError(f"row k={row['k']}: count disagrees with members")
    return TableSummary(interval, dict(sorted(per_k.items())))


def emit(summary: TableSummary, format: str, path: str) -> None:
    """Write a summary to disk: CSV of records or the JSON summary object."""
    if format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "s1", "s2", "k"])
            for r in summary.records:
                writer.writerow([r.n, r.s1, r.s2, r.k])
    elif format == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(summary_to_json_dict(summary), fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"unknown format {format!r}")


def records_to_csv_bytes(records: list[SearchRecord]) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "s1", "s2", "k"])
    for r in records:
        writer.writerow([r.n, r.s1, r.s2, r.k])
    return buf.getvalue().encode("utf-8")


def parse_summary(path: str) -> TableSummary:
    with open(path, "r", encoding="utf-8") as fh:
        return summary_from_json_dict(json.load(fh))
