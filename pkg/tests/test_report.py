import io
import json

import pytest

from biunitary import arith, report, search
from biunitary.report import PAPER_COUNTS, PAPER_MEMBERS, PAPER_TOTAL
from biunitary.search import SearchRecord


def oracle_records(lo, hi):
    out = []
    for n in range(lo, hi + 1):
        s1 = arith.sigma_bu_oracle(n)
        s2 = arith.sigma_bu_oracle(s1)
        if s2 % n == 0:
            out.append(SearchRecord(n, s1, s2, s2 // n))
    return out


class TestPaperReference:
    def test_total(self):
        assert sum(PAPER_COUNTS.values()) == PAPER_TOTAL == 173

    def test_members_consistent_with_counts(self):
        for k, members in PAPER_MEMBERS.items():
            assert len(members) <= PAPER_COUNTS[k]
            assert members == sorted(members)

    def test_every_printed_member_satisfies_congruence(self):
        for k, members in PAPER_MEMBERS.items():
            for n in members:
                s2 = arith.sigma_bu_of(arith.sigma_bu_of(n))
                assert s2 == k * n, (k, n)


class TestAggregate:
    def test_low_rows(self):
        recs = search.search_records(1, 1 << 10, progress=io.StringIO())
        summary = report.aggregate(recs, (1, 1 << 10))
        assert summary.per_k[1] == [1]
        assert summary.per_k[2] == [2, 9]
        assert summary.per_k[3] == [8, 10, 21, 512]

    def test_empty(self):
        summary = report.aggregate([], (11, 14))
        assert summary.per_k == {} and summary.total == 0

    def test_k5_opening_members(self):
        recs = search.search_records(1, 10**4, progress=io.StringIO())
        summary = report.aggregate(recs, (1, 10**4))
        assert summary.per_k[5][:4] == [24, 30, 144, 288]


class TestCompareToPaper:
    def test_exemplar_mode_on_partial_interval(self):
        recs = search.search_records(1, 1 << 20, progress=io.StringIO())
        summary = report.aggregate(recs, (1, 1 << 20))
        cmp = report.compare_to_paper(summary)
        assert cmp.mode == "exemplar"
        assert cmp.matched, cmp.mismatches

    def test_negative_control(self):
        summary = report.TableSummary((1, 1 << 20), {2: [2, 9, 11]})
        cmp = report.compare_to_paper(summary)
        # 11 is not flagged in exemplar mode (only printed members are checked),
        # but dropping 9 must be
        tampered = report.TableSummary((1, 1 << 20), {2: [2]})
        assert not report.compare_to_paper(tampered).matched

    def test_full_mode_count_mismatch_flagged(self):
        per_k = {k: list(m) for k, m in PAPER_MEMBERS.items()}
        summary = report.TableSummary(report.FULL_INTERVAL, per_k)
        cmp = report.compare_to_paper(summary)
        assert cmp.mode == "full"
        # member lists are truncated, so counts cannot all match
        assert not cmp.matched
        assert any("count" in m for m in cmp.mismatches)


class TestEmit:
    def test_csv_golden_1_16(self, tmp_path):
        # fixture generated by the oracle path, independent of the scan
        expected_records = oracle_records(1, 16)
        assert [r.n for r in expected_records] == [1, 2, 8, 9, 10, 15]
        # 16 is not a hit: sigma**(16) = 27, sigma**(27) = 40, 40 % 16 != 0
        assert arith.sigma_bu_oracle(16) == 27
        assert arith.sigma_bu_oracle(27) == 40

        recs = search.search_records(1, 16, progress=io.StringIO())
        assert recs == expected_records
        path = tmp_path / "out.csv"
        report.emit(report.aggregate(recs, (1, 16)), "csv", str(path))
        expected_csv = "n,s1,s2,k\n" + "".join(
            f"{r.n},{r.s1},{r.s2},{r.k}\n" for r in expected_records
        )
        assert path.read_text(encoding="utf-8") == expected_csv

    def test_empty_csv_has_header(self, tmp_path):
        path = tmp_path / "empty.csv"
        report.emit(report.aggregate([], (11, 14)), "csv", str(path))
        assert path.read_text() == "n,s1,s2,k\n"

    def test_json_round_trip(self, tmp_path):
        recs = search.search_records(1, 2000, progress=io.StringIO())
        summary = report.aggregate(recs, (1, 2000))
        path = tmp_path / "summary.json"
        report.emit(summary, "json", str(path))
        parsed = report.parse_summary(str(path))
        assert parsed.interval == summary.interval
        assert parsed.per_k == summary.per_k
        # and the file itself round-trips through json unchanged
        data = json.loads(path.read_text())
        assert report.summary_to_json_dict(parsed) == data

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            report.emit(report.aggregate([], (1, 1)), "xml", str(tmp_path / "x"))
