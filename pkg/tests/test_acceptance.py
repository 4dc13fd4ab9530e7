"""Acceptance suite: one test per criterion, each printing a PASS line.

Criteria 2 and 4 need the full [1, 2^30] scan (minutes of CPU); they run only
when BUSP_RELEASE_GATE=1 is set, as a release-gate job.  Everything else runs
in a normal CI pass.
"""

import io
import os
import time

import pytest

from biunitary import arith, lemmas, report, search
from biunitary._kernel import BACKEND

RELEASE_GATE = os.environ.get("BUSP_RELEASE_GATE") == "1"

_full_summary_cache = {}


def full_run_summary():
    if "summary" not in _full_summary_cache:
        records = search.search_records(1, 1 << 30, progress=io.StringIO())
        _full_summary_cache["summary"] = report.aggregate(records, (1, 1 << 30))
    return _full_summary_cache["summary"]


def report_line(criterion, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    print(f"[acceptance] criterion {criterion}: {status} {detail}".rstrip())
    assert passed, f"criterion {criterion} failed: {detail}"


def test_criterion_1_theorem_at_scale():
    t0 = time.monotonic()
    summary = search.run_search(1, 1 << 24, workers=1, progress=io.StringIO())
    elapsed = time.monotonic() - t0
    ok = summary.per_k.get(2) == [2, 9] and elapsed < 30.0
    report_line(1, ok, f"k=2 members {summary.per_k.get(2)} in {elapsed:.1f}s (backend={BACKEND})")


@pytest.mark.skipif(not RELEASE_GATE, reason="full 2^30 run; set BUSP_RELEASE_GATE=1")
def test_criterion_2_table_reproduction():
    cmp = report.compare_to_paper(full_run_summary())
    report_line(2, cmp.mode == "full" and cmp.matched,
                f"{cmp.checked} checks, mismatches={cmp.mismatches}")


def test_criterion_3_exemplar_membership():
    t0 = time.monotonic()
    expected = {
        1: [1], 2: [2, 9], 3: [8, 10, 21, 512], 4: [15, 18, 324, 1023],
        5: [24, 30, 144, 288], 6: [42, 60, 160, 270], 9: [168, 960],
    }
    summary = search.run_search(1, 1 << 14, progress=io.StringIO())
    problems = []
    for k, members in expected.items():
        got = [n for n in summary.per_k.get(k, []) if n <= max(members)]
        if got != members:
            problems.append(f"k={k}: {got} != {members}")
    # 11975040 with k = 20, by a scan of a covering interval
    hit = search.search_records(11975000, 11976000, progress=io.StringIO())
    if [(r.n, r.k) for r in hit] != [(11975040, 20)]:
        problems.append(f"k=20 interval scan gave {hit}")
    elapsed = time.monotonic() - t0
    report_line(3, not problems and elapsed < 10.0,
                f"{'; '.join(problems) or 'all member sets exact'} in {elapsed:.1f}s")


@pytest.mark.skipif(not RELEASE_GATE, reason="full 2^30 run; set BUSP_RELEASE_GATE=1")
def test_criterion_4_odd_solutions():
    odd = sorted(n for members in full_run_summary().per_k.values()
                 for n in members if n % 2 == 1)
    expected = [1, 9, 15, 21, 1023, 8925, 15345]
    report_line(4, odd == expected, f"odd hits {odd}")


def test_criterion_5_oracle_equivalence():
    t0 = time.monotonic()
    from biunitary._kernel import sigma_bu_range

    sigmas = sigma_bu_range(1, 10**5)
    bad = [n for n in range(1, 10**5 + 1)
           if sigmas[n - 1] != arith.sigma_bu_oracle(n)]
    elapsed = time.monotonic() - t0
    report_line(5, not bad and elapsed < 60.0,
                f"{len(bad)} disagreements over n <= 1e5 in {elapsed:.1f}s")


def test_criterion_6_lemma_suites():
    t0 = time.monotonic()
    reports = [
        lemmas.check_parity(10**6),
        lemmas.check_ratio_bounds(97, 30, 5),
        lemmas.check_bang(12, 18),
        lemmas.check_classification(200, 6),
        lemmas.check_sbu_pow2_prime_power(40),
    ]
    elapsed = time.monotonic() - t0
    failures = [r for r in reports if not r.passed]
    report_line(6, not failures and elapsed < 120.0,
                f"{len(reports)} suites, {sum(len(r.counterexamples) for r in reports)} "
                f"counterexamples in {elapsed:.1f}s")


def test_criterion_7_named_sets():
    rep = search.verify_named_sets()
    report_line(7, rep.passed,
                f"biunitary perfect {rep.notes['biunitary_perfect']}, "
                f"unitary superperfect {rep.notes['unitary_superperfect']}")


def test_criterion_8_determinism(tmp_path):
    outputs = set()
    for workers in (1, 4, 16):
        recs = search.search_records(1, 10**7, segment_size=1 << 20,
                                     workers=workers, progress=io.StringIO())
        outputs.add(report.records_to_csv_bytes(recs))
    # forced interrupt after 3 segments, then resume
    ck = str(tmp_path / "ck.busp")
    with pytest.raises(search.SearchInterrupted):
        search.search_records(1, 10**7, segment_size=1 << 20, checkpoint_path=ck,
                              progress=io.StringIO(), _stop_after_segments=3)
    resumed = search.search_records(1, 10**7, segment_size=1 << 20,
                                    checkpoint_path=ck, progress=io.StringIO())
    outputs.add(report.records_to_csv_bytes(resumed))
    report_line(8, len(outputs) == 1,
                f"{len(outputs)} distinct CSV outputs across workers 1/4/16 + resume")


def test_criterion_9_paper_constants():
    checks = {
        (2, 4): 27,
        (5, 2): 26,
        (13, 1): 14,
        (13, 2): 170,
        (17, 2): 290,
        (239, 2): 2 * 13**4,
    }
    bad = [(p, e) for (p, e), want in checks.items()
           if arith.sigma_bu_prime_power(p, e) != want]
    report_line(9, not bad, f"{len(checks)} prime-power constants exact")
