"""Acceptance gate: the nine verification suites at full strength.

Each test runs one suite (or a small bundle) at its default trial count in
exact rational mode, prints a single pass/fail line, and asserts the suite
reported no failures.  The lines print with capture disabled so they stay
visible in normal pytest runs.
"""
import time

import pytest

from weakfront.suites import DEFAULT_TRIALS, report_text, run_suite

JOBS = 4


@pytest.fixture(autouse=True)
def _live_output(capfd):
    global _CAPFD
    _CAPFD = capfd
    yield
    _CAPFD = None


def _announce(line: str) -> None:
    with _CAPFD.disabled():
        print(line, flush=True)
    print(line)  # captured copy, shown in failure reports


def _run(name: str, tag: str = "", jobs: int = JOBS, **kw):
    t0 = time.perf_counter()
    report = run_suite(name, jobs=jobs, **kw)
    elapsed = time.perf_counter() - t0
    status = "PASS" if report["passed"] else "FAIL"
    _announce(
        f"[{status}] {tag or name + ' suite'}: {report['checks']} checks, "
        f"{len(report['failures'])} failures, {report['units']} units "
        f"({elapsed:.1f}s)"
    )
    for f in report["failures"][:5]:
        _announce(f"    {f}")
    return report, elapsed


def test_1_decomposition_suite_engine_equals_oracle():
    # 200 random sets x 3 random planar cones, 41x41 grid, exact arithmetic
    report, elapsed = _run("decomposition")
    assert report["passed"], report["failures"][:3]
    assert report["units"] == DEFAULT_TRIALS["decomposition"]
    assert elapsed < 30.0, f"decomposition took {elapsed:.1f}s"


def test_2_wsum_suite_monoid_laws_and_oracle_equality():
    report, _ = _run("wsum")
    assert report["passed"], report["failures"][:3]
    assert report["units"] == DEFAULT_TRIALS["wsum"]


def test_3_psi_suite_collapse_matches_epigraph_membership():
    report, _ = _run("psi")
    assert report["passed"], report["failures"][:3]
    assert report["units"] == DEFAULT_TRIALS["psi"]


def test_4_basic_lemmas_suite_sum_bounds_and_split_certificates():
    report, _ = _run("basic-lemmas")
    assert report["passed"], report["failures"][:3]


def test_5_representation_suite_membership_and_conversions():
    report, _ = _run("representation")
    assert report["passed"], report["failures"][:3]
    assert report["units"] == 45  # 5 shipped convex instances x 9 queries


def test_6_farkas_suite_soundness_and_hinted_completeness():
    report, _ = _run("farkas")
    assert report["passed"], report["failures"][:3]
    assert report["units"] == DEFAULT_TRIALS["farkas"] + 45


def test_7_weak_duality_suite_chain_holds_on_random_instances():
    report, _ = _run("weak-duality")
    assert report["passed"], report["failures"][:3]
    assert report["units"] == DEFAULT_TRIALS["weak-duality"]


def test_8_strong_duality_and_scalar_regression():
    sd, _ = _run("strong-duality")
    assert sd["passed"], sd["failures"][:3]
    sc, _ = _run("scalar-regression", tag="scalar-regression suite")
    assert sc["passed"], sc["failures"][:3]


def test_9_reports_are_byte_identical_across_worker_counts():
    t0 = time.perf_counter()
    for name, kw in (("farkas", {"seed": 3, "trials": 40}), ("wsum", {"trials": 25})):
        texts = {
            jobs: report_text(run_suite(name, jobs=jobs, **kw))
            for jobs in (1, 2, 3)
        }
        assert texts[1] == texts[2] == texts[3], f"{name} diverged across jobs"
    _announce(
        f"[PASS] determinism: identical reports for jobs 1/2/3 "
        f"({time.perf_counter() - t0:.1f}s)"
    )
