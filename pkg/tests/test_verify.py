from __future__ import annotations

import json

import pytest

from qschemes import verify
from qschemes.sweep import Grid, check_names, parse_values, run_check
from qschemes.verdict import Status


def test_parse_values():
    assert parse_values("2..5") == (2, 3, 4, 5)
    assert parse_values("7,3,3") == (3, 7)
    assert parse_values(4) == (4,)
    assert parse_values(None) is None


def test_registry_lists_verify_and_lemma_checks():
    names = check_names()
    assert {"grassmann-monotone", "bilinear-min", "hamming-distinct", "gauss-bounds", "alternating"} <= set(names)


def test_exceptional_tie_at_2422():
    report = verify.verify_grassmann_monotone(Grid(q=(2,), d=(2,)))
    rec = report.by_key(q=2, n=4, d=2, j=1)
    assert rec.status is Status.EXCLUDED
    col = [int(x) for x in rec.witness["column"]]
    assert abs(col[1]) == abs(col[2]) == 3


def test_monotone_passes_off_exclusion():
    report = verify.verify_grassmann_monotone(Grid(q=(2, 3), d=(1, 2, 3), n_offset=(0, 1, 2)))
    assert not report.has_fail
    assert report.by_key(q=2, n=5, d=2, j=1).status is Status.PASS


def test_bilinear_excluded_grid():
    report = verify.verify_bilinear_min(Grid(q=(2,), d=(2,), e=(2,)))
    assert {r.status for r in report.records} == {Status.EXCLUDED}


def test_hermitian_suite_small():
    report = verify.verify_hermitian_suite(Grid(q=(2, 3), d=(2, 3, 4, 5)))
    # one record per (q, d, j): 2 * (2 + 3 + 4 + 5)
    assert report.counts()["PASS"] == 28


def test_hamming_scan_is_report_only():
    report = verify.scan_hamming_distinct(Grid(q=(2, 3), d=(1, 2, 3, 4)))
    assert {r.status for r in report.records} == {Status.OBSERVED}
    rec = report.by_key(q=3, d=3, j=3)
    assert int(rec.witness["distinct"]) == 4


def test_fail_witness_has_reproduction_line():
    rec = verify.grassmann_monotone({"q": 3, "n": 6, "d": 3, "j": 2})
    assert rec.witness["reproduce"].startswith("qschemes eigenmatrix grassmann")
    assert len(rec.witness["column"]) == 4


def test_report_determinism():
    grid = Grid(q=(2, 3), d=(1, 2, 3), n_offset=(0, 1))
    a = run_check("cross-check-forms", grid).to_json(include_timing=False)
    b = run_check("cross-check-forms", grid).to_json(include_timing=False)
    assert a == b
    assert json.loads(a)["schema"] == "qschemes.report/1"


def test_parallel_matches_serial():
    grid = Grid(q=(2, 3), d=(1, 2, 3, 4), n_offset=(0, 1))
    serial = run_check("grassmann-monotone", grid).to_json(include_timing=False)
    parallel = run_check("grassmann-monotone", grid, jobs=2).to_json(include_timing=False)
    assert serial == parallel


def test_checkpoint_resume_equivalence(tmp_path):
    grid = Grid(q=(2, 3), d=(1, 2, 3, 4), e_offset=(0, 1))
    ckpt = tmp_path / "run.jsonl"
    full = run_check("bilinear-min", grid).to_json(include_timing=False)
    partial = run_check("bilinear-min", grid, checkpoint=ckpt, limit=5)
    assert len(partial.records) == 5
    lines = ckpt.read_text().splitlines()
    assert len(lines) == 5
    entry = json.loads(lines[0])
    assert set(entry) == {"check", "tuple", "status", "witness_hash", "record"}
    resumed = run_check("bilinear-min", grid, checkpoint=ckpt).to_json(include_timing=False)
    assert resumed == full
    assert len(ckpt.read_text().splitlines()) == len(json.loads(full)["records"])


def test_checkpoint_ignores_corrupt_entries(tmp_path):
    grid = Grid(q=(3,), d=(1, 2))
    ckpt = tmp_path / "run.jsonl"
    run_check("hermitian-suite", grid, checkpoint=ckpt)
    lines = ckpt.read_text().splitlines()
    tampered = json.loads(lines[0])
    tampered["record"]["status"] = "FAIL"
    ckpt.write_text(json.dumps(tampered) + "\n" + lines[1] + "\n{truncated")
    report = run_check("hermitian-suite", grid, checkpoint=ckpt)
    assert not report.has_fail


def test_csv_report_has_header():
    report = run_check("hermitian-suite", Grid(q=(2,), d=(2, 3)))
    rows = report.to_csv().splitlines()
    assert rows[0] == "check,q,d,j,status,flagged,detail,witness"
    assert len(rows) == 1 + len(report.records)


@pytest.mark.parametrize(
    "name",
    ["gauss-bounds", "signed-gauss", "signed-base-estimate", "hermitian-steps", "hermitian-envelope", "alternating"],
)
def test_lemma_suites_default_grids(name):
    report = run_check(name)
    assert not report.has_fail
    assert report.counts()["PASS"] > 0
