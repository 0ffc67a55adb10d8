import json

import pytest

from orelab.corpus import InstanceStream, load_fixture
from orelab.harness import (
    CHECKS_BY_ID,
    THEOREM_CHECKS,
    HarnessConfig,
    RunReport,
    TheoremCheck,
    _fails,
    fixture_records,
    run_theorem_suite,
    verify_paper,
)
import dataclasses

from orelab.verdicts import Status

SMALL = ("Z2", "Z4", "Z2xZ2", "GF4")


@pytest.fixture(scope="module")
def small_report():
    return run_theorem_suite(HarnessConfig(dmax=1), InstanceStream(rings=SMALL))


def test_small_suite_passes(small_report):
    assert small_report.ok, small_report.to_text()
    assert small_report.replays["checked"] > 0 and not small_report.replays["spurious"]


def test_totals_add_up(small_report):
    for c in small_report.checks:
        assert c.total == small_report.instances, c.id


def test_vacuous_check_is_not_a_pass():
    never = TheoremCheck("never", "hypothesis no instance meets", ("reduced", "abelian", "symmetric"),
                         lambda facts: [])
    # Z4 is not reduced, so nothing qualifies
    r = run_theorem_suite(HarnessConfig(dmax=1), InstanceStream(rings=("Z4",)), [never])
    (c,) = r.checks
    assert c.qualifying == 0 and c.status == "no-qualifying-instance"
    assert not r.ok


def test_violation_fails_the_check():
    wrong = TheoremCheck("reversible-implies-sigma-reversible", "false on the swap ring",
                         ("reversible",), lambda facts: _fails(facts, "sigma-reversible"))
    r = run_theorem_suite(HarnessConfig(dmax=1), InstanceStream(rings=("Z2xZ2",)), [wrong])
    (c,) = r.checks
    assert c.status == "fail"
    assert any(v["label"].startswith("Z2xZ2|swap") for v in c.violations)
    assert all(v["replayed"] for v in c.violations)


def test_report_json_is_deterministic_without_timings():
    cfg = HarnessConfig(dmax=1)
    stream = InstanceStream(rings=("Z2", "Z2xZ2"))
    checks = [CHECKS_BY_ID["reversible-transfer"], CHECKS_BY_ID["idempotents-fixed"]]
    a = run_theorem_suite(cfg, stream, checks).to_json(timings=False)
    b = run_theorem_suite(dataclasses.replace(cfg, workers=2), stream, checks).to_json(timings=False)
    assert a == b
    doc = json.loads(a)
    assert doc["schema_version"] and "timings" not in doc


def test_seed_does_not_change_outcome():
    statuses = []
    for seed in (0, 1):
        r = run_theorem_suite(HarnessConfig(dmax=1, seed=seed), InstanceStream(seed=seed, rings=("Z2", "Z3")))
        statuses.append([(c.id, c.status, c.qualifying) for c in r.checks])
    assert statuses[0] == statuses[1]


def test_every_check_has_a_distinct_id():
    ids = [c.id for c in THEOREM_CHECKS]
    assert len(ids) == len(set(ids)) == 15


def test_corrupted_fixture_breaks_verify():
    fx = load_fixture("z2xz2-swap")
    fx.expected = [dataclasses.replace(fx.expected[0], status=Status.FAILS)]
    report = verify_paper(HarnessConfig(), [fx], run_theorems=False)
    assert not report.ok
    assert "FAIL" in report.to_text()


def test_fixture_records_all_match():
    records, timings = fixture_records()
    assert records and all(r["match"] for r in records)
    assert set(timings) == {r["fixture"] for r in records}


def test_text_report_lists_every_check(small_report):
    text = small_report.to_text()
    for c in THEOREM_CHECKS:
        assert c.id in text
    assert text.splitlines()[-2] == "PASS"
