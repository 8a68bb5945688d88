import json

from reflex import catalog_data as data
from reflex import classify as cls


def test_gram_permutation_equivalence():
    a = [[2, -1, 0], [-1, 2, -2], [0, -2, 2]]
    b = [[2, -2, 0], [-2, 2, -1], [0, -1, 2]]  # swap rows/cols 0 and 2
    assert cls.gram_permutation_equivalent(a, b)
    c = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    assert not cls.gram_permutation_equivalent(a, c)
    assert not cls.gram_permutation_equivalent(a, [[2]])


def test_catalog_counts():
    positive = [e for e in data.ENTRIES if e["weyl_exists"]]
    negative = [e for e in data.ENTRIES if not e["weyl_exists"]]
    assert len(positive) == 59
    hist = {}
    for e in positive:
        hist[e["rank"]] = hist.get(e["rank"], 0) + 1
    assert hist == data.RANK_HISTOGRAM
    assert len(negative) == 14


def test_run_catalog_filter():
    reports = cls.run_catalog("S_3,2")
    assert len(reports) == 1
    assert reports[0]["status"] == "pass"
    assert reports[0]["root_count"] == 3


def test_negative_entry_certificates():
    reports = cls.run_catalog("neg:U(3)+2A1")
    assert reports[0]["status"] == "pass"
    checks = {c["check"]: c for c in reports[0]["checks"]}
    assert checks["paper certificate value"]["ok"]
    assert checks["paper certificate value"]["detail"] == "-3"


def test_anisotropic_entries_have_negative_rays():
    reports = cls.run_catalog("S_4,28")
    checks = {c["check"]: c for c in reports[0]["checks"]}
    assert checks["all extreme rays strictly negative"]["ok"]


def test_subchamber_data():
    for sub in data.SUBCHAMBERS:
        report = cls.check_subchamber(sub)
        assert report["status"] == "pass", report


def test_report_json_roundtrip():
    reports = cls.run_catalog("S_3,8,*")
    text = cls.report_to_json(reports)
    parsed = json.loads(text)
    assert len(parsed) == 2
    assert cls.summary(reports)["failed"] == 0


def test_catalog_entry_data_self_checks():
    """Every recorded paper chamber satisfies its own stated invariants."""
    from fractions import Fraction as Q

    from reflex.lattice import build

    for entry in data.ENTRIES:
        if not entry["paper_P"]:
            continue
        lattice = build(entry["descriptor"])
        roots = [lattice.ambient_to_basis(r) for r in entry["paper_P"]]
        for r in roots:
            assert lattice.norm(r) == 2, (entry["name"], r)
        if entry["rho"] is not None:
            rho = lattice.ambient_to_basis(entry["rho"])
            for r in roots:
                assert lattice.ip(rho, r) == -1, (entry["name"], r)
