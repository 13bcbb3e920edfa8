import pytest

from wmba.fixtures import fixture
from wmba.suites import SUITES, run_suite, full_report
from conftest import FIELDS, GROUPOIDS


@pytest.mark.parametrize("field", list(FIELDS.values()), ids=list(FIELDS))
@pytest.mark.parametrize("name", GROUPOIDS)
def test_every_suite_passes(name, field):
    W = fixture(name, field)
    for s in SUITES:
        r = run_suite(W, s)
        assert r.ok, (s, [c for c in r.report.checks if not c.ok])
        assert r.report.checks, s


def test_report_shape():
    data = full_report(fixture("z2"))
    assert data["schema"] == 1 and data["ok"]
    assert [s["suite"] for s in data["suites"]] == list(SUITES)
    for s in data["suites"]:
        for c in s["checks"]:
            assert set(c) >= {"name", "ok"}


def test_broken_axioms_short_circuit():
    W = fixture("z2")
    bad = W.replace(eps=W.eps.scale(W.field(2)))
    r = run_suite(bad, "integrals")
    assert not r.ok and r.report.checks[0].name == "axioms"
    assert not full_report(bad)["ok"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite(fixture("z2"), "nope")
