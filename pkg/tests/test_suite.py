import json

from fracsusy.suite import Check, SuiteReport, full_suite, sweep_specs


def test_check_pass_flag():
    assert Check("a", 1e-11, 1e-10).passed
    assert not Check("a", 1e-9, 1e-10).passed
    assert not Check("a", float("nan"), 1.0).passed


def test_report_formats_and_overall_flag():
    rep = SuiteReport("x", {"seed": 0})
    rep.add("one", 0.0, 1e-10)
    rep.add("two", 1.0, 1e-10)
    assert not rep.passed
    rep.wall_time = 12.5
    data = json.loads(rep.to_json())
    assert "wall_time" not in json.dumps(data)
    assert [c["name"] for c in data["checks"]] == ["one", "two"]
    assert rep.to_csv().splitlines()[2].startswith("two,1.0,")
    assert "overall: FAIL" in rep.to_table()


def test_sweep_specs_are_seeded():
    a = sweep_specs(3, seed=7)[-1][1]
    b = sweep_specs(3, seed=7)[-1][1]
    assert a == b and a != sweep_specs(3, seed=8)[-1][1]
    assert a.strictly_positive


def test_full_suite_enumerates_named_checks():
    rep = full_suite()
    names = [c.name for c in rep.checks]
    assert len(names) >= 12 and len(set(names)) == len(names)
    assert rep.passed, [c for c in rep.checks if not c.passed]
    assert rep.wall_time < 120
