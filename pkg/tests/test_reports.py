import json

from lex.reports import Report


def test_report_status_and_serialisation():
    report = Report(command="demo", params={"n": 3}, seed=7)
    report.check("first", True)
    assert report.ok
    report.check("second", False, "broken")
    assert not report.ok
    report.table("counts", "n,count\n1,2\n")
    payload = json.loads(report.to_json())
    assert payload["ok"] is False
    assert payload["seed"] == 7
    assert payload["checks"][1] == {"name": "second", "pass": False, "details": "broken"}
    assert report.to_csv() == "# counts\nn,count\n1,2\n"


def test_merge_prefixes_names():
    outer = Report(command="all")
    inner = Report(command="part", data={"x": 1})
    inner.check("inner", True)
    inner.table("t", "a\n")
    outer.merge(inner, "01")
    assert [check.name for check in outer.checks] == ["01.inner"]
    assert outer.tables == {"01.t": "a\n"}
    assert outer.data == {"01": {"x": 1}}


def test_write_places_tables_beside_report(tmp_path):
    report = Report(command="demo")
    report.table("counts", "n\n1\n")
    target = tmp_path / "out" / "report.json"
    report.write(target)
    assert json.loads(target.read_text())["command"] == "demo"
    assert (tmp_path / "out" / "report.counts.csv").read_text() == "n\n1\n"
