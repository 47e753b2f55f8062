import json
import xml.etree.ElementTree as ET
from importlib.resources import files

import pytest
from click.testing import CliRunner

from tropbt.cli import main
from tropbt.errors import InputError
from tropbt.pipeline import analyze, invariant_failures, override_signs
from tropbt.quartic import LATTICE_POINTS, QuarticSpec, format_spec
from tropbt.report import build_report, parse_report
from tropbt.svg import render_svg

WORKED = str(files("tropbt") / "data" / "worked_example.q")


@pytest.fixture(scope="module")
def analysis(worked_spec):
    return analyze(worked_spec)


def test_invariants_hold(analysis):
    assert invariant_failures(analysis) == []


def test_report_round_trip(analysis):
    a = analysis
    doc = build_report(a.spec, a.curve, a.graph, a.classes, a.lifts, a.theta)
    text = doc.render()
    back = parse_report(text)
    assert back == doc and back.render() == text
    assert doc.consistent()
    raw = json.loads(text)
    assert raw["totals"] == {"classes": 7, "complex": 28, "real": 8}
    assert raw["skeleton"]["type"] == [2, 1, 2]
    assert all("/" in m["point"][0] or m["point"][0].lstrip("-").isdigit()
               for c in raw["classes"] for m in c["members"])


def test_report_rejects_other_schema(analysis):
    a = analysis
    raw = build_report(a.spec, a.curve, a.graph, a.classes, a.lifts, a.theta).to_dict()
    raw["schema_version"] = 99
    with pytest.raises(ValueError):
        parse_report(json.dumps(raw))


def test_svg_is_well_formed(analysis):
    a = analysis
    text = render_svg(a.curve, a.classes, [c.weights for c in a.lifts.classes])
    root = ET.fromstring(text.encode("utf-8"))
    ns = "{http://www.w3.org/2000/svg}"
    assert root.tag == ns + "svg" and root.get("version") == "1.1"
    groups = [g for g in root.iter(ns + "g") if (g.get("id") or "").startswith("class-")]
    assert len(groups) == 7
    assert all(len(g) > 0 for g in groups)


def test_override_signs(worked_spec):
    flipped = override_signs(worked_spec, ["s31=+"])
    assert flipped[(3, 1)].sign == 1 and worked_spec[(3, 1)].sign == -1
    for bad in (["s31"], ["x31=+"], ["s31=0"], ["s3=+"]):
        with pytest.raises(InputError):
            override_signs(worked_spec, bad)


def test_compute_writes_report_and_svg(tmp_path):
    report, svg = tmp_path / "r.json", tmp_path / "c.svg"
    res = CliRunner().invoke(main, ["compute", "--input", WORKED, "--report", str(report), "--svg", str(svg)])
    assert res.exit_code == 0, res.output
    assert "real total 8" in res.output
    assert parse_report(report.read_text(encoding="utf-8")).totals["real"] == 8
    assert svg.read_text(encoding="utf-8").startswith("<?xml")


def test_compute_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        CliRunner().invoke(main, ["compute", "--input", WORKED, "--report", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_compute_with_override():
    res = CliRunner().invoke(main, ["compute", "--input", WORKED, "--signs-override", "s31=+"])
    assert res.exit_code == 0 and "real total 16" in res.output


def test_exit_code_malformed_input(tmp_path):
    bad = tmp_path / "bad.q"
    bad.write_text("i=0 j=0 val=zero sign=+\n", encoding="utf-8")
    assert CliRunner().invoke(main, ["compute", "--input", str(bad)]).exit_code == 1
    res = CliRunner().invoke(main, ["compute", "--input", WORKED, "--signs-override", "s99=+"])
    assert res.exit_code == 1


def test_exit_code_not_smooth(tmp_path):
    flat = tmp_path / "flat.q"
    flat.write_text(format_spec(QuarticSpec.from_data({p: 0 for p in LATTICE_POINTS})), encoding="utf-8")
    assert CliRunner().invoke(main, ["compute", "--input", str(flat)]).exit_code == 2


def test_theta_check_command():
    res = CliRunner().invoke(main, ["theta-check", "--input", WORKED])
    assert res.exit_code == 0
    assert "skeleton type (2, 1, 2), 7 effective theta characteristics" in res.output
    assert res.output.count("<-> L_") == 7


def test_random_suite_command(tmp_path):
    table = tmp_path / "freq.tsv"
    res = CliRunner().invoke(main, ["random-suite", "--count", "2", "--seed", "3", "--freq-table", str(table)])
    assert res.exit_code == 0, res.output
    assert "2/2 pass" in res.output
    lines = table.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "label\tcount" and sum(int(x.split("\t")[1]) for x in lines[1:]) == 14
