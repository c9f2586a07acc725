import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from circdraw.cli import CONSTRUCTIONS, main, parse_caps
from circdraw.drawing import load_json
from circdraw.errors import InvalidParameter
from circdraw.verify import DEFAULT_CAPS, instance_seeds, random_drawing, run_suite


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


# -- caps --------------------------------------------------------------------------

def test_parse_caps():
    caps = parse_caps("tw=10, hajos=9")
    assert caps["tw"] == 10 and caps["hajos"] == 9 and caps["hadwiger"] == DEFAULT_CAPS["hadwiger"]
    assert parse_caps(None) == DEFAULT_CAPS
    with pytest.raises(InvalidParameter):
        parse_caps("treewidth=3")
    with pytest.raises(InvalidParameter):
        parse_caps("tw=lots")


# -- generate / export ----------------------------------------------------------------

PARAMS = {"grid_row": ["3"], "two_degenerate_expander": ["3"], "ktt": ["2"],
          "tree_plus_dominant": ["6"], "product": ["4", "2"], "star_forest": ["2"],
          "nested_polygon": ["2", "3"]}


@pytest.mark.parametrize("name", sorted(CONSTRUCTIONS))
def test_generate_every_construction(capsys, tmp_path, name):
    rc, out, _ = run(capsys, "generate", name, *PARAMS[name], "--out", str(tmp_path))
    assert rc == 0
    paths = out.split()
    assert len(paths) == 3
    d = load_json(paths[0])
    assert d.graph.n > 0
    meta = json.loads(open(paths[1]).read())
    assert set(meta) == {"construction", "params", "notes", "witnesses"}
    ET.parse(paths[2])


def test_generate_aliases_and_errors(capsys, tmp_path):
    rc, out, _ = run(capsys, "generate", "grid", "2", "--out", str(tmp_path), "--no-svg")
    assert rc == 0 and len(out.split()) == 2
    assert run(capsys, "generate", "hexagon", "2", "--out", str(tmp_path))[0] == 2
    rc, _, err = run(capsys, "generate", "ktt", "--out", str(tmp_path))
    assert rc == 2 and "parameter" in err


def test_export_svg(capsys, tmp_path):
    run(capsys, "generate", "ktt", "2", "--out", str(tmp_path), "--no-svg")
    svg = tmp_path / "k.svg"
    assert run(capsys, "export-svg", str(tmp_path / "ktt_2.drawing.json"), str(svg))[0] == 0
    lines = [el for el in ET.parse(svg).getroot().iter() if el.tag.endswith("line")]
    assert len(lines) == 4
    assert run(capsys, "export-svg", str(tmp_path / "missing.json"), str(svg))[0] == 2


# -- analyze ------------------------------------------------------------------------

def test_analyze_ktt3(capsys, tmp_path):
    run(capsys, "generate", "ktt", "3", "--out", str(tmp_path), "--no-svg")
    path = str(tmp_path / "ktt_3.drawing.json")
    rc, out, _ = run(capsys, "analyze", path, "--stable")
    assert rc == 0
    rep = json.loads(out)
    assert rep["invariants"]["X_D"]["treewidth"] == 3
    assert rep["invariants"]["X_D"]["hadwiger"] == 4
    assert rep["drawing"]["crossings"] == 9 and rep["failures"] == []
    assert run(capsys, "analyze", path, "--stable")[1] == out


def test_analyze_cap_needs_force(capsys, tmp_path):
    run(capsys, "generate", "grid_row", "3", "--out", str(tmp_path), "--no-svg")
    path = str(tmp_path / "grid_row_3.drawing.json")
    assert run(capsys, "analyze", path, "--caps", "tw=4")[0] == 2
    rc, out, _ = run(capsys, "analyze", path, "--caps", "tw=4", "--force")
    assert rc == 0
    assert json.loads(out)["bounds"]["values"]["tw_G"] == "skipped"


def test_analyze_reads_caps_from_environment(capsys, tmp_path, monkeypatch):
    run(capsys, "generate", "grid_row", "3", "--out", str(tmp_path), "--no-svg")
    monkeypatch.setenv("CHORDAL_CAPS", "tw=4")
    assert run(capsys, "analyze", str(tmp_path / "grid_row_3.drawing.json"))[0] == 2


def test_analyze_writes_report(capsys, tmp_path):
    run(capsys, "generate", "nested_polygon", "1", "3", "--out", str(tmp_path), "--no-svg")
    report = tmp_path / "r.json"
    rc, out, _ = run(capsys, "analyze", str(tmp_path / "nested_polygon_1_3.drawing.json"),
                     "--out", str(report))
    assert rc == 0 and json.loads(report.read_text()) == json.loads(out)


# -- verify ----------------------------------------------------------------------------

def test_verify_small_section3(capsys):
    rc, out, err = run(capsys, "verify", "section3", "--seeds", "10", "--stable")
    assert rc == 0
    rep = json.loads(out)
    assert rep["instances"] == 10 and rep["failures"] == [] and rep["wall_time_ms"] == 0
    assert "10 instances, 0 failures" in err
    assert run(capsys, "verify", "section3", "--seeds", "10", "--stable")[1] == out


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "nonsense")[0] == 2


def test_verify_jobs_matches_serial():
    a = run_suite("triangulation", {"seeds": 12}, jobs=1)
    b = run_suite("triangulation", {"seeds": 12}, jobs=2)
    assert a.instances == b.instances == 12
    assert a.failures == b.failures == []


@pytest.mark.parametrize("suite", ["expander", "grid", "ktt", "cycles-lemma", "dominant"])
def test_quick_suites_pass(suite):
    rep = run_suite(suite)
    assert rep.ok, rep.failures[:3]
    assert json.loads(rep.to_json())["suite"] == suite


def test_verify_report_counts_nok2k_orders():
    rep = run_suite("nok2k", {"k": 1})
    assert rep.ok and rep.instances == 12
    assert rep.details["expected orders for K_2,3"] == 12


def test_random_drawing_recipe_is_stable():
    d = random_drawing(7)
    assert d == random_drawing(7)
    assert 3 <= d.graph.n <= 9 and d.graph.m <= 14 and d.graph.is_connected()
    assert instance_seeds(0, 5) == instance_seeds(0, 5)
    assert len(set(instance_seeds(0, 200))) == 200


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "circdraw", "verify", "grid", "--n", "2", "--stable"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["instances"] == 2
