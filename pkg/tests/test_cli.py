import json
import subprocess
import sys

import jsonschema
import pytest

from sphersing.cli import main
from sphersing.corpus import corpus_text
from sphersing.document import load_schema, parse_document


@pytest.fixture
def corpus_file(tmp_path):
    p = tmp_path / "corpus.json"
    p.write_text(corpus_text())
    return str(p)


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


SL3U_SPACE = {"rank": 2, "valuation_cone": "full", "spherical_roots": [],
              "root_data": {"cartan": [[2, -1], [-1, 2]], "positive_roots": [[1, 0], [0, 1], [1, 1]],
                            "parabolic_set": [0, 1]},
              "colors": [{"name": "D_alpha", "moving_root": 0}, {"name": "D_beta", "moving_root": 1}]}


def test_validate_ok(corpus_file):
    assert main(["validate", "--input", corpus_file]) == 0


def test_validate_conflicting_ray(tmp_path, capsys):
    doc = {"space": SL3U_SPACE, "fans": {"bad": {"maximal_cones": [
        {"rays": [], "colors": ["D_alpha", "D_beta"]},
        {"rays": [[0, 1], [-1, -1]], "colors": []},
        {"rays": [[-1, -1]], "colors": ["D_alpha"]}]}}}
    assert main(["validate", "--input", _write(tmp_path, "bad.json", doc), "--json"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert not out["valid"] and out["violations"][0]["pointer"].startswith("/fans/bad")


def test_truncated_file(tmp_path, corpus_file):
    text = open(corpus_file).read()
    assert main(["validate", "--input", _write(tmp_path, "t.json", text[: len(text) // 2])]) == 2
    assert main(["validate", "--input", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("fan,label", [
    ("three-colored", "Locally factorial (and terminal singularities)"),
    ("nqg-no-klt", "Not Q-Gorenstein, there exists no klt pair"),
    ("p2", "Smooth"),
])
def test_classify_text(corpus_file, capsys, fan, label):
    assert main(["classify", "--input", corpus_file, "--fan", fan]) == 0
    assert capsys.readouterr().out.strip() == label


def test_classify_json_schema(corpus_file, capsys):
    assert main(["classify", "--input", corpus_file, "--json", "--resolution"]) == 0
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, load_schema("report.schema.json"))
    assert len(report["fans"]) == 11


def test_classify_unknown_fan(corpus_file):
    assert main(["classify", "--input", corpus_file, "--fan", "nope"]) == 1


def test_resolve_output_revalidates(corpus_file, tmp_path):
    out = str(tmp_path / "res.json")
    assert main(["resolve", "--input", corpus_file, "--fan", "qf-log-terminal", "--out", out]) == 0
    doc = parse_document(open(out).read())
    assert list(doc.fans) == ["qf-log-terminal-resolved"]
    assert main(["validate", "--input", out]) == 0


def test_render_and_rank_error(corpus_file, tmp_path):
    a, b = str(tmp_path / "a.svg"), str(tmp_path / "b.svg")
    assert main(["render", "--input", corpus_file, "--fan", "three-colored", "--out", a]) == 0
    assert main(["render", "--input", corpus_file, "--fan", "three-colored", "--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()
    doc = {"space": {"rank": 3, "valuation_cone": "full", "spherical_roots": [], "colors": []},
           "fans": {"c": {"maximal_cones": [{"rays": [[1, 0, 0]], "colors": []}]}}}
    assert main(["render", "--input", _write(tmp_path, "r3.json", doc), "--fan", "c"]) == 1


def test_morphism(corpus_file, tmp_path, capsys):
    assert main(["morphism", "--input", corpus_file, "--from", "p2-blowup", "--to", "p2"]) == 0
    assert capsys.readouterr().out.startswith("true")
    assert main(["morphism", "--input", corpus_file, "--from", "p2", "--to", "p2-blowup", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["exists"] is False
    other = {"space": {"rank": 2, "valuation_cone": "full", "spherical_roots": [], "colors": []},
             "fans": {"p2": {"maximal_cones": [{"rays": [[1, 0], [0, 1]], "colors": []}]}}}
    path = _write(tmp_path, "other.json", other)
    assert main(["morphism", "--input", corpus_file, "--from", "p2", "--to", "p2", "--to-input", path]) == 1


def test_find_klt_pair(corpus_file, capsys):
    assert main(["find-klt-pair", "--input", corpus_file, "--fan", "nqg-no-klt"]) == 0
    assert capsys.readouterr().out.strip() == "none"
    assert main(["find-klt-pair", "--input", corpus_file, "--fan", "nqg-klt", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["exists"] is True


def test_corpus_command(capsys):
    assert main(["corpus"]) == 0
    assert "8/8 required labels realized" in capsys.readouterr().out


def test_entry_point(corpus_file):
    proc = subprocess.run([sys.executable, "-m", "sphersing.cli", "classify", "--input", corpus_file, "--fan", "p2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Smooth"


def test_max_depth_env(corpus_file, monkeypatch, capsys):
    monkeypatch.setenv("SPHERSING_MAX_DEPTH", "0")
    assert main(["classify", "--input", corpus_file, "--fan", "p2", "--json"]) == 1
    assert "CoverageUndecided" in capsys.readouterr().err
    monkeypatch.setenv("SPHERSING_MAX_DEPTH", "24")
    assert main(["classify", "--input", corpus_file, "--fan", "p2", "--json"]) == 0
