import json

import jsonschema
import pytest
from click.testing import CliRunner

from twistgr.cli import OUTPUT_SCHEMA, main, render


def run(*args):
    return CliRunner().invoke(main, list(args))


def run_json(*args):
    res = run(*args, "--format", "json")
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    jsonschema.validate(doc, OUTPUT_SCHEMA)
    return doc


def test_roots_a2_twisted():
    doc = run_json("roots", "A2~2")
    roots = {r["label"]: r for r in doc["rows"] if r["kind"] == "root"}
    assert set(roots) == {"a", "-a", "2a", "-2a"}
    assert roots["a"]["class"] == roots["-a"]["class"] == "multipliable"
    assert roots["2a"]["class"] == "divisible"
    assert roots["a"]["gamma"] == "(1/2)Z"


def test_roots_a1():
    doc = run_json("roots", "--type", "A1~1")
    roots = [r for r in doc["rows"] if r["kind"] == "root"]
    assert {r["label"] for r in roots} == {"a", "-a"}
    assert {r["gamma"] for r in roots} == {"Z"}


def test_kac_names_are_accepted():
    assert run("roots", "A2^(2)").output == run("roots", "A2~2").output


@pytest.mark.parametrize(
    "args",
    [
        ("roots", "bogus"),
        ("roots",),
        ("roots", "A1~1", "--level-bound", "1000"),
        ("adm", "A1~1", "--mu", "x"),
        ("adm", "A1~1", "--mu", "-1"),
        ("adm", "A2~2", "--mu", "1/3"),
        ("apartment", "A1~1", "--facet", "5"),
        ("demazure-char", "A1~1", "--weight", "-1,0,0"),
        ("verify", "nonsense"),
        ("roots", "A1~1", "--format", "xml"),
    ],
)
def test_usage_errors_exit_2(args):
    assert run(*args).exit_code == 2


def test_non_dominant_mu_names_its_conjugate():
    res = run("adm", "A1~1", "--mu", "-1")
    assert res.exit_code == 2 and "1" in res.output


def test_adm_examples():
    doc = run_json("adm", "A1~1", "--mu", "1")
    assert len(doc["rows"]) == 5
    assert sorted(r["length"] for r in doc["rows"]) == [0, 1, 1, 2, 2]
    assert len(run_json("adm", "A1~1", "--mu", "0")["rows"]) == 1


def test_adm_is_stable():
    assert run("adm", "A2~1", "--mu", "1,1").output == run("adm", "A2~1", "--mu", "1,1").output


def test_tsv_layout():
    res = run("adm", "A1~1", "--mu", "1")
    lines = res.output.split("\n")
    assert lines[-1] == "" and "\r" not in res.output
    assert lines[0].split("\t") == ["index", "word", "length", "extremal", "covers"]
    assert len(lines) == 7
    assert all(len(line.split("\t")) == 5 for line in lines[:-1])


def test_tex_output():
    res = run("central-charge", "A2~2", "--format", "tex")
    assert res.exit_code == 0
    assert res.output.startswith("\\begin{tabular}") and "\\end{tabular}" in res.output


def test_out_file(tmp_path):
    path = tmp_path / "cc.json"
    res = run("central-charge", "A2~2", "--format", "json", "--out", str(path))
    assert res.exit_code == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert [r["charge"] for r in doc["rows"]] == [2, 1]
    assert [r["distinguished"] for r in doc["rows"]] == [False, True]


def test_apartment_and_demazure():
    doc = run_json("apartment", "A2~2", "--facet", "1")
    assert any(r["section"] == "vertex" for r in doc["rows"])
    doc = run_json("demazure-char", "A1~1", "--word", "0", "--fundamental", "0")
    assert len(doc["rows"]) == 2


def test_verify_examples():
    res = run("verify", "su3-exchange", "--samples", "100", "--seed", "7")
    assert res.exit_code == 0 and "PASS" in res.output
    res = run("verify", "tits-integrality", "--flavor", "cs")
    assert res.exit_code == 1
    doc = run_json("verify", "span", "--field", "f2", "--type", "A2~2")
    [item] = doc["report"]
    assert item["status"] == "PASS (expected failure)" and item["identity"]


def test_verify_report_is_deterministic():
    a = run("verify", "pluriel", "--samples", "20", "--seed", "3", "--format", "json").output
    assert a == run("verify", "pluriel", "--samples", "20", "--seed", "3", "--format", "json").output


def test_render_rejects_bad_documents():
    with pytest.raises(jsonschema.ValidationError):
        render({"command": "x", "type": None, "params": {}}, "json")
