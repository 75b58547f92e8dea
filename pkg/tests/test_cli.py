import json
import os

import pytest

from polytropes.cli import main, read_records


@pytest.fixture
def constant3(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"n": 3, "entries": [["0", "1", "1"], ["1", "0", "1"],
                                                 ["1", "1", "0"]]}))
    return str(p)


def test_kleene_fixed_point(constant3, capsys):
    assert main(["--json", "kleene", "--input", constant3]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["entries"] == [["0", "1", "1"], ["1", "0", "1"], ["1", "1", "0"]]


def test_kleene_negative_cycle(tmp_path, capsys):
    p = tmp_path / "neg.json"
    p.write_text(json.dumps({"n": 2, "entries": [["0", "-3"], ["1", "0"]]}))
    assert main(["kleene", "--input", str(p)]) == 1


def test_bad_input_is_usage_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 2, "entries": [["0", 0.5], ["1", "0"]]}))
    assert main(["kleene", "--input", str(p)]) == 2
    assert "--input" in capsys.readouterr().err


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as e:
        main(["enumerate", "--n", "4", "--bogus"])
    assert e.value.code == 2


def test_eigen(constant3, capsys):
    assert main(["eigen", "--input", constant3, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lambda"] == "1" and len(out["tropical_vertices"]) == 3


def test_binomials_and_relations(capsys):
    assert main(["--json", "binomials", "--n", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 30
    assert main(["binomials", "--n", "4", "--m", "3"]) == 2
    capsys.readouterr()
    assert main(["--json", "relations", "--n", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["kernel_dimension"] == 1 and out["circuit_classes"] == 1


def test_enumerate_resume_and_determinism(tmp_path, capsys):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    assert main(["enumerate", "--n", "4", "--out", a]) == 0
    assert main(["enumerate", "--n", "4", "--out", b, "--max-nodes", "2"]) == 0
    s = json.load(open(os.path.join(b, "summary.json")))
    assert not s["complete"]
    assert main(["resume", b]) == 0
    ma = json.load(open(os.path.join(a, "manifest.json")))
    mb = json.load(open(os.path.join(b, "manifest.json")))
    assert ma["outputs"] == mb["outputs"]
    # completed run: nothing to do
    assert main(["resume", b]) == 0
    assert "nothing to resume" in capsys.readouterr().out
    recs = read_records(os.path.join(a, "records.jsonl"))
    assert len(recs) == 6


def test_resume_tampered(tmp_path, capsys):
    d = str(tmp_path / "t")
    assert main(["enumerate", "--n", "4", "--out", d, "--max-nodes", "1"]) == 0
    with open(os.path.join(d, "checkpoint.json"), "a") as f:
        f.write("x")
    assert main(["resume", d]) == 2
    assert "CorruptCheckpoint" in capsys.readouterr().err


def test_classify_and_verify(tmp_path, capsys):
    d = str(tmp_path / "m")
    assert main(["enumerate", "--n", "4", "--out", d]) == 0
    capsys.readouterr()
    out = str(tmp_path / "cls")
    assert main(["--json", "classify", "--n", "4", "--records",
                 os.path.join(d, "records.jsonl"), "--out", out]) == 0
    assert json.loads(capsys.readouterr().out)["records"] == 6
    with open(os.path.join(out, "histogram.csv")) as f:
        assert f.read().splitlines() == ["vertices,classes", "20,6"]
    assert main(["verify", "--n", "4"]) == 0
