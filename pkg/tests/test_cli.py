import json
import subprocess
import sys

import pytest

from transframe.cli import main
from transframe.families import make_H
from transframe.frame import Frame
from transframe.io import save_frame


@pytest.fixture
def files(tmp_path):
    out = {}
    for n in range(3):
        save_frame(make_H(n), tmp_path / f"H{n}.json")
        out[f"H{n}"] = str(tmp_path / f"H{n}.json")
    shapes = {
        "refl": Frame(["w"], [("w", "w")]),
        "fork": Frame(["r", "u", "v"], [("r", "u"), ("r", "v")]),
        "pair": Frame(["x", "y"], []),
        "chain2refl": Frame(["a", "b"], [("a", "b"), ("b", "b")]),
    }
    for name, F in shapes.items():
        save_frame(F, tmp_path / f"{name}.json")
        out[name] = str(tmp_path / f"{name}.json")
    bad = tmp_path / "nontrans.json"
    bad.write_text(json.dumps({"points": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}))
    out["nontrans"] = str(bad)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    data = json.loads(out.out) if out.out.startswith("{") else out.out
    return code, data, out.err


def test_analyze_H1(files, capsys):
    code, data, _ = run(capsys, "analyze", files["H1"])
    assert code == 0
    assert data["rank"] == 3 and data["roots"] == ["a"] and data["weak_width"] == {"a": 2}
    assert data["command"] == "analyze" and "seconds" in data["timing"]


def test_analyze_reflexive_point(files, capsys):
    code, data, _ = run(capsys, "analyze", files["refl"])
    assert (code, data["rank"], data["width"], data["irr_antichain_max"]) == (0, 1, 1, 0)


def test_analyze_non_transitive(files, capsys):
    code, data, err = run(capsys, "analyze", files["nontrans"])
    assert code == 2 and "'a'" in data["message"] and "'c'" in data["message"]
    code, data, _ = run(capsys, "analyze", "--close", files["nontrans"])
    assert code == 0 and data["rank"] == 3


def test_width_needs_root(files, capsys):
    assert run(capsys, "analyze", "--width", files["pair"])[0] == 3
    assert run(capsys, "analyze", "--width", files["fork"])[1]["width"] == 2


def test_check_examples(files, capsys):
    code, data, _ = run(capsys, "check", files["H0"], "--widplus", "2", "--point", "a")
    assert code == 0 and data["valid"]
    code, data, _ = run(capsys, "check", files["H0"], "--widplus", "1", "--point", "a")
    assert code == 1 and data["countermodel"]["point"] == "a"
    assert run(capsys, "check", files["fork"], "--B", "2")[0] == 0
    assert run(capsys, "check", files["fork"], "<>p0 -> []p0")[0] == 1


def test_check_budget_and_input_errors(files, capsys):
    code, data, _ = run(capsys, "check", files["H2"], "--widplus", "2")
    assert code == 4 and data["required"] == 2 ** 44
    assert run(capsys, "check", files["fork"], "p0 &")[0] == 2
    assert run(capsys, "check", files["fork"], "p0", "--B", "1")[0] == 2
    assert run(capsys, "check", files["fork"], "p0", "--point", "zz")[0] == 2


def test_frame_formula(files, capsys):
    code, data, _ = run(capsys, "frame-formula", files["fork"])
    assert code == 0 and data["ordering"] == ["r", "u", "v"]
    assert data["formula"].startswith("p0 & [](p0 | p1 | p2)")
    assert run(capsys, "frame-formula", files["pair"])[0] == 3


def test_reduce(files, capsys):
    code, data, _ = run(capsys, "reduce", files["H1"], files["H0"])
    assert code == 1 and data["reducible"] is False
    code, data, _ = run(capsys, "reduce", files["H0"], files["H0"])
    assert code == 0 and data["map"]["a"] == "a"
    assert run(capsys, "reduce", files["H2"], files["H1"], "--budget", "1")[0] == 4


def test_audit(files, capsys):
    d = files["dir"]
    (d / "m.json").write_text(json.dumps({"frames": ["H0.json", "H1.json", "H2.json"]}))
    code, data, _ = run(capsys, "audit", d / "m.json", "--mode", "full")
    assert code == 0 and data["verdict"] == "pass"
    (d / "same.json").write_text(json.dumps({"frames": ["H0.json", "H0.json"]}))
    code, data, _ = run(capsys, "audit", d / "same.json")
    assert code == 1 and data["verdict"] == "fail"


def test_embed(files, capsys):
    code, data, _ = run(capsys, "embed", "--srt", files["chain2refl"], files["refl"])
    assert data["a"] == "0(1)" and data["b"] == "1"
    assert code == 1 and not data["a_embeds_in_b"] and not data["b_embeds_in_a"]
    code, data, _ = run(capsys, "embed", "1(0,2)", "2(0,3,5)")
    assert code == 0 and data["a_embeds_in_b"]
    assert run(capsys, "embed", "--rt", files["fork"], "1")[0] == 2


def test_gen_h(files, capsys):
    code, data, _ = run(capsys, "gen-h", "2")
    assert code == 0 and len(data["points"]) == 11
    out = files["dir"] / "h3.json"
    assert run(capsys, "gen-h", "3", "-o", out)[0] == 0
    assert len(json.loads(out.read_text())["points"]) == 16


def test_gen_corpus(files, capsys):
    spec = files["dir"] / "spec.json"
    spec.write_text(json.dumps({"max_points": 4, "rank_bound": 2, "seed": 9, "count": 3}))
    code, data, _ = run(capsys, "gen-corpus", spec, "-o", files["dir"] / "c1")
    assert code == 0 and data["frames"] == 3
    run(capsys, "gen-corpus", spec, "-o", files["dir"] / "c2")
    for name in ("frame_0000.json", "frame_0002.json", "manifest.json"):
        assert (files["dir"] / "c1" / name).read_text() == (files["dir"] / "c2" / name).read_text()


def test_dot(files, capsys):
    code, text, _ = run(capsys, "dot", files["fork"])
    assert code == 0 and text.startswith("digraph")


def test_output_is_stable(files, capsys):
    a = run(capsys, "analyze", files["H2"])[1]
    b = run(capsys, "analyze", files["H2"])[1]
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_console_entry_point(files):
    p = subprocess.run([sys.executable, "-m", "transframe.cli", "analyze", files["refl"]],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["rank"] == 1
    assert p.stderr.startswith("rank 1")
