import json
import subprocess
import sys

import pytest

from strata_pi1.cli import main
from strata_pi1.io import presentation_from_json, presentation_to_json, simplified_to_json, theta_to_json
from strata_pi1.presentation import presentation
from strata_pi1.presets import extorsion
from strata_pi1.simplify import abelianize, simplify


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "strata-pi1" in capsys.readouterr().out


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--d", "6", "--format", "dot")
    assert code == 0
    assert out.startswith("graph G {") and out.count(" -- ") == 9
    code, out, _ = run(capsys, "graph", "--d", "6", "--format", "rank", "--subdivided")
    assert out == "6\n"
    code, out, _ = run(capsys, "graph", "--d", "6", "--format", "json")
    assert len(json.loads(out)["edges"]) == 9


def test_graph_bad_degree(capsys):
    code, _, err = run(capsys, "graph", "--d", "1")
    assert code == 3 and "error" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--d", "6", "--eq", "2")
    assert len(json.loads(out)["compositions"]) == 13
    code, out, _ = run(capsys, "enumerate", "--d", "6", "--eq", "0", "--format", "text")
    assert out.splitlines() == ["()", "(1 1)", "(1 1 1 1)", "(1 1 1 1 1 1)"]
    code, _, _ = run(capsys, "enumerate", "--d", "0")
    assert code == 2


def test_extorsion_pipeline_via_files(tmp_path, capsys):
    theta = write(tmp_path, "extorsion.json", {"d": 6, "compositions": [[3, 1], [1, 3], [1, 3, 1, 1], [1, 1, 3, 1], [2, 2, 1, 1], [1, 2, 2, 1], [1, 1, 2, 2], [2, 1, 1, 2]], "mode": "closure"})
    code, pres_text, _ = run(capsys, "presentation", "--theta", theta)
    assert code == 0
    pres_file = tmp_path / "pres.json"
    pres_file.write_text(pres_text)
    code, out, _ = run(capsys, "simplify", "--input", str(pres_file))
    assert code == 0
    result = json.loads(out)
    assert result["torsion"] == [2]
    assert result["free_certified"] is False
    # the file round trip equals the in-process pipeline
    p = presentation(extorsion())
    assert presentation_from_json(json.loads(pres_text)) == p
    assert result == json.loads(json.dumps(simplified_to_json(simplify(p), abelianize(p))))
    code, out2, _ = run(capsys, "abelianize", "--input", str(pres_file))
    assert out2 == out


def test_unclosed_theta_exit_3(tmp_path, capsys):
    theta = write(tmp_path, "open.json", {"d": 6, "compositions": [[2, 2]], "mode": "verify-closed"})
    code, out, err = run(capsys, "presentation", "--theta", theta)
    assert code == 3 and out == "" and "not closed" in err


def test_malformed_inputs_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "closure", "--theta", str(bad))[0] == 2
    assert run(capsys, "closure", "--theta", write(tmp_path, "a.json", {"d": 6}))[0] == 2
    assert run(capsys, "closure", "--theta", write(tmp_path, "b.json", {"d": 6, "compositions": [[0, 2]]}))[0] == 2
    assert run(capsys, "closure", "--theta", write(tmp_path, "c.json", {"d": 6, "compositions": [], "mode": "x"}))[0] == 2
    assert run(capsys, "closure", "--theta", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "closure", "--preset", "extorsion")[0] == 2
    assert run(capsys, "synthesize", "--word", "w(0,0)", "--d", "6")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_precondition_exit_3(tmp_path, capsys):
    # parity violation
    assert run(capsys, "closure", "--theta", write(tmp_path, "p.json", {"d": 6, "compositions": [[3]]}))[0] == 3
    assert run(capsys, "stabilize", "--preset", "extorsion", "--d", "6", "--target", "7")[0] == 3
    assert run(capsys, "synthesize", "--word", "w(0,0)+ w(0,0)-", "--d", "6")[0] == 3
    assert run(capsys, "split", "--preset", "extorsion-split", "--d", "10", "--d-prime", "6")[0] == 3


def test_closure_and_stabilize(capsys):
    code, out, _ = run(capsys, "closure", "--preset", "extorsion", "--d", "6")
    assert json.loads(out) == theta_to_json(extorsion())
    code, out, _ = run(capsys, "stabilize", "--preset", "extorsion", "--d", "6", "--target", "8")
    assert json.loads(out)["d"] == 8


def test_classify_and_split(capsys):
    code, out, _ = run(capsys, "classify", "--preset", "single-3-only", "--d", "7")
    assert json.loads(out)["classification"] == "case_ii"
    code, out, _ = run(capsys, "classify", "--preset", "point", "--d", "6")
    data = json.loads(out)
    assert data["classification"] == "shortcut_ge3" and data["pi1_compactified"] == "infinite_cyclic"
    code, out, _ = run(capsys, "split", "--preset", "extorsion-split", "--d", "10")
    data = json.loads(out)["split"]
    assert data["d_prime"] == 8 and data["low"]["d"] == 6
    code, out, _ = run(capsys, "split", "--preset", "omega-ge3", "--d", "8")
    assert json.loads(out) == {"split": None}


def test_presentation_text_and_flags(capsys):
    code, out, _ = run(capsys, "presentation", "--preset", "extorsion", "--d", "6", "--format", "text")
    assert out.startswith("<gamma(1,1) gamma(1,3) gamma(2,0) gamma(2,2) gamma(3,1) gamma(4,0)> | <")
    code, out, _ = run(capsys, "presentation", "--preset", "single-3-only", "--d", "6", "--critical")
    assert json.loads(out)["critical"] is True
    code, out, _ = run(capsys, "presentation", "--preset", "extorsion", "--d", "6", "--keep-dummies")
    assert [0, 2] in json.loads(out)["generators"]


def test_trace_synthesize_locus(tmp_path, capsys):
    word = "w(0,0)+ w(1,1)+ w(0,2)- w(0,0)-"
    code, out, _ = run(capsys, "synthesize", "--word", word, "--d", "6")
    assert code == 0
    path = tmp_path / "loop.json"
    path.write_text(out)
    code, out, _ = run(capsys, "trace", "--path", str(path))
    assert out == word + "\n"
    code, out, _ = run(capsys, "trace", "--path", str(path), "--raw")
    assert out == word + "\n"
    code, out, _ = run(capsys, "locus", "--path", str(path), "--resolution", "50")
    lines = out.splitlines()
    assert lines[0] == "psi,x" and len(lines) > 1


def test_trace_resolution_failure_exit_4(tmp_path, capsys):
    loop = write(tmp_path, "cusp.json", {"d": 3, "samples": [[0, 1, 0], [0, -1, 0], [0, 1, 0]]})
    code, _, err = run(capsys, "trace", "--path", loop)
    assert code == 4 and "tangency" in err


def test_outputs_are_deterministic(capsys):
    for argv in (
        ["presentation", "--preset", "omega-ge3", "--d", "8"],
        ["simplify", "--preset", "extorsion", "--d", "8"],
        ["graph", "--d", "9", "--subdivided"],
    ):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "strata_pi1.cli", "graph", "--d", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and '"()" -- "(1 1)"' in proc.stdout


def test_presentation_json_roundtrip():
    p = presentation(extorsion())
    assert presentation_from_json(json.loads(json.dumps(presentation_to_json(p)))) == p
