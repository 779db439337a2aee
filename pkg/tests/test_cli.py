import json

import pytest

from sl2tiling.cli import main, parse_signs
from sl2tiling.lattice import read_tiling, write_tiling


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


FIGURE = """\
  1   1   2   5  13  34  89 233
  2   1   1   2   5  13  34  89
  5   2   1   1   2   5  13  34
 13   5   2   1   1   2   5  13
 34  13   5   2   1   1   2   5
 89  34  13   5   2   1   1   2
233  89  34  13   5   2   1   1
610 233  89  34  13   5   2   1
"""


def test_staircase_golden(capsys):
    code, out, _ = run(capsys, "staircase", "8", "8")
    assert code == 0 and out == FIGURE


def test_staircase_json(capsys):
    code, out, _ = run(capsys, "staircase", "2", "3", "--json")
    assert json.loads(out) == {"top": 0, "left": 0, "rows": [["1", "1", "2"], ["2", "1", "1"]]}


@pytest.mark.parametrize("n, count", [(3, 4), (4, 8)])
def test_classify(capsys, n, count):
    code, out, _ = run(capsys, "classify", str(n))
    assert code == 0
    assert f"{count} = 2^{n - 1}" in out
    assert "orbit cross-check: PASS" in out
    assert out.count("s = ") == count


def test_classify_json(capsys):
    code, out, _ = run(capsys, "--json", "classify", "3")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 4 and doc["orbit_cross_check"] is True
    assert doc["matrices"][0]["signs"][0] == 1


def test_classify_bad_n(capsys):
    assert run(capsys, "classify", "1")[0] == 2
    assert run(capsys, "classify", "17")[0] == 2


def test_parse_signs():
    assert parse_signs("+,+,-") == [1, 1, -1]
    assert parse_signs("+1,-1") == [1, -1]
    assert parse_signs("++-") == [1, 1, -1]


def test_build_and_verify_roundtrip(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "build", "3", "--anti", "--window", "-3..3", "-3..3", "-3..3", "-o", str(path))
    assert code == 0 and "0 violations" in out
    t = read_tiling(path)
    assert t.window.lo == (-3, -3, -3)
    code, out, _ = run(capsys, "verify", str(path), "--diagonal", "--slices")
    assert code == 0
    assert "constant slices: OK" in out


def test_build_mixed_eps(capsys):
    code, out, err = run(capsys, "build", "3", "--eps", "+,+,-", "--window", "-1..1")
    assert code == 0
    assert json.loads(out)["epsilon"][0] == [-1, 1, 1]


def test_build_negative_sign_lists(capsys):
    code, out, _ = run(capsys, "build", "3", "--signs", "+,-,-", "--window", "0..1")
    assert code == 0 and json.loads(out)["epsilon"][1] == [1, -1, -1]


def test_build_inadmissible(capsys):
    code, out, _ = run(capsys, "build", "3", "--eps", "+,+,+")
    assert code == 1
    assert "(1, 2, 3)" in out
    code, out, _ = run(capsys, "build", "3", "--sl2", "--json")
    assert code == 1 and json.loads(out)["witness"] == [1, 2, 3]


def test_build_usage_errors(capsys):
    assert run(capsys, "build", "3", "--eps", "+,+")[0] == 2
    assert run(capsys, "build", "3", "--window", "0..1", "0..1")[0] == 2
    assert run(capsys, "build", "2")[0] == 2


def test_verify_corrupted(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "build", "3", "--window", "-1..1", "-o", str(path))
    t = read_tiling(path)
    write_tiling(t.replace((0, 0, 0), 2), path)
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1
    first = [line for line in out.splitlines() if line.startswith("  ")][0]
    assert "base point (-1, -1, 0), axes (1,2)" in first


def test_verify_json(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "build", "3", "--window", "0..1", "-o", str(path))
    code, out, _ = run(capsys, "verify", str(path), "--json")
    assert code == 0 and json.loads(out) == {"ok": True, "relation": []}


def test_verify_truncated(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "build", "3", "--window", "0..1", "-o", str(path))
    path.write_text(path.read_text()[:-20])
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "malformed" in err
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_verify_slices_wrong_signature(capsys, tmp_path):
    path = tmp_path / "t.json"
    run(capsys, "build", "3", "--eps", "+,+,-", "--window", "0..1", "-o", str(path))
    assert run(capsys, "verify", str(path), "--slices")[0] == 2


def test_frontier(capsys):
    code, out, _ = run(capsys, "frontier", "@(0,0) RRDD", "--depth", "3")
    assert code == 0
    assert out.splitlines()[:3] == ["1 1 1", "3 2 1", "5 3 1"]


def test_frontier_partial_and_failure(capsys):
    code, out, _ = run(capsys, "frontier", "@(0,0) RDRD", "--depth", "1")
    assert code == 0 and "." in out
    code, out, _ = run(capsys, "frontier", "@(0,0) RD", "--sign", "1")
    assert code == 1 and "NonPositiveEntry at cell (-1, 0)" in out
    code, out, _ = run(capsys, "frontier", "@(0,0) RD", "--sign", "1", "--json")
    assert json.loads(out)["cell"] == [-1, 0]
    assert run(capsys, "frontier", "nonsense")[0] == 2


def test_scan_nonexistence_small(capsys):
    code, out, _ = run(capsys, "scan", "nonexistence", "--B", "10")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "PASS: 100/100 seeds certified"
    assert len(lines) == 102
    assert json.loads(lines[2])["seed"] == ["1", "1"]


def test_scan_inconclusive(capsys):
    code, out, _ = run(capsys, "scan", "nonexistence", "--B", "10", "--K", "2")
    assert code == 1 and out.startswith("FAIL")


def test_scan_uniqueness_json(capsys):
    code, out, _ = run(capsys, "scan", "uniqueness", "--B", "20", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["K"] == 12
    assert [1, 1] in doc["survivors"]


def test_deterministic_output(capsys):
    first = run(capsys, "scan", "uniqueness", "--B", "30")
    second = run(capsys, "scan", "uniqueness", "--B", "30")
    assert first == second


def test_bad_command(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "sl2tiling", "staircase", "8", "8"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == FIGURE
