import json
import subprocess
import sys

import pytest

from bhkmld.cli import run_command

from conftest import DATA, DEG22


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mld_with_oracle(capsys):
    code, out, err = run(capsys, "mld", DEG22, "--mode", "autT", "--oracle", "--json")
    rep = json.loads(out)
    assert code == 0 and not err
    assert rep["mld_formula"] == "1/26" and rep["mld_oracle"]["value"] == "1/26" and rep["agreement"]


def test_mld_even(capsys):
    code, out, _ = run(capsys, "mld", DEG22, "--mode", "even", "--oracle", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["mld_formula"] == "1/13" and rep["agreement"]


def test_mld_rejects_degenerate(capsys):
    code, out, err = run(capsys, "mld", "x0^3")
    assert code == 1 and not out and err.startswith("error:")


def test_syntax_error_exit_1(capsys):
    code, out, err = run(capsys, "analyze", "x0^2 + y1")
    assert code == 1 and "position" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        run_command(["mld", DEG22, "--mode", "bogus"])
    assert info.value.code == 2
    assert "--mode" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        run_command([])
    assert info.value.code == 2
    assert run_command(["mld"]) == 2
    assert run_command(["verify", "a-b"]) == 2


def test_analyze_report(capsys):
    code, out, _ = run(capsys, "analyze", DEG22, "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["charges"]["a"] == [11, 7, 3, 1] and rep["mirror"]["d"] == 26
    assert rep["determinant"] == 572
    assert rep["group_orders"] == {"aut_f": 572, "j_f": 22, "aut_t": 26}
    assert rep["mld_even_subgroup"] == "1/13"
    assert [a["kind"] for a in rep["atoms"]] == ["fermat", "loop"]


def test_analyze_from_file_and_vars(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text(DEG22 + "\n")
    code, out, _ = run(capsys, "analyze", "--file", str(f), "--vars", "4", "--json")
    assert code == 0 and json.loads(out)["input"] == DEG22
    code, _, err = run(capsys, "analyze", DEG22, "--vars", "3")
    assert code == 1 and err


def test_json_is_byte_stable(capsys):
    _, first, _ = run(capsys, "analyze", DEG22, "--oracle", "--json")
    _, second, _ = run(capsys, "analyze", DEG22, "--oracle", "--json")
    assert first == second
    assert "." not in json.dumps(json.loads(first)["mld_formula"])


def test_mirror(capsys):
    code, out, _ = run(capsys, "mirror", DEG22, "--json")
    rep = json.loads(out)
    assert code == 0 and rep["mirror"]["a"] == [13, 7, 5, 1]
    assert rep["mirror_potential"] == "x0^2 + x1^3*x2 + x2^5*x3 + x1*x3^19"


def test_gen_example(capsys):
    code, out, _ = run(capsys, "gen-example", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["D"] == 191 and rep["m"] == 311 and rep["checks"]["identity"]


def test_verify_and_liu(capsys):
    code, out, _ = run(capsys, "verify", "2..6", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and [r["n"] for r in rep["results"]] == [2, 3, 4, 5, 6]
    code, out, _ = run(capsys, "liu", "2", "--oracle", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["mld_formula"] == "1/42" and rep["agreement"]


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", str(DATA / "scan_sample.txt"), "--mode", "variety", "--json")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 52
    assert json.loads(lines[0])["best"]["mld"] == "1/311"
    code, _, err = run(capsys, "scan", str(DATA / "missing.txt"))
    assert code == 1 and err
    with pytest.raises(SystemExit):
        run_command(["scan", str(DATA / "scan_sample.txt"), "--jobs", "0"])


def test_human_output(capsys):
    code, out, _ = run(capsys, "mld", DEG22)
    assert code == 0 and "1/26" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bhkmld", "mld", DEG22, "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["mld_formula"] == "1/26"
