import json
import subprocess
import sys

import pytest

from lulc.cli import main
from lulc.forge import BUILTIN_BASIS, BUILTIN_OCTAL, BUILTIN_TERMS


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def builtin_file(tmp_path):
    return write(tmp_path / "builtin.json", {
        "n": 27, "d": 6, "basis": list(BUILTIN_BASIS),
        "quadratic_terms": [list(t) for t in BUILTIN_TERMS],
        "phase_exponents_octal": list(BUILTIN_OCTAL),
    })


@pytest.fixture
def flat_file(tmp_path):
    return write(tmp_path / "flat.json", {"n": 3, "d": 2, "basis": ["110", "011"], "quadratic_terms": []})


def test_builtin_check(capsys):
    assert main(["paper-check"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "QFP witness valid; mod-4 contradiction 0≡2; graphs NOT LC equivalent"


def test_builtin_check_json(capsys):
    assert main(["paper-check", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["confirmed"] is True
    assert report["qfp_verdict"] == "counterexample"
    assert report["lc_verdict"] == "not_equivalent"
    assert report["contradiction"]["verified"] is True


def test_builtin_check_tampered(capsys):
    assert main(["paper-check", "--tamper-exponent", "5", "--json"]) == 3
    report = json.loads(capsys.readouterr().out)
    assert report["failed_stage"] == "phase_check" and report["violating_x"]


def test_verify_builtin(builtin_file):
    assert main(["verify", builtin_file]) == 0


def test_verify_flat_prints_zero_solution(flat_file, capsys):
    assert main(["verify", flat_file, "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["fourth_root_solution"] == [0, 0, 0]
    assert report["failed_stage"] == "mod4_solvable"


def test_verify_truncated(tmp_path, builtin_file):
    text = open(builtin_file).read()
    bad = tmp_path / "bad.json"
    bad.write_text(text[:50])
    assert main(["verify", str(bad)]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2


def test_verify_bad_witness(tmp_path):
    path = write(tmp_path / "w.json", {"n": 2, "d": 1, "basis": ["11"], "quadratic_terms": [[1, 2]],
                                       "phase_exponents_octal": [0, 0]})
    assert main(["verify", path]) == 1


def test_forge_deterministic_and_verifiable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["forge", "--d", "6", "--seed", "1", "--deterministic", "--out", str(a)]) == 0
    out = capsys.readouterr().out
    assert "seed: 1" in out and "lc_verdict: not_equivalent" in out
    assert main(["forge", "--d", "6", "--seed", "1", "--deterministic", "--out", str(b), "--no-lc"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["verify", str(a)]) == 0
    assert main(["verify", str(a), "--lc"]) == 0


def test_forge_rejects_d5(capsys):
    assert main(["forge", "--d", "5"]) == 2
    assert "impossible" in capsys.readouterr().err


def test_forge_bad_flags():
    with pytest.raises(SystemExit) as exc:
        main(["forge", "--seed", "abc"])
    assert exc.value.code == 2
    assert main(["forge", "--max-iters", "0"]) == 2


def test_forge_budget_exhausted(capsys):
    # seed 1 needs more than one iteration
    assert main(["forge", "--seed", "1", "--max-iters", "1", "--deterministic"]) == 1
    assert "budget_exhausted" in capsys.readouterr().out


def test_lc_check_builtin_exports(tmp_path):
    prefix = str(tmp_path / "p")
    assert main(["paper-check", "--out", prefix]) == 0
    assert main(["lc-check", prefix + "_gs.json", prefix + "_gqs.json"]) == 1
    assert main(["lc-check", prefix + "_gs.json", prefix + "_gs.json"]) == 0


def test_lc_check_star_vs_complete(tmp_path):
    star = write(tmp_path / "s.json", {"n": 5, "edges": [[1, v] for v in range(2, 6)]})
    k5 = write(tmp_path / "k.json", {"n": 5, "edges": [[i, j] for i in range(1, 6) for j in range(i + 1, 6)]})
    assert main(["lc-check", star, k5]) == 0


def test_lc_check_io_errors(tmp_path):
    good = write(tmp_path / "g.json", {"n": 2, "edges": [[1, 2]]})
    other = write(tmp_path / "o.json", {"n": 3, "edges": []})
    junk = tmp_path / "j.json"
    junk.write_text("{")
    assert main(["lc-check", good, str(tmp_path / "none.json")]) == 2
    assert main(["lc-check", good, str(junk)]) == 2
    assert main(["lc-check", good, other]) == 2


def test_graphs_builtin(builtin_file, tmp_path, capsys):
    prefix = str(tmp_path / "out" / "builtin")
    assert main(["graphs", builtin_file, "--out", prefix, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n"] == 27 and report["lc_verdict"] == "not_equivalent"
    for tag in ("gs", "gqs"):
        g = json.loads(open(f"{prefix}_{tag}.json").read())
        assert g["n"] == 27
        assert open(f"{prefix}_{tag}.dot").read().startswith("graph")


def test_graphs_flat_instance(flat_file, tmp_path, capsys):
    assert main(["graphs", flat_file, "--out", str(tmp_path / "f"), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["graphs_differ"] is False and report["lc_verdict"] == "equivalent"


def test_graphs_forge_output_consistent(tmp_path, capsys):
    path = tmp_path / "f.json"
    assert main(["forge", "--seed", "4", "--deterministic", "--out", str(path), "--no-lc"]) == 0
    capsys.readouterr()
    assert main(["graphs", str(path), "--out", str(tmp_path / "g"), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    # verify says counterexample, so LU holds and the graphs must not be LC equivalent
    assert main(["verify", str(path)]) == 0
    assert report["lc_verdict"] == "not_equivalent"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lulc", "paper-check", "--json"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["confirmed"] is True
