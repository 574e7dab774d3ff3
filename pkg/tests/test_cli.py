import json
import subprocess
import sys

import pytest

D8_TEXT = "gens: r, s; rels: r^4; s^2; (r*s)^2\n"
D16_TEXT = "gens: r, s; rels: r^8; s^2; (r*s)^2\n"
S4_TEXT = "gens: a, b; rels: a^4; b^2; (a*b)^3\n"
CORPUS_TEXT = "C6 | gens: a; rels: a^6\nK4 | gens: a, b; rels: a^2; b^2; [a,b]\n"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "baerkit", *args],
        capture_output=True, text=True)


@pytest.fixture
def d8_file(tmp_path):
    path = tmp_path / "d8.txt"
    path.write_text(D8_TEXT)
    return str(path)


@pytest.fixture
def d16_file(tmp_path):
    path = tmp_path / "d16.txt"
    path.write_text(D16_TEXT)
    return str(path)


def test_analyze_text_output(d8_file):
    out = run_cli("analyze", d8_file)
    assert out.returncode == 0
    assert out.stdout == (
        "order=8 class=2 derived_length=2 |T2|=1 classification=TwoBaer\n")


def test_analyze_json_output(d8_file):
    out = run_cli("analyze", d8_file, "--format", "json", "--seed", "7")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert set(doc) == {"config", "group"}
    assert doc["config"]["seed"] == 7
    group = doc["group"]
    assert group["name"] == "d8.txt"
    assert group["order"] == 8
    assert group["t2_order"] == 1
    assert group["classification"] == "TwoBaer"
    assert group["defect_histogram"] == {"1": 4, "2": 4}


def test_analyze_rejects_malformed_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("gens: a; rels: b^2\n")
    out = run_cli("analyze", str(path))
    assert out.returncode == 1
    assert out.stdout == ""
    assert out.stderr.startswith("error:")


def test_analyze_missing_file(tmp_path):
    out = run_cli("analyze", str(tmp_path / "nope.txt"))
    assert out.returncode == 1
    assert out.stderr.startswith("error:")


def test_analyze_enumeration_limit(tmp_path):
    path = tmp_path / "s4.txt"
    path.write_text(S4_TEXT)
    out = run_cli("analyze", str(path), "--max-cosets", "10")
    assert out.returncode == 2
    assert out.stderr.startswith("error:")


def test_defect_text_output(d16_file):
    out = run_cli("defect", d16_file, "s")
    assert out.returncode == 0
    assert out.stdout == "defect 3; s is not 2-subnormal\n"
    out = run_cli("defect", d16_file, "r")
    assert out.stdout == "defect 1; r is 2-subnormal\n"
    out = run_cli("defect", d16_file, "s", "--n", "3")
    assert out.stdout == "defect 3; s is 3-subnormal\n"


def test_defect_of_identity_valued_word(d16_file):
    out = run_cli("defect", d16_file, "r*r^-1")
    assert out.returncode == 0
    assert "defect 1" in out.stdout
    assert "is 2-subnormal" in out.stdout


def test_defect_json_output(d16_file):
    out = run_cli("defect", d16_file, "s", "--format", "json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert set(doc) == {"config", "defect"}
    d = doc["defect"]
    assert set(d) == {"word", "defect", "cap", "stabilized", "n", "n_subnormal"}
    assert d == {"word": "s", "defect": 3, "cap": None, "stabilized": False,
                 "n": 2, "n_subnormal": False}


def test_defect_rejects_foreign_generator(d8_file):
    out = run_cli("defect", d8_file, "t^2")
    assert out.returncode == 1
    assert out.stderr.startswith("error:")


def test_verify_examples_json_small_prime():
    out = run_cli("verify-examples", "--primes", "2", "--format", "json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    names = [r["group"]["name"] for r in doc["reports"]]
    assert names == ["class4-2group", "class3-p2"]
    statuses = {c["status"] for r in doc["reports"] for c in r["checks"]}
    assert statuses <= {"pass", "skipped"}
    assert "pass" in statuses


def test_verify_examples_text_has_summary():
    out = run_cli("verify-examples", "--primes", "2")
    assert out.returncode == 0
    assert out.stdout.splitlines()[-1].startswith("checks: ")
    assert "class4-2group:" in out.stdout


def test_verify_examples_p7_gate():
    out = run_cli("verify-examples", "--primes", "7")
    assert out.returncode == 1
    assert "allow-p7" in out.stderr


def test_verify_examples_bad_prime_list():
    out = run_cli("verify-examples", "--primes", "2,foo")
    assert out.returncode == 1
    assert "error" in out.stderr


def test_check_theorems_empty_corpus(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n")
    out = run_cli("check-theorems", "--corpus", str(path), "--format", "json")
    assert out.returncode == 0
    assert json.loads(out.stdout)["reports"] == []


def test_check_theorems_text_output(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text(CORPUS_TEXT)
    out = run_cli("check-theorems", "--corpus", str(path))
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0].startswith("seed=0 max_cosets=")
    assert any(line.startswith("C6: order=6") for line in lines)
    assert any(line.startswith("K4: order=4") for line in lines)
    assert lines[-1].startswith("checks: ")
    assert " 0 failed" in lines[-1]


def test_check_theorems_corpus_with_line_error(tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("C2 | gens: a; rels: a^2\noops\n")
    out = run_cli("check-theorems", "--corpus", str(path))
    assert out.returncode == 1
    assert "broken.txt:2" in out.stderr


def test_check_theorems_runs_are_byte_identical(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text(CORPUS_TEXT)
    args = ("check-theorems", "--corpus", str(path),
            "--format", "json", "--seed", "42")
    one = run_cli(*args)
    two = run_cli(*args)
    assert one.returncode == two.returncode == 0
    assert one.stdout == two.stdout


def test_unknown_flag_exits_with_input_error():
    out = run_cli("analyze", "--frobnicate")
    assert out.returncode == 1
    assert "error" in out.stderr


def test_missing_command_exits_with_input_error():
    out = run_cli()
    assert out.returncode == 1
