import json
import subprocess
import sys

from argsim.cli import main

T1T2_FLAGS = [
    "--preset", "dic", "--lambda", "0.8", "--g", "avg", "--eta", "0.5",
]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compile_example1(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "compile", str(fixtures_dir / "example1.json"))
    assert code == 0
    lines = [l.strip() for l in out.splitlines()]
    assert "Bone(sk0(x0)) | notDog(x0)" in lines
    assert "Loves(x0, sk0(x0)) | notDog(x0)" in lines


def test_compile_trivial_notice(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "compile", str(fixtures_dir / "trivial.json"))
    assert code == 0
    assert "trivial" in out


def test_compile_multiclause_claim_advisory(capsys, fixtures_dir):
    code, out, err = run_cli(capsys, "compile", str(fixtures_dir / "t1.json"))
    assert code == 0
    assert "may not be minimal" in err


def test_compile_json_format(capsys, fixtures_dir):
    code, out, _ = run_cli(
        capsys, "compile", str(fixtures_dir / "t1.json"), "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["id"] == "T1"
    assert payload["symbols"] == ["AtLocation", "Tease", "dog", "monkey", "zoo"]
    assert payload["claim_is_multiclause"] is True
    assert "Tease(dog, monkey)" in payload["support"]


def test_compile_malformed_formula_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"id": "X", "premises": ["P(a"], "claim": "True"}')
    code, _, err = run_cli(capsys, "compile", str(bad))
    assert code == 2
    assert "position" in err


def test_compile_missing_file_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "compile", "no-such-file.json")
    assert code == 2


def test_sim_golden_pipeline(capsys, fixtures_dir):
    code, out, _ = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--backend", f"lookup:{fixtures_dir / 't1t2.lookup.json'}",
        "--weights", str(fixtures_dir / "t1t2.weights.json"),
        *T1T2_FLAGS,
    )
    assert code == 0
    assert out == "0.628\n"


def test_sim_same_argument_is_one(capsys, fixtures_dir):
    code, out, _ = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t1.json")
    )
    assert code == 0
    assert out == "1.000\n"


def test_sim_eta_out_of_range_is_usage_error(capsys, fixtures_dir):
    code, _, err = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--eta", "1.5",
    )
    assert code == 2
    assert "eta" in err


def test_sim_wrong_weights_pair_is_domain_error(capsys, fixtures_dir, tmp_path):
    weights = json.loads((fixtures_dir / "t1t2.weights.json").read_text())
    weights["pair"] = ["T1", "T9"]
    weights["T9"] = weights.pop("T2")
    path = tmp_path / "w.json"
    path.write_text(json.dumps(weights))
    code, _, err = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--weights", str(path),
    )
    assert code == 1


def test_sim_invalid_weights_is_domain_error(capsys, fixtures_dir, tmp_path):
    weights = json.loads((fixtures_dir / "t1t2.weights.json").read_text())
    weights["T1"]["support"]["symbols"]["dog"] = 0.5
    path = tmp_path / "w.json"
    path.write_text(json.dumps(weights))
    code, _, err = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--weights", str(path),
    )
    assert code == 1
    assert "sum" in err


def test_sim_explain_output(capsys, fixtures_dir, tmp_path):
    out_path = tmp_path / "explanation.csv"
    code, out, _ = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--backend", f"lookup:{fixtures_dir / 't1t2.lookup.json'}",
        "--weights", str(fixtures_dir / "t1t2.weights.json"),
        "--explain", str(out_path), *T1T2_FLAGS,
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0].startswith("component,")
    assert len(lines) == 13  # header + 6 support + 6 claim records


def test_sim_explain_bad_extension(capsys, fixtures_dir, tmp_path):
    code, _, err = run_cli(
        capsys, "sim", str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--explain", str(tmp_path / "out.xlsx"),
    )
    assert code == 2


def test_crossover_values(capsys):
    assert run_cli(capsys, "crossover", "0.795", "0.757", "0.913", "0.653")[1] == "0.468\n"
    assert run_cli(capsys, "crossover", "0.5", "0.5", "0.5", "0.5")[1] == "none\n"
    assert run_cli(capsys, "crossover", "1", "0", "0", "1")[1] == "0.500\n"


def test_audit_single_principle(capsys):
    code, out, _ = run_cli(
        capsys, "audit", "--principles", "maximality", "-n", "10", "--seed", "1"
    )
    assert code == 0
    assert "maximality" in out
    assert "pass" in out


def test_audit_full_summary_and_report(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "audit", "-n", "5", "--seed", "3", "--report", str(report_path)
    )
    assert code == 0
    assert out.count("pass") == 13
    assert "expected-fail" in out
    payload = json.loads(report_path.read_text())
    assert payload["ok"] is True
    assert len(payload["principles"]) == 14


def test_audit_infeasible_params(capsys):
    code, _, err = run_cli(capsys, "audit", "--predicates", "0", "-n", "1")
    assert code == 1


def test_audit_unknown_principle(capsys):
    code, _, err = run_cli(capsys, "audit", "--principles", "magic", "-n", "1")
    assert code == 1


def test_stdout_deterministic(fixtures_dir):
    cmd = [
        sys.executable, "-m", "argsim", "sim",
        str(fixtures_dir / "t1.json"), str(fixtures_dir / "t2.json"),
        "--backend", f"lookup:{fixtures_dir / 't1t2.lookup.json'}",
        "--weights", str(fixtures_dir / "t1t2.weights.json"), *T1T2_FLAGS,
    ]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout == b"0.628\n"


def test_audit_stdout_deterministic():
    cmd = [
        sys.executable, "-m", "argsim", "audit",
        "--principles", "maximality,nonzero", "-n", "5", "--seed", "9",
    ]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout


def test_usage_error_from_argparse():
    result = subprocess.run(
        [sys.executable, "-m", "argsim", "sim"], capture_output=True
    )
    assert result.returncode == 2
