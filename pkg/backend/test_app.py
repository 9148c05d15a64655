# test_app.py - the command line surface and its exit codes
import json
from pathlib import Path

import pytest

from app import main
from stability import EXIT_INPUT_ERROR, EXIT_OK, EXIT_REJECTED

DATA = Path(__file__).parent / "data"


def test_exported_montague_proof_checks(tmp_path, capsys):
    assert main(["scripts", "export", "montague", "--directory", str(tmp_path)]) == EXIT_OK
    proof_file = tmp_path / "montague.proof"
    assert proof_file.is_file()
    capsys.readouterr()
    assert main(["check", str(proof_file)]) == EXIT_OK
    assert "⊥ derived in PA+UT^K+NEC^K" in capsys.readouterr().out


def test_check_reports_rejections(tmp_path, capsys):
    proof_file = tmp_path / "bad.proof"
    proof_file.write_text("# system: Base\n1 | 0 = S(0) | eq\n", encoding="utf-8")
    assert main(["check", str(proof_file)]) == EXIT_REJECTED
    assert "❌" in capsys.readouterr().out


def test_check_needs_a_readable_file(tmp_path):
    assert main(["check", str(tmp_path / "missing.proof")]) == EXIT_INPUT_ERROR
    garbled = tmp_path / "garbled.proof"
    garbled.write_text("this is not a proof\n", encoding="utf-8")
    assert main(["check", str(garbled)]) == EXIT_INPUT_ERROR


def test_parse_and_code(capsys):
    assert main(["parse", "forall x in Ag (K2(x, [[0 = 0]]))"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("formula: ")
    assert main(["code", "S(S(0))"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert main(["code", "--decode", out[0]]) == EXIT_OK
    assert "S(S(0))" in capsys.readouterr().out
    assert main(["parse", "K2(0"]) == EXIT_INPUT_ERROR


def test_codes_past_the_decimal_digit_limit(capsys):
    text = " & ".join(["U(12345)"] * 400)
    assert main(["code", text]) == EXIT_OK
    digits = capsys.readouterr().out.splitlines()[0]
    assert len(digits) > 4300
    assert main(["code", "--decode", digits]) == EXIT_OK
    assert "U(12345) & U(12345)" in capsys.readouterr().out


def test_diag_writes_the_witness(tmp_path, capsys):
    target = tmp_path / "delta.proof"
    assert main(["diag", str(DATA / "delta.txt"), "--name", "delta", "--output", str(target)]) == EXIT_OK
    assert target.read_text(encoding="utf-8").startswith("# system: Base")
    assert "witness:" in capsys.readouterr().out


def test_systems_listing(capsys):
    assert main(["systems"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("Base", "DCB", "KT", "KM", "BEFS"):
        assert name in out
    assert main(["systems", "KT"]) == EXIT_OK
    assert main(["systems", "NoSuchSystem"]) == EXIT_INPUT_ERROR


def test_scripts_list_and_unknown_ids(capsys):
    assert main(["scripts", "list"]) == EXIT_OK
    assert "ck-main-b" in capsys.readouterr().out
    assert main(["scripts", "run", "no-such-script"]) == EXIT_INPUT_ERROR


def test_revise_the_shipped_frame(tmp_path, capsys):
    report_file = tmp_path / "report.json"
    code = main(["revise", str(DATA / "frame.json"), "--fragment", str(DATA / "frag.json"),
                 "--target", "kt-ubf-ia", "--max-iter", "12", "--json", str(report_file)])
    assert code == EXIT_OK
    assert "result: PASS" in capsys.readouterr().out
    report = json.loads(report_file.read_text(encoding="utf-8"))
    assert report["passed"] and report["summary"]["false"] == 0
    assert report["header"]["cutoff"] == 16


def test_revise_liar_mode(capsys):
    assert main(["revise", "--mode", "liar"]) == EXIT_OK
    assert "liar period: 2" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["revise", "no-such-frame.json"],
    ["revise", "--mode", "nonsense"],
    ["--log-level", "LOUD", "systems"],
    [],
])
def test_input_errors_exit_with_two(argv):
    assert main(argv) == EXIT_INPUT_ERROR
