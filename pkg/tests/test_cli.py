import io
import json
from pathlib import Path

import pytest

from commclass import cli
from commclass.words import parse_word

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv, golden", [
    (["words", "3,4,2,1"], "cli_words_3421.txt"),
    (["atoms", "3,4,2,1", "--method", "both"], "cli_atoms_both_3421.txt"),
    (["table", "--max-n", "4", "--format", "csv", "--workers", "1"], "cli_table_4.csv"),
    (["classes", "3,4,2,1"], "cli_classes_3421.txt"),
    (["structure", "3,4,2,1", "21232"], "cli_structure_3421.txt"),
    (["render", "21232", "--format", "svg"], "cli_render_21232.svg"),
])
def test_golden_transcripts(argv, golden):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text()


def test_table_row_four():
    _, text = run("table", "--max-n", "4", "--format", "csv")
    assert text.splitlines()[-1].endswith("53,52,12,0,3")


def test_cycle_notation_and_degree():
    _, a = run("words", "(1 3 2 4)", "--degree", "4")
    _, b = run("words", "3,4,2,1")
    assert a == b


def test_json_records():
    code, text = run("classes", "3,4,2,1", "--format", "json")
    records = [json.loads(line) for line in text.splitlines()]
    assert [r["size"] for r in records] == [2, 1, 2]
    assert list(records[0]) == ["representative", "size", "words"]
    _, text = run("count", "4,3,2,1", "--format", "json")
    assert json.loads(text) == {"permutation": "4,3,2,1", "count": 16}


def test_shift_and_render_ascii():
    assert run("shift", "21232", "1")[1].splitlines()[0] == "32343"
    assert run("render", "121")[1] == (GOLDEN / "render_121.txt").read_text()


def test_output_file(tmp_path):
    target = tmp_path / "w.txt"
    code, text = run("words", "3,4,2,1", "-o", str(target))
    assert code == 0 and text == ""
    assert target.read_text() == (GOLDEN / "cli_words_3421.txt").read_text()


@pytest.mark.parametrize("argv", [
    ["words", "3,4,x,1"],
    ["render", "13"],
    ["frobnicate"],
    ["words", "3,4,2,1", "--workers", "0"],
    ["shift", "121", "0"],
    ["structure", "3,4,2,1", "12132"],
])
def test_usage_errors_exit_1(argv, capsys):
    # argparse errors exit directly, domain errors come back as a return code
    try:
        code = cli.run(argv, stdout=io.StringIO())
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_parse_error_names_position(capsys):
    assert run("words", "3,4,x,1")[0] == 1
    assert "position 4" in capsys.readouterr().err


def test_oracle_disagreement_exits_2(monkeypatch, capsys):
    monkeypatch.setattr(cli, "atoms_bruteforce", lambda p, ceiling: [parse_word("12132")])
    code, _ = run("atoms", "3,4,2,1", "--method", "both")
    assert code == 2
    assert "3,4,2,1" in capsys.readouterr().err


def test_counterexample_exits_2(monkeypatch):
    from commclass.report import VerificationReport
    fake = VerificationReport("tenner_insufficiency", "x", "counterexample", {"word": "1"}, {}, 0)
    monkeypatch.setattr(cli, "check_tenner_insufficiency", lambda *a: fake)
    assert run("verify", "tenner-insufficiency")[0] == 2


@pytest.mark.parametrize("argv", [
    ["table", "--max-n", "5", "--budget", "4"],
    ["verify", "bound", "--n", "9", "--budget", "4"],
    ["verify", "class-inequality", "--n", "4", "--ceiling", "50"],
    ["verify", "tenner-insufficiency", "--max-letter", "2", "--max-len", "3"],
    ["words", "5,4,3,2,1", "--ceiling", "10"],
    ["bscan", "--n", "6"],
])
def test_resource_limits_exit_3(argv):
    assert run(*argv)[0] == 3


def test_verify_json_and_no_timing():
    code, text = run("verify", "equivalence", "--max-letter", "3", "--max-len", "8",
                     "--format", "json", "--no-timing")
    rec = json.loads(text)
    assert code == 0 and rec["verdict"] == "holds" and "elapsed_ms" not in rec


def test_workers_flag_overrides_environment(monkeypatch):
    monkeypatch.setenv("COMMCLASS_WORKERS", "2")
    a = run("table", "--max-n", "4", "--format", "csv")[1]
    b = run("table", "--max-n", "4", "--format", "csv", "--workers", "1")[1]
    assert a == b


def test_table_scan_dir_and_reference(tmp_path):
    code, text = run("table", "--max-n", "3", "--scan-dir", str(tmp_path), "--compare-reference",
                     "--workers", "1")
    assert code == 0
    assert "# computed n=3 matches reference row n=3" in text
    assert sorted(p.name for p in tmp_path.iterdir()) == [f"atoms-n{n}.tsv" for n in (1, 2, 3)]
