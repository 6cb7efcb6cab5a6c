import json
import subprocess
import sys

import pytest

from blockpar import counting
from blockpar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "n, cls, expected",
    [(12, "bpstar", "734932121"), (1, "bp", "1"), (10, "bs", "102247563"), (4, "intersection", "31")],
)
def test_count(capsys, n, cls, expected):
    code, out, _ = run(capsys, "count", "--n", str(n), "--class", cls)
    assert code == 0 and out.strip() == expected


def test_count_table(capsys):
    code, out, _ = run(capsys, "count", "--n", "5", "--class", "bp0", "--table")
    assert out.splitlines() == ["1\t1", "2\t3", "3\t13", "4\t67", "5\t471"]


def test_enum_two(capsys):
    code, out, _ = run(capsys, "enum", "--n", "2", "--class", "bp")
    assert out.splitlines() == ["{(0),(1)}", "{(0,1)}", "{(1,0)}"]


def test_enum_single(capsys):
    assert run(capsys, "enum", "--n", "1", "--class", "bp0")[1] == "{(0)}\n"


@pytest.mark.parametrize("cls", ["bp", "bp0", "bpstar"])
@pytest.mark.parametrize("n", range(1, 7))
def test_enum_line_count_equals_count(capsys, n, cls):
    code, out, _ = run(capsys, "enum", "--n", str(n), "--class", cls)
    assert code == 0
    assert len(out.splitlines()) == counting.count_by_class(n, cls)


def test_enum_jsonl(capsys):
    _, out, _ = run(capsys, "enum", "--n", "3", "--class", "bpstar", "--format", "jsonl")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 6
    assert rows[0] == {"oblocks": [[0], [1], [2]]}


def test_enum_limit_and_partition(capsys):
    _, full, _ = run(capsys, "enum", "--n", "4", "--class", "bp")
    _, head, _ = run(capsys, "enum", "--n", "4", "--class", "bp", "--limit", "5")
    assert head.splitlines() == full.splitlines()[:5]
    _, shard, _ = run(capsys, "enum", "--n", "4", "--class", "bp", "--partition", "4")
    assert shard.splitlines() == full.splitlines()[-24:]


def test_enum_jobs_deterministic(capsys):
    _, serial, _ = run(capsys, "enum", "--n", "5", "--class", "bp0")
    _, par, _ = run(capsys, "enum", "--n", "5", "--class", "bp0", "--jobs", "3")
    assert par == serial
    _, lim, _ = run(capsys, "enum", "--n", "5", "--class", "bp0", "--jobs", "2", "--limit", "100")
    assert lim.splitlines() == serial.splitlines()[:100]


def test_enum_line_cap(capsys, monkeypatch):
    monkeypatch.setenv("BLOCKPAR_LINE_CAP", "10")
    code, out, err = run(capsys, "enum", "--n", "4", "--class", "bp")
    assert code == 3 and out == "" and "cap" in err
    assert run(capsys, "enum", "--n", "4", "--class", "bp", "--limit", "10")[0] == 0
    code, out, _ = run(capsys, "enum", "--n", "4", "--class", "bp", "--force")
    assert code == 0 and len(out.splitlines()) == 73


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--n", "0", "--class", "bp"],
        ["count", "--n", "3", "--class", "nope"],
        ["enum", "--n", "3", "--class", "bs"],
        ["enum", "--n", "3", "--class", "bp", "--limit", "-1"],
        ["enum", "--n", "3", "--class", "bp", "--partition", "9"],
        ["dynamics", "example", "{(0),(2,1}"],
        ["dynamics", "example", "{(0),(1)}"],
        ["dynamics", "no-such-file.json", "{(0)}"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(argv))
    assert info.value.code == 2


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "dynamics", "example", "{(0),(2,1}")
    assert code == 2 and "position 9" in err


def test_dynamics_sequential_report(capsys):
    code, out, _ = run(capsys, "dynamics", "example", "({1},{0,2})")
    assert code == 0
    assert "fixed points: 2" in out
    assert "  211  attractor" in out
    assert "length 4:" in out
    assert "limit set size: 6" in out


def test_dynamics_parallel_block_report(capsys):
    _, out, _ = run(capsys, "dynamics", "example", "{(0),(2,1)}")
    assert "fixed points: 2\n  000\n  211\n" in out
    assert "length 2:" in out


def test_dynamics_identity_all_fixed(capsys):
    _, out, _ = run(capsys, "dynamics", "identity", "{(0,2),(1)}")
    assert "fixed points: 8" in out and "limit cycles: 0" in out


def test_dynamics_from_file_and_formats(capsys, tmp_path):
    _, doc, _ = run(capsys, "network", "example")
    path = tmp_path / "ex.json"
    path.write_text(doc)
    _, js, _ = run(capsys, "dynamics", str(path), "({1},{0,2})", "--format", "json")
    data = json.loads(js)
    assert sorted(len(c) for c in data["cycles"]) == [1, 1, 4]
    _, dot, _ = run(capsys, "dynamics", str(path), "({1},{0,2})", "--format", "dot")
    assert dot.startswith("digraph")


def test_bad_network_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 1,\n "alphabets": [2], "tables": [[0, 1]')
    code, _, err = run(capsys, "dynamics", str(path), "{(0)}")
    assert code == 2 and "line 2" in err


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "1")
    assert code == 0 and "FAIL" not in out


@pytest.mark.slow
def test_verify_six(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "6")
    assert code == 0
    assert "BP_6 =: expected=4051 actual=4051" in out
    assert "FAIL" not in out


def test_verify_refuses_large(capsys):
    assert run(capsys, "verify", "--n-max", "12")[0] == 3


def test_verify_failure_exit_code(capsys, monkeypatch):
    from blockpar import verification

    monkeypatch.setitem(verification.KNOWN, "bp", [2] + verification.KNOWN["bp"][1:])
    code, out, _ = run(capsys, "verify", "--n-max", "1")
    assert code == 1 and "FAIL" in out


def test_bench_small(capsys):
    code, out, _ = run(capsys, "bench", "--n-max", "4", "--backend", "python")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert lines[4].split()[:4] == ["4", "73", "67", "24"]


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "enum", "--n", "5", "--class", "bpstar")[1] for _ in range(2)}
    assert len(outs) == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "blockpar", "enum", "--n", "3", "--class", "bpstar"],
        capture_output=True, text=True, check=True,
    )
    assert len(res.stdout.splitlines()) == 6
