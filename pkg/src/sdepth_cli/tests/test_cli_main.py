import json

import pytest

from sdepth_cli.helpers import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION
from sdepth_cli.main import main


TRIANGLE = "n=3; x1*x2, x2*x3, x1*x3"


def _run(capsys, argv):
    code = main(argv)
    lines = [line for line in capsys.readouterr().out.splitlines() if line.strip()]
    return code, [json.loads(line) for line in lines]


def _write_witness(path, intervals):
    path.write_text(json.dumps({
        "n": 3,
        "g": [1, 1, 1],
        "intervals": [{"lo": lo, "hi": hi} for lo, hi in intervals],
    }))
    return str(path)


def test_sdepth_json(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, rows = _run(capsys, ["sdepth", TRIANGLE, "--json", "--out", str(out)])
    assert code == EXIT_OK
    assert rows == [{"n": 3, "m": 3, "sdepth": 2, "witness": str(out)}]
    assert json.loads(out.read_text())["n"] == 3


def test_sdepth_text_and_ideal_file(capsys, tmp_path):
    ideal_file = tmp_path / "ideal.txt"
    ideal_file.write_text("n=4; x1, x2, x3, x4")
    code = main(["sdepth", "--file", str(ideal_file), "--out", str(tmp_path / "w.json")])
    text = capsys.readouterr().out
    assert code == EXIT_OK
    assert "sdepth: 2" in text.splitlines()


witness_cases = [
    {"k": "2", "code": EXIT_OK, "status": "found"},
    {"k": "3", "code": EXIT_VIOLATION, "status": "not_found"},
]


@pytest.mark.parametrize("case", witness_cases, ids=[c["k"] for c in witness_cases])
def test_witness(capsys, tmp_path, case):
    code, rows = _run(capsys, ["witness", TRIANGLE, "--k", case["k"], "--json", "--out", str(tmp_path / "w.json")])
    assert code == case["code"]
    assert rows[0]["status"] == case["status"]


def test_witness_k_out_of_range(capsys, tmp_path):
    code, rows = _run(capsys, ["witness", TRIANGLE, "--k", "5", "--out", str(tmp_path / "w.json")])
    assert code == EXIT_USAGE
    assert rows[0]["error"] == "ValueError"


def test_verify(capsys, tmp_path):
    singletons = _write_witness(
        tmp_path / "s.json", [([1, 1, 0], [1, 1, 0]), ([1, 0, 1], [1, 0, 1]), ([0, 1, 1], [0, 1, 1]), ([1, 1, 1], [1, 1, 1])]
    )
    code, rows = _run(capsys, ["verify", singletons, "--ideal", TRIANGLE, "--k", "2", "--json"])
    assert code == EXIT_OK
    assert rows == [{"ok": True, "sdepth": 2, "k": 2, "upper_discrete": True}]

    coarse = _write_witness(tmp_path / "c.json", [([1, 1, 0], [1, 1, 1]), ([1, 0, 1], [1, 0, 1]), ([0, 1, 1], [0, 1, 1])])
    code, rows = _run(capsys, ["verify", coarse, "--ideal", TRIANGLE, "--json"])
    assert code == EXIT_OK
    code, rows = _run(capsys, ["verify", coarse, "--ideal", TRIANGLE, "--k", "2", "--json"])
    assert code == EXIT_VIOLATION
    assert rows[0]["upper_discrete"] is False

    gap = _write_witness(tmp_path / "g.json", [([1, 1, 0], [1, 1, 1]), ([1, 0, 1], [1, 0, 1])])
    code, rows = _run(capsys, ["verify", gap, "--ideal", TRIANGLE, "--json"])
    assert code == EXIT_VIOLATION
    assert rows == [{"ok": False, "violation": {"kind": "gap", "witness": [0, 1, 1]}}]


def test_verify_search_output(capsys, tmp_path):
    out = tmp_path / "w.json"
    main(["sdepth", "n=3; x1^2, x2*x3^2", "--out", str(out)])
    capsys.readouterr()
    code, rows = _run(capsys, ["verify", str(out), "--ideal", "n=3; x1^2, x2*x3^2", "--json"])
    assert code == EXIT_OK
    assert rows[0]["sdepth"] == 2


usage_cases = [
    {"why": "no verb", "argv": []},
    {"why": "unknown verb", "argv": ["frobnicate"]},
    {"why": "no ideal", "argv": ["sdepth"]},
    {"why": "bad ideal", "argv": ["sdepth", "n=2; y1"]},
    {"why": "bad threads", "argv": ["sdepth", "n=2; x1", "--threads", "0"]},
    {"why": "unknown construction", "argv": ["construct", "magic", "n=2; x1"]},
    {"why": "lem without pivot", "argv": ["construct", "lem", "n=2; x1"]},
    {"why": "missing witness file", "argv": ["verify", "/nonexistent/w.json", "--ideal", "n=2; x1"]},
]


@pytest.mark.parametrize("case", usage_cases, ids=[c["why"] for c in usage_cases])
def test_usage_errors_print_json(capsys, case):
    code, rows = _run(capsys, case["argv"])
    assert code == EXIT_USAGE
    assert "error" in rows[0]


def test_budget_exit(capsys, tmp_path):
    code, rows = _run(capsys, ["sdepth", "n=5; x1, x2, x3, x4, x5", "--budget", "1", "--out", str(tmp_path / "w.json")])
    assert code == EXIT_BUDGET
    assert rows[0]["error"] == "budget_exceeded"
    assert rows[0]["lower"] is None
    assert rows[0]["upper"] == 3


def test_construct(capsys, tmp_path):
    code, rows = _run(capsys, ["construct", "three-gen", TRIANGLE, "--json", "--out", str(tmp_path / "t.json")])
    assert code == EXIT_OK
    assert rows[0]["sdepth"] == 2
    assert [i["kind"] for i in rows[0]["plan"]["instructions"]] == ["step0"] * 3


def test_survey(capsys):
    code, rows = _run(capsys, ["survey", "--n", "4", "--m", "2", "--count", "3", "--seed", "1", "--json"])
    assert code == EXIT_OK
    assert len(rows) == 4
    assert rows[-1]["summary"]["count"] == 3
    assert rows[-1]["summary"]["counterexamples"] == []


def test_selftest(capsys):
    code, rows = _run(capsys, ["selftest", "--suite", "radical", "--suite", "maximal", "--json"])
    assert code == EXIT_OK
    assert [r["suite"] for r in rows] == ["radical", "maximal"]
    assert all(r["passed"] for r in rows)
