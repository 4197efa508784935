import json

import pytest

from sdepth_cli.helpers import (
    EXIT_OK,
    EXIT_VIOLATION,
    error_report,
    report_format,
    run_construct,
    run_survey,
    summarize_survey,
    survey,
    survey_instances,
)
from sdepth_core.errors import ConstructionError
from sdepth_core.search import SearchConfig
from sdepth_core.utils.parse_ideal import parse_ideal


def test_report_format_json_lines():
    text = report_format([{"a": 1}, {"b": [1, 2]}])
    assert [json.loads(line) for line in text.splitlines()] == [{"a": 1}, {"b": [1, 2]}]


def test_report_format_text():
    text = report_format({"sdepth": 2, "witness": None, "plan": {"core_size": 3}}, as_json=False)
    assert text.splitlines() == ["sdepth: 2", "witness: None", 'plan: {"core_size": 3}']
    assert report_format([{"a": 1}, {"a": 2}], as_json=False) == "a: 1\n\na: 2"


def test_error_report():
    assert error_report("usage", "bad") == {"error": "usage", "message": "bad"}


construct_cases = [
    {"name": "ci", "ideal": "n=5; x1*x2, x3*x4", "k": None, "pivot": None, "sdepth": 4, "result": "n=5; x1*x2, x3*x4"},
    {"name": "lem", "ideal": "n=3; x1, x2*x3", "k": None, "pivot": 3, "sdepth": 3, "result": "n=4; x1, x2*x3*x4"},
    {"name": "boolean", "ideal": "n=3; x1", "k": 1, "pivot": None, "sdepth": 1, "result": "n=3; 1"},
    {"name": "upper-discrete", "ideal": "n=3; x1*x2, x2*x3, x1*x3", "k": None, "pivot": None, "sdepth": 2,
     "result": "n=3; x1*x2, x1*x3, x2*x3"},
    {"name": "rem", "ideal": "n=2; x1, x2", "k": None, "pivot": 2, "sdepth": 2, "result": "n=3; x1, x2*x3"},
    {"name": "four-gen", "ideal": "n=4; x1*x2, x2*x3, x3*x4, x1*x4", "k": None, "pivot": None, "sdepth": 2,
     "result": "n=4; x1*x2, x1*x4, x2*x3, x3*x4"},
    {"name": "split", "ideal": "n=3; x1, x2*x3", "k": None, "pivot": None, "sdepth": 2, "result": "n=3; x1, x2*x3"},
]


@pytest.mark.parametrize("case", construct_cases, ids=[c["name"] for c in construct_cases])
def test_run_construct(tmp_path, case):
    out = tmp_path / "w.json"
    code, report = run_construct(
        parse_ideal(case["ideal"]), case["name"], SearchConfig(), case["k"], case["pivot"], None, str(out)
    )
    assert code == EXIT_OK
    assert report["ideal"] == case["result"]
    assert report["sdepth"] >= case["sdepth"]
    assert report["witness"] == str(out)
    assert out.exists()


def test_run_construct_reports_degree_and_split_parts(tmp_path):
    _, report = run_construct(parse_ideal("n=2; x1, x2"), "rem", SearchConfig(), None, 2, None, str(tmp_path / "r.json"))
    assert report["upper_discrete_k"] == 2
    _, report = run_construct(parse_ideal("n=3; x1, x2*x3"), "split", SearchConfig(), out=str(tmp_path / "s.json"))
    assert report["i0"] == "n=2; x1"
    assert report["i1"] == "n=2; x1, x2"


def test_run_construct_from_witness_file(tmp_path):
    witness = tmp_path / "base.json"
    witness.write_text(json.dumps({
        "n": 3,
        "intervals": [
            {"lo": [1, 0, 0], "hi": [1, 1, 0]},
            {"lo": [1, 0, 1], "hi": [1, 0, 1]},
            {"lo": [0, 1, 1], "hi": [1, 1, 1]},
        ],
    }))
    _, report = run_construct(
        parse_ideal("n=3; x1, x2*x3"), "lem", SearchConfig(), pivot=3,
        witness_path=str(witness), out=str(tmp_path / "w.json"),
    )
    assert report["sdepth"] == 3


def test_run_construct_rejects_bad_input(tmp_path):
    with pytest.raises(ConstructionError):
        run_construct(parse_ideal("n=3; x1*x2, x2*x3"), "ci", SearchConfig(), out=str(tmp_path / "w.json"))
    with pytest.raises(ValueError):
        run_construct(parse_ideal("n=2; x1"), "rem", SearchConfig(), out=str(tmp_path / "w.json"))


def test_survey_is_deterministic_across_threads():
    cfg = SearchConfig()
    assert survey_instances(4, 3, 5, 9) == survey_instances(4, 3, 5, 9)
    serial = survey(4, 3, 4, 9, cfg, threads=1)
    parallel = survey(4, 3, 4, 9, cfg, threads=2)
    assert serial == parallel
    assert [r["idx"] for r in serial] == [0, 1, 2, 3]


def test_summarize_survey():
    rows = [{"idx": 0, "slack": 1}, {"idx": 1, "slack": -1}, {"idx": 2, "slack": 0}]
    assert summarize_survey(rows) == {"count": 3, "min_slack": -1, "counterexamples": [1]}
    assert summarize_survey([]) == {"count": 0, "min_slack": None, "counterexamples": []}


def test_run_survey_appends_summary():
    code, rows = run_survey(4, 2, 2, 0, SearchConfig())
    assert code == EXIT_OK
    assert rows[-1]["summary"]["count"] == 2
    assert all(r["slack"] >= 0 for r in rows[:-1])
    assert code != EXIT_VIOLATION
