import pytest

from sdepth_cli.acceptance import (
    SEEDED,
    SUITES,
    SuiteResult,
    run_selftest,
    suite_complete_intersections,
    suite_four_gen,
    suite_lifts,
    suite_maximal,
    suite_oracle,
    suite_radical,
    suite_three_gen,
    suite_upper_discrete,
)
from sdepth_core.search import SearchConfig


CFG = SearchConfig()


def test_suite_result_records_failures():
    result = SuiteResult("demo")
    result.check(True, "fine")
    result.check(False, "broken")
    assert result.checked == 2
    assert not result.passed
    assert result.to_dict() == {"suite": "demo", "passed": False, "checked": 2, "failures": ["broken"]}


test_cases = [
    {"name": "maximal", "run": lambda: suite_maximal(CFG, max_n=4), "min_checks": 4},
    {"name": "complete-intersections", "run": lambda: suite_complete_intersections(CFG, max_n=4), "min_checks": 10},
    {"name": "radical", "run": lambda: suite_radical(CFG), "min_checks": 1},
    {"name": "three-gen", "run": lambda: suite_three_gen(CFG, count=5, seed=1, max_n=5), "min_checks": 5},
    {"name": "four-gen", "run": lambda: suite_four_gen(CFG, count=3, seed=1, max_n=5), "min_checks": 4},
    {"name": "upper-discrete", "run": lambda: suite_upper_discrete(CFG, count=10, seed=1), "min_checks": 2},
    {"name": "oracle", "run": lambda: suite_oracle(CFG, count=10, seed=1), "min_checks": 10},
    {"name": "lifts", "run": lambda: suite_lifts(CFG, count=10, seed=1), "min_checks": 10},
]


@pytest.mark.parametrize("case", test_cases, ids=[c["name"] for c in test_cases])
def test_suite_passes(case):
    result = case["run"]()
    assert result.suite == case["name"]
    assert result.passed, result.failures
    assert result.checked >= case["min_checks"]


def test_run_selftest_subset_and_count():
    results = run_selftest(CFG, ["radical", "oracle"], count=3, seed=2)
    assert [r.suite for r in results] == ["radical", "oracle"]
    assert results[1].checked == 3
    assert all(r.passed for r in results)


def test_run_selftest_rejects_unknown_suite():
    with pytest.raises(ValueError):
        run_selftest(CFG, ["nope"])


def test_seeded_suites_are_registered():
    assert SEEDED <= set(SUITES)
