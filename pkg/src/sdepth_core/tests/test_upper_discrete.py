import pytest

from sdepth_core.constructions.upper_discrete import boolean_upper_discrete, upper_discrete_refine
from sdepth_core.errors import ConstructionError
from sdepth_core.poset import IntervalPartition, build_poset, is_upper_discrete, partition_sdepth
from sdepth_core.search import sdepth_exact
from sdepth_core.utils.parse_ideal import parse_ideal


TRIANGLE = "n=3; x1*x2, x2*x3, x1*x3"


def _pairs(part):
    return {(lo, hi) for lo, hi, _ in part.masks()}


boolean_cases = [
    {"n": 2, "k": 1, "expected": {(0, 1), (2, 2), (3, 3)}},
    {"n": 2, "k": 2, "expected": {(0, 3)}},
    {"n": 3, "k": 0, "expected": {(s, s) for s in range(8)}},
    {"n": 0, "k": 0, "expected": {(0, 0)}},
]


@pytest.mark.parametrize("case", boolean_cases, ids=[f"n={c['n']},k={c['k']}" for c in boolean_cases])
def test_boolean_upper_discrete(case):
    part = boolean_upper_discrete(case["n"], case["k"])
    assert _pairs(part) == case["expected"]
    assert is_upper_discrete(part, case["k"])


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 7) for k in range(n + 1)])
def test_boolean_upper_discrete_covers_lattice(n, k):
    part = boolean_upper_discrete(n, k)
    assert len(part.poset) == 2 ** n
    assert part.is_verified
    assert is_upper_discrete(part, k)


def test_boolean_degree_out_of_range():
    with pytest.raises(ConstructionError):
        boolean_upper_discrete(2, 3)
    with pytest.raises(ConstructionError):
        boolean_upper_discrete(2, -1)


def test_refine_splits_the_big_interval():
    ideal = parse_ideal(TRIANGLE)
    part = IntervalPartition.from_masks(build_poset(ideal), [(3, 7, ""), (6, 6, ""), (5, 5, "")])
    out = upper_discrete_refine(ideal, part, 2)
    assert _pairs(out) == {(3, 3), (7, 7), (6, 6), (5, 5)}
    assert {iv.rule for iv in out.intervals} == {"refine"}


refine_cases = [
    "n=4; x1, x2, x3, x4",
    "n=4; x1*x2, x3*x4",
    "n=5; x1*x2*x3, x3*x4, x1*x4*x5",
]


@pytest.mark.parametrize("text", refine_cases)
def test_refine_every_degree_up_to_sdepth(text):
    ideal = parse_ideal(text)
    base = sdepth_exact(ideal)
    for k in range(base.value + 1):
        out = upper_discrete_refine(ideal, base.witness, k)
        assert is_upper_discrete(out, k)
        assert partition_sdepth(out) >= k


def test_refine_preconditions():
    ideal = parse_ideal(TRIANGLE)
    part = sdepth_exact(ideal).witness
    with pytest.raises(ConstructionError):
        upper_discrete_refine(ideal, part, 3)
    with pytest.raises(ConstructionError):
        upper_discrete_refine(ideal, part, -1)
    with pytest.raises(ConstructionError):
        upper_discrete_refine(parse_ideal("n=3; x1*x2"), part, 1)
    sq = parse_ideal("n=1; x1^2")
    with pytest.raises(ConstructionError):
        upper_discrete_refine(sq, sdepth_exact(sq).witness, 1)
