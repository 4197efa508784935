import pytest

from sdepth_core.constructions.common import LiftInstruction, embed_partition
from sdepth_core.constructions.lifts import (
    ci_partition,
    lem_lift,
    maximal_ideal_partition,
    plan_ci,
    rem_lift,
    replay_lem,
)
from sdepth_core.errors import ConstructionError
from sdepth_core.poset import IntervalPartition, build_poset, is_upper_discrete, partition_sdepth
from sdepth_core.search import sdepth_exact
from sdepth_core.utils.parse_ideal import parse_ideal


def _part(text, masks):
    ideal = parse_ideal(text)
    return ideal, IntervalPartition.from_masks(build_poset(ideal), [(lo, hi, "") for lo, hi in masks])


def _pairs(part):
    return {(lo, hi) for lo, hi, _ in part.masks()}


def test_lem_lift_example():
    # [x1, x1x2], [x1x3], [x2x3, x1x2x3]
    ideal, part = _part("n=3; x1, x2*x3", [(0b001, 0b011), (0b101, 0b101), (0b110, 0b111)])
    out = lem_lift(ideal, part, pivot=3)
    assert out.poset.ideal == parse_ideal("n=4; x1, x2*x3*x4")
    assert _pairs(out) == {(0b1, 0b1011), (0b101, 0b111), (0b1101, 0b1101), (0b1110, 0b1111)}
    assert partition_sdepth(part) == 2
    assert partition_sdepth(out) == 3
    assert {iv.rule for iv in out.intervals} == {"lem:B1", "lem:B2", "lem:B3"}


lem_cases = [
    "n=3; x1*x2, x2*x3",
    "n=4; x1*x2, x3*x4",
    "n=4; x1*x2*x3, x3*x4",
    "n=3; x1, x2, x3",
]


@pytest.mark.parametrize("text", lem_cases)
def test_lem_lift_raises_search_witness_by_one(text):
    ideal = parse_ideal(text)
    base = sdepth_exact(ideal)
    # first variable owned by a single generator
    pivot = next(v for v in range(1, ideal.n + 1) if sum(1 for s in ideal.supports if s >> (v - 1) & 1) == 1)
    out = lem_lift(ideal, base.witness, pivot)
    assert partition_sdepth(out) == base.value + 1


lem_errors = [
    {"why": "shared pivot", "ideal": "n=3; x1*x2, x2*x3", "pivot": 2, "appended": None},
    {"why": "unused pivot", "ideal": "n=3; x1*x2", "pivot": 3, "appended": None},
    {"why": "pivot out of range", "ideal": "n=2; x1, x2", "pivot": 3, "appended": None},
    {"why": "appended not n+1", "ideal": "n=2; x1, x2", "pivot": 1, "appended": 5},
]


@pytest.mark.parametrize("case", lem_errors, ids=[c["why"] for c in lem_errors])
def test_lem_lift_rejects(case):
    ideal = parse_ideal(case["ideal"])
    part = sdepth_exact(ideal).witness
    with pytest.raises(ConstructionError):
        lem_lift(ideal, part, case["pivot"], case["appended"])


def test_lem_lift_rejects_foreign_or_broken_partition():
    ideal, part = _part("n=2; x1, x2", [(1, 3), (2, 2)])
    with pytest.raises(ConstructionError):
        lem_lift(parse_ideal("n=2; x1*x2"), part, 1)
    _, broken = _part("n=2; x1, x2", [(1, 3)])
    with pytest.raises(ConstructionError):
        lem_lift(ideal, broken, 1)


def test_rem_lift_singletons():
    ideal, part = _part("n=2; x1, x2", [(1, 1), (2, 2), (3, 3)])
    out = rem_lift(ideal, part, 1, pivot=2)
    assert _pairs(out) == {(1, 5), (3, 3), (6, 6), (7, 7)}
    assert is_upper_discrete(out, 2)


def test_rem_lift_principal():
    ideal, part = _part("n=2; x1*x2", [(3, 3)])
    out = rem_lift(ideal, part, 2, pivot=2)
    assert _pairs(out) == {(7, 7)}
    assert is_upper_discrete(out, 3)


def test_rem_lift_preconditions():
    ideal, part = _part("n=3; x1*x2, x2*x3, x1*x3", [(3, 3), (5, 5), (6, 6), (7, 7)])
    with pytest.raises(ConstructionError):
        rem_lift(ideal, part, 2, pivot=1)
    ideal, part = _part("n=2; x1, x2", [(1, 3), (2, 2)])
    with pytest.raises(ConstructionError):
        rem_lift(ideal, part, 1, pivot=1)


def test_replay_lem_matches_single_lifts():
    ideal, part = _part("n=2; x1, x2", [(1, 3), (2, 2)])
    plan = [LiftInstruction("lem", 3, (0,), pivot=1), LiftInstruction("lem", 4, (1,), pivot=2)]
    out = replay_lem(part, plan)
    assert out.poset.ideal == parse_ideal("n=4; x1*x3, x2*x4")
    assert partition_sdepth(out) == 3
    with pytest.raises(ConstructionError):
        replay_lem(part, [LiftInstruction("step0", 3, (0, 1))])


def test_lift_instruction_validation():
    with pytest.raises(ValueError):
        LiftInstruction("twist", 3, (0,))
    with pytest.raises(ValueError):
        LiftInstruction("lem", 3, (0,))
    with pytest.raises(ValueError):
        LiftInstruction("rem", 3, (0,), pivot=1)
    assert LiftInstruction("rem", 3, (0,), pivot=1, degree_k=2).to_dict() == {
        "kind": "rem",
        "appended_variable": 3,
        "target_generators": [0],
        "pivot": 1,
        "degree_k": 2,
    }


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_maximal_ideal_partition(m):
    part = maximal_ideal_partition(m)
    assert partition_sdepth(part) == (m + 1) // 2
    assert part.poset.ideal.m == m


def test_plan_ci():
    plan, var_map = plan_ci(parse_ideal("n=5; x1*x2, x3*x4"))
    assert [(i.kind, i.appended_variable, i.target_generators, i.pivot) for i in plan] == [
        ("lem", 3, (0,), 1),
        ("lem", 4, (1,), 2),
    ]
    assert var_map == {1: 1, 2: 3, 3: 2, 4: 4}


ci_cases = [
    {"ideal": "n=5; x1*x2, x3*x4", "sdepth": 4},
    {"ideal": "n=4; x1, x2, x3, x4", "sdepth": 2},
    {"ideal": "n=6; x1*x4, x2*x5*x6, x3", "sdepth": 5},
    {"ideal": "n=3; x2", "sdepth": 3},
]


@pytest.mark.parametrize("case", ci_cases, ids=[c["ideal"] for c in ci_cases])
def test_ci_partition(case):
    ideal = parse_ideal(case["ideal"])
    out = ci_partition(ideal)
    assert out.poset.ideal == ideal
    assert partition_sdepth(out) == case["sdepth"]


def test_ci_partition_rejects_overlapping_supports():
    with pytest.raises(ConstructionError):
        ci_partition(parse_ideal("n=3; x1*x2, x2*x3"))
    with pytest.raises(ConstructionError):
        ci_partition(parse_ideal("n=2; x1^2, x2"))


def test_embed_partition_relabels_and_frees():
    _, part = _part("n=2; x1, x2", [(1, 3), (2, 2)])
    target = build_poset(parse_ideal("n=3; x1, x3"))
    out = embed_partition(part, target, {1: 1, 2: 3}, free=0b010)
    assert _pairs(out) == {(0b001, 0b111), (0b100, 0b110)}
    with pytest.raises(ConstructionError):
        embed_partition(part, target, {1: 1, 2: 3})
