"""
Appending a variable to one generator raises the Stanley depth by exactly one.

lem_lift carries a partition of P_I over to P_I' where I' multiplies the only
generator divisible by x_pivot with the new variable x_appended. rem_lift is
the same move for upper-discrete partitions. ci_partition chains lem lifts on
top of an optimal partition of the maximal ideal.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sdepth_core import config
from sdepth_core.constructions.common import (
    LiftInstruction,
    embed_partition,
    require_verified,
    verified_partition,
)
from sdepth_core.errors import ConstructionError
from sdepth_core.ideal import (
    MonomialIdeal,
    bit,
    is_complete_intersection,
    mask_members,
    popcount,
)
from sdepth_core.poset import IntervalPartition, build_poset, is_upper_discrete, partition_sdepth
from sdepth_core.search import sdepth_exact


def _lifted_ideal(ideal: MonomialIdeal, pivot: int, appended: Optional[int]) -> Tuple[MonomialIdeal, int]:
    if not ideal.squarefree:
        raise ConstructionError("Lifts are defined for squarefree ideals")
    if not 1 <= pivot <= ideal.n:
        raise ConstructionError(f"Pivot x{pivot} out of range 1..{ideal.n}")
    appended = ideal.n + 1 if appended is None else appended
    if appended != ideal.n + 1:
        raise ConstructionError(f"Appended variable must be x{ideal.n + 1}, got x{appended}")
    holders = [s for s in ideal.supports if s & bit(pivot)]
    if len(holders) != 1:
        raise ConstructionError(
            f"x{pivot} must divide exactly one generator of {ideal}, it divides {len(holders)}"
        )
    supports = [s | bit(appended) if s & bit(pivot) else s for s in ideal.supports]
    return MonomialIdeal.from_supports(appended, supports), appended


def lem_lift(
    ideal: MonomialIdeal,
    part: IntervalPartition,
    pivot: int,
    appended: Optional[int] = None,
) -> IntervalPartition:
    """
    Parameters:
        ideal: squarefree ideal, x_pivot dividing exactly one generator
        part: verified partition of P_ideal
        pivot: the variable shared with the new one
        appended: index of the new variable, always n + 1
    Returns:
        a partition of the lifted ideal's poset with min rho one higher.
    """
    if part.poset.ideal != ideal:
        raise ConstructionError("Partition belongs to a different ideal")
    require_verified(part, "lem_lift")
    lifted, appended = _lifted_ideal(ideal, pivot, appended)
    p, a = bit(pivot), bit(appended)

    triples = []
    for c, d, _ in part.masks():
        if c & p:
            triples.append((c | a, d | a, "lem:B1"))
        else:
            triples.append((c, d | a, "lem:B2"))
            if not d & p:
                triples.append((c | p, d | p, "lem:B3"))
    out = verified_partition(build_poset(lifted), triples, "lem_lift")
    before, after = partition_sdepth(part), partition_sdepth(out)
    if after != before + 1:
        raise ConstructionError(f"lem_lift moved the Stanley depth from {before} to {after}")
    return out


def rem_lift(
    ideal: MonomialIdeal,
    part: IntervalPartition,
    k: int,
    pivot: int,
    appended: Optional[int] = None,
) -> IntervalPartition:
    """lem_lift for an upper-discrete partition of degree k; the output has degree k + 1."""
    if part.poset.ideal != ideal:
        raise ConstructionError("Partition belongs to a different ideal")
    require_verified(part, "rem_lift")
    if not is_complete_intersection(ideal):
        raise ConstructionError(f"rem_lift needs a complete intersection, got {ideal}")
    if not is_upper_discrete(part, k):
        raise ConstructionError(f"Input partition is not upper-discrete of degree {k}")
    lifted, appended = _lifted_ideal(ideal, pivot, appended)
    p, a = bit(pivot), bit(appended)

    triples = []
    for c, d, _ in part.masks():
        if c & p:
            triples.append((c | a, d | a, "rem:B1"))
        elif popcount(c) <= k:
            triples.append((c, d | a, "rem:B2"))
            if not d & p:
                triples.append((c | p, d | p, "rem:B3"))
        else:
            triples.append((c, c, "rem:B4"))
            triples.append((c | p, c | p, "rem:B5"))
            triples.append((c | a, c | a, "rem:B6"))
    out = verified_partition(build_poset(lifted), triples, "rem_lift")
    if not is_upper_discrete(out, k + 1):
        raise ConstructionError(f"rem_lift output is not upper-discrete of degree {k + 1}")
    return out


def replay_lem(part: IntervalPartition, plan: List[LiftInstruction]) -> IntervalPartition:
    """Apply lem instructions in order, each on the ideal produced by the previous one."""
    for instr in plan:
        if instr.kind != "lem":
            raise ConstructionError(f"replay_lem got a {instr.kind} instruction")
        part = lem_lift(part.poset.ideal, part, instr.pivot, instr.appended_variable)
    return part


# -------------------------------------------------------------------
# Complete intersections
# -------------------------------------------------------------------

def _solve_maximal(m: int) -> Tuple[Tuple[int, int, str], ...]:
    maximal = MonomialIdeal.from_supports(m, [bit(i) for i in range(1, m + 1)])
    result = sdepth_exact(maximal)
    expected = (m + 1) // 2
    if result.value != expected:
        raise ConstructionError(f"Maximal ideal in {m} variables has sdepth {result.value}, expected {expected}")
    logging.info(f"[Construction] base partition for the maximal ideal in {m} variables ({result.nodes} nodes)")
    return tuple(result.witness.masks())


@lru_cache(maxsize=None)
def _cached_maximal(m: int) -> Tuple[Tuple[int, int, str], ...]:
    return _solve_maximal(m)


def maximal_ideal_partition(m: int) -> IntervalPartition:
    """Optimal partition of (x1, ..., xm), min rho = ceil(m/2)."""
    if m < 1:
        raise ConstructionError(f"Maximal ideal needs m >= 1, got {m}")
    masks = _cached_maximal(m) if m <= config.SDEPTH_BASE_CACHE_MAX_M else _solve_maximal(m)
    maximal = MonomialIdeal.from_supports(m, [bit(i) for i in range(1, m + 1)])
    return verified_partition(build_poset(maximal), masks, "maximal_ideal_partition")


def plan_ci(ideal: MonomialIdeal) -> Tuple[List[LiftInstruction], Dict[int, int]]:
    """
    Lem lifts that grow (x1..xm) into the shape of a complete intersection,
    plus the map from those canonical labels to the ideal's variables.

    Generator i (canonical order) starts as x_{i+1}; its remaining support
    variables are appended one at a time in ascending order.
    """
    m = ideal.m
    var_map: Dict[int, int] = {}
    plan: List[LiftInstruction] = []
    nxt = m + 1
    for i, support in enumerate(ideal.supports):
        members = mask_members(support)
        var_map[i + 1] = members[0]
        for original in members[1:]:
            plan.append(LiftInstruction("lem", nxt, (i,), pivot=i + 1))
            var_map[nxt] = original
            nxt += 1
    return plan, var_map


def ci_partition(ideal: MonomialIdeal) -> IntervalPartition:
    """Partition of a squarefree complete intersection with min rho = n - floor(m/2)."""
    if not ideal.squarefree or ideal.is_unit:
        raise ConstructionError(f"ci_partition needs a proper squarefree ideal, got {ideal}")
    if not is_complete_intersection(ideal):
        raise ConstructionError(f"Generator supports of {ideal} are not pairwise disjoint")
    plan, var_map = plan_ci(ideal)
    part = replay_lem(maximal_ideal_partition(ideal.m), plan)
    unused = ((1 << ideal.n) - 1) & ~ideal.support_mask
    out = embed_partition(part, build_poset(ideal), var_map, free=unused, context="ci_partition")
    expected = ideal.n - ideal.m // 2
    if partition_sdepth(out) != expected:
        raise ConstructionError(f"ci_partition reached {partition_sdepth(out)}, expected {expected}")
    return out
