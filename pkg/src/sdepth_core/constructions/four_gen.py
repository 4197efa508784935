"""
Ideals with at most four squarefree generators: split on the last variable,
A_0 = elements without x_n and A_1 = elements with it, and recurse.
"""
from dataclasses import dataclass
from typing import Optional

from sdepth_core.constructions.common import embed_partition, require_verified, verified_partition
from sdepth_core.constructions.three_gen import three_gen_partition
from sdepth_core.errors import ConstructionError
from sdepth_core.ideal import MonomialIdeal, bit, full_mask, restrict_to_support
from sdepth_core.poset import IntervalPartition, build_poset, partition_sdepth


@dataclass(frozen=True)
class SplitIdeals:
    """i0 is None when every generator involves x_n (the zero ideal)."""

    i0: Optional[MonomialIdeal]
    i1: MonomialIdeal


def split_ideal(ideal: MonomialIdeal) -> SplitIdeals:
    if not ideal.squarefree:
        raise ConstructionError(f"split_ideal needs a squarefree ideal, got {ideal}")
    n = ideal.n
    if n == 0 or ideal.support_mask != full_mask(n):
        raise ConstructionError(f"Every variable of {ideal} must occur in a generator before splitting")
    top = bit(n)
    rest = full_mask(n - 1)
    without = [s for s in ideal.supports if not s & top]
    i0 = MonomialIdeal.from_supports(n - 1, without) if without else None
    i1 = MonomialIdeal.from_supports(n - 1, [s & rest for s in ideal.supports], allow_unit=True)
    return SplitIdeals(i0, i1)


def compose_split(
    ideal: MonomialIdeal,
    part0: Optional[IntervalPartition],
    part1: IntervalPartition,
) -> IntervalPartition:
    """part0 covers the elements without x_n, part1 (shifted by x_n) the ones with it."""
    split = split_ideal(ideal)
    if (part0 is None) != (split.i0 is None):
        raise ConstructionError("part0 must be given exactly when some generator avoids x_n")
    if part0 is not None:
        if part0.poset.ideal != split.i0:
            raise ConstructionError("part0 is not a partition of the x_n-free part")
        require_verified(part0, "compose_split")
    if part1.poset.ideal != split.i1:
        raise ConstructionError("part1 is not a partition of the x_n-divided part")
    require_verified(part1, "compose_split")

    top = bit(ideal.n)
    triples = list(part0.masks()) if part0 is not None else []
    triples += [(c | top, d | top, rule) for c, d, rule in part1.masks()]
    return verified_partition(build_poset(ideal), triples, "compose_split")


def _on_support(ideal: MonomialIdeal) -> IntervalPartition:
    reduced, var_map = restrict_to_support(ideal)
    free = full_mask(ideal.n) & ~ideal.support_mask
    n = reduced.n
    poset = build_poset(reduced)
    if reduced.is_unit:
        part = verified_partition(poset, [(0, full_mask(n), "unit")], "four_gen_partition")
    elif reduced.m == 1:
        part = verified_partition(poset, [(reduced.supports[0], full_mask(n), "principal")], "four_gen_partition")
    elif reduced.m == 3:
        part = three_gen_partition(reduced)
    else:
        split = split_ideal(reduced)
        part0 = _on_support(split.i0) if split.i0 is not None else None
        part1 = _on_support(split.i1)
        part = compose_split(reduced, part0, part1)
    if var_map == {j: j for j in range(1, ideal.n + 1)}:
        return part
    return embed_partition(part, build_poset(ideal), var_map, free=free, context="four_gen_partition")


def four_gen_partition(ideal: MonomialIdeal) -> IntervalPartition:
    """Partition with min rho >= n - 2, or >= n - 1 for at most three generators."""
    if not ideal.squarefree:
        raise ConstructionError(f"four_gen_partition needs a squarefree ideal, got {ideal}")
    if ideal.m > 4:
        raise ConstructionError(f"four_gen_partition handles at most 4 generators, {ideal} has {ideal.m}")
    out = _on_support(ideal)
    bound = ideal.n - (2 if ideal.m == 4 else 1)
    if partition_sdepth(out) < bound:
        raise ConstructionError(f"four_gen_partition reached {partition_sdepth(out)} < {bound}")
    return out
