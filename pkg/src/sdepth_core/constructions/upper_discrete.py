"""
Upper-discrete partitions: the Boolean lattice ones and refinement of an
arbitrary partition into one of a given degree.
"""
from functools import lru_cache
from typing import List, Tuple

from sdepth_core.constructions.common import require_verified, verified_partition
from sdepth_core.errors import ConstructionError
from sdepth_core.ideal import MonomialIdeal, bit, full_mask, mask_members, popcount
from sdepth_core.poset import IntervalPartition, build_poset, is_upper_discrete, partition_sdepth


@lru_cache(maxsize=256)
def _boolean_masks(n: int, k: int) -> Tuple[Tuple[int, int], ...]:
    if n == 0:
        return ((0, 0),)
    if k == n:
        return ((0, full_mask(n)),)
    if k == 0:
        return tuple((s, s) for s in range(1 << n))
    top = bit(n)
    without = _boolean_masks(n - 1, k)
    with_top = tuple((c | top, d | top) for c, d in _boolean_masks(n - 1, k - 1))
    return without + with_top


def boolean_upper_discrete(n: int, k: int) -> IntervalPartition:
    """Upper-discrete partition of degree k of all subsets of {1..n}, empty set included."""
    if not 0 <= k <= n:
        raise ConstructionError(f"Degree k={k} out of range 0..{n}")
    unit = MonomialIdeal.from_generators(n, [(0,) * n], allow_unit=True)
    poset = build_poset(unit)
    return verified_partition(
        poset, [(c, d, "boolean") for c, d in _boolean_masks(n, k)], "boolean_upper_discrete"
    )


def _spread(mask: int, positions: List[int]) -> int:
    """Map bit i of mask onto variable positions[i]."""
    out = 0
    for i in mask_members(mask):
        out |= bit(positions[i - 1])
    return out


def upper_discrete_refine(ideal: MonomialIdeal, part: IntervalPartition, k: int) -> IntervalPartition:
    """
    Split every interval [c, d] along the Boolean lattice on d \\ c so the
    result is upper-discrete of degree k. Needs k <= partition_sdepth(part).
    """
    if part.poset.ideal != ideal:
        raise ConstructionError("Partition belongs to a different ideal")
    if not ideal.squarefree:
        raise ConstructionError("Upper-discrete refinement needs a squarefree ideal")
    require_verified(part, "upper_discrete_refine")
    if k < 0:
        raise ConstructionError(f"Degree k={k} must be non-negative")
    s = partition_sdepth(part)
    if k > s:
        raise ConstructionError(f"Degree k={k} exceeds the partition's Stanley depth {s}")

    triples = []
    for c, d, _ in part.masks():
        positions = mask_members(d & ~c)
        local_k = max(0, k - popcount(c))
        for lo, hi in _boolean_masks(len(positions), local_k):
            triples.append((c | _spread(lo, positions), c | _spread(hi, positions), "refine"))
    out = verified_partition(part.poset, triples, "upper_discrete_refine")
    if not is_upper_discrete(out, k):
        raise ConstructionError(f"Refinement is not upper-discrete of degree {k}")
    return out
