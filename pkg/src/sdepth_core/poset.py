"""
The characteristic poset P_I^g of a monomial ideal, interval partitions of it,
and the checks every witness has to pass.

Elements are stored as mixed-radix codes: coordinate j has radix g_j + 1 and
x_1 is the least significant digit. For g = (1,...,1) the code of a squarefree
exponent is exactly its bitmask, so squarefree posets and the bit-level
constructions share one encoding.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from sdepth_core import config
from sdepth_core.errors import PartitionError, PosetError
from sdepth_core.ideal import (
    Exponent,
    MonomialIdeal,
    divides,
    exponent_from_mask,
    mask_from_exponent,
    popcount,
)


# -------------------------------------------------------------------
# Intervals
# -------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """[lo, hi]; rule is a provenance label and never affects semantics."""

    lo: Exponent
    hi: Exponent
    rule: str = ""

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise PartitionError(f"Interval endpoints differ in length: {self.lo} vs {self.hi}")
        if not divides(self.lo, self.hi):
            raise PartitionError(f"Interval lo {self.lo} is not below hi {self.hi}")

    @classmethod
    def from_masks(cls, lo: int, hi: int, n: int, rule: str = "") -> "Interval":
        return cls(exponent_from_mask(lo, n), exponent_from_mask(hi, n), rule)

    @property
    def lo_mask(self) -> int:
        return mask_from_exponent(self.lo)

    @property
    def hi_mask(self) -> int:
        return mask_from_exponent(self.hi)

    def contains(self, c: Sequence[int]) -> bool:
        return divides(self.lo, c) and divides(c, self.hi)


def interval_cardinality(interval: Interval) -> int:
    return prod(h - l + 1 for l, h in zip(interval.lo, interval.hi))


def intervals_intersect(a: Interval, b: Interval) -> bool:
    """Two box intervals meet iff max(lo1, lo2) <= min(hi1, hi2) componentwise."""
    return all(max(x, y) <= min(u, v) for x, y, u, v in zip(a.lo, b.lo, a.hi, b.hi))


def rho(d: Sequence[int], g: Sequence[int]) -> int:
    """Number of coordinates where d saturates g; popcount(d) when g = (1,...,1)."""
    return sum(1 for x, y in zip(d, g) if x == y)


# -------------------------------------------------------------------
# The poset
# -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CharacteristicPoset:
    ideal: MonomialIdeal
    g: Exponent
    elements: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.ideal.n

    @property
    def squarefree(self) -> bool:
        return all(x == 1 for x in self.g)

    @cached_property
    def strides(self) -> Tuple[int, ...]:
        out = []
        step = 1
        for x in self.g:
            out.append(step)
            step *= x + 1
        return tuple(out)

    @cached_property
    def index(self) -> Dict[int, int]:
        return {code: i for i, code in enumerate(self.elements)}

    def encode(self, c: Sequence[int]) -> int:
        return sum(x * s for x, s in zip(c, self.strides))

    def decode(self, code: int) -> Exponent:
        out = []
        for x in self.g:
            out.append(code % (x + 1))
            code //= x + 1
        return tuple(out)

    def __contains__(self, c: Sequence[int]) -> bool:
        if len(c) != self.n or not divides(c, self.g) or any(x < 0 for x in c):
            return False
        return self.encode(c) in self.index

    def __len__(self) -> int:
        return len(self.elements)

    def exponents(self) -> List[Exponent]:
        return [self.decode(code) for code in self.elements]


def build_poset(
    ideal: MonomialIdeal,
    g: Optional[Sequence[int]] = None,
    cap: Optional[int] = None,
) -> CharacteristicPoset:
    """
    Enumerate P_I^g = {c <= g : some generator divides x^c}.

    Default g is (1,...,1) for squarefree ideals and the lcm exponent otherwise.
    """
    cap = config.SDEPTH_ENUMERATION_CAP if cap is None else cap
    n = ideal.n
    if g is None:
        g = (1,) * n if ideal.squarefree else ideal.lcm_exponent
    g = tuple(int(x) for x in g)
    if len(g) != n:
        raise PosetError(f"Bounding vector {g} has length {len(g)}, expected n={n}")
    if not divides(ideal.lcm_exponent, g):
        raise PosetError(f"Bounding vector {g} is below the lcm exponent {ideal.lcm_exponent}")

    radices = [x + 1 for x in g]
    total = prod(radices)
    if total > cap:
        raise PosetError(f"Box [0, g] has {total} points, above the enumeration cap {cap}")

    codes = np.arange(total, dtype=np.int64)
    strides = [prod(radices[:j]) for j in range(n)]
    squarefree_box = all(r == 2 for r in radices)
    # one coordinate test at a time; no (total, n) digit matrix
    member = np.zeros(total, dtype=bool)
    for a in ideal.generators:
        if squarefree_box:
            s = sum(1 << j for j, x in enumerate(a) if x)
            member |= (codes & s) == s
            continue
        hit = np.ones(total, dtype=bool)
        for j, x in enumerate(a):
            if x:
                hit &= (codes // strides[j]) % radices[j] >= x
        member |= hit

    elements = tuple(codes[member].tolist())
    logging.debug(f"[Poset] {ideal} with g={g}: {len(elements)} of {total} box points")
    return CharacteristicPoset(ideal=ideal, g=g, elements=elements)


def is_up_set(poset: CharacteristicPoset) -> bool:
    """Exhaustive check that c in P and c <= w <= g imply w in P."""
    for code in poset.elements:
        c = poset.decode(code)
        for j in range(poset.n):
            if c[j] < poset.g[j] and code + poset.strides[j] not in poset.index:
                return False
    return True


def inclusion_exclusion_count(ideal: MonomialIdeal) -> int:
    """|P_I| for a squarefree ideal, counted over unions of generator supports."""
    if not ideal.squarefree:
        raise PosetError("Inclusion-exclusion count is defined for squarefree ideals")
    total = 0
    supports = ideal.supports
    for size in range(1, len(supports) + 1):
        for chosen in combinations(supports, size):
            union = 0
            for s in chosen:
                union |= s
            total += (-1) ** (size + 1) * 2 ** (ideal.n - popcount(union))
    return total


# -------------------------------------------------------------------
# Partitions
# -------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """kind is one of "overlap", "gap", "out-of-poset"."""

    kind: str
    witness: Exponent

    def to_dict(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness)}


def _join(a: Sequence[int], b: Sequence[int]) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def verify_partition(poset: CharacteristicPoset, part: "IntervalPartition") -> Optional[Violation]:
    """
    None when the intervals partition the poset exactly, otherwise the first
    Violation found (endpoints first, then pairwise overlaps, then coverage).
    """
    intervals = part.intervals
    for iv in intervals:
        if len(iv.lo) != poset.n:
            return Violation("out-of-poset", iv.lo)
        if not divides(iv.hi, poset.g):
            return Violation("out-of-poset", iv.hi)
        if iv.lo not in poset:
            return Violation("out-of-poset", iv.lo)

    if poset.squarefree:
        masks = [(iv.lo_mask, iv.hi_mask) for iv in intervals]
        for i in range(len(masks)):
            lo1, hi1 = masks[i]
            for j in range(i + 1, len(masks)):
                lo2, hi2 = masks[j]
                join = lo1 | lo2
                if join & ~(hi1 & hi2) == 0:
                    return Violation("overlap", exponent_from_mask(join, poset.n))
    else:
        for i in range(len(intervals)):
            for j in range(i + 1, len(intervals)):
                if intervals_intersect(intervals[i], intervals[j]):
                    return Violation("overlap", _join(intervals[i].lo, intervals[j].lo))

    covered = sum(interval_cardinality(iv) for iv in intervals)
    if covered == len(poset):
        return None
    for c in poset.exponents():
        if not any(iv.contains(c) for iv in intervals):
            return Violation("gap", c)
    # disjoint intervals inside P cannot cover more than P
    raise AssertionError(f"Interval cardinalities sum to {covered} for a poset of {len(poset)}")


@dataclass(frozen=True, eq=False)
class IntervalPartition:
    poset: CharacteristicPoset
    intervals: Tuple[Interval, ...]

    @classmethod
    def from_masks(
        cls, poset: CharacteristicPoset, triples: Sequence[Tuple[int, int, str]]
    ) -> "IntervalPartition":
        n = poset.n
        return cls(poset, tuple(Interval.from_masks(lo, hi, n, rule) for lo, hi, rule in triples))

    @cached_property
    def violation(self) -> Optional[Violation]:
        return verify_partition(self.poset, self)

    @property
    def is_verified(self) -> bool:
        return self.violation is None

    def ensure_verified(self, context: str = "partition") -> "IntervalPartition":
        if self.violation is not None:
            v = self.violation
            raise PartitionError(f"{context} is not a partition: {v.kind} at {v.witness}", v)
        return self

    def masks(self) -> List[Tuple[int, int, str]]:
        """(lo, hi, rule) bitmask triples; squarefree posets only."""
        if not self.poset.squarefree:
            raise PartitionError("Bitmask view needs a squarefree poset")
        return [(iv.lo_mask, iv.hi_mask, iv.rule) for iv in self.intervals]

    def __len__(self) -> int:
        return len(self.intervals)


def partition_sdepth(part: IntervalPartition) -> int:
    """min over intervals of rho(hi, g); the partition must verify."""
    part.ensure_verified()
    if not part.intervals:
        raise PartitionError("Empty partition has no Stanley depth")
    return min(rho(iv.hi, part.poset.g) for iv in part.intervals)


def is_upper_discrete(part: IntervalPartition, k: int) -> bool:
    """Every |hi| >= k, and lo == hi whenever |hi| > k."""
    if not part.poset.squarefree:
        raise PartitionError("Upper-discreteness is defined for squarefree posets only")
    part.ensure_verified()
    for iv in part.intervals:
        size = sum(iv.hi)
        if size < k:
            return False
        if size > k and iv.lo != iv.hi:
            return False
    return True
