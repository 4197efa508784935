"""
Seeded random instances for the survey and the property checks.

Everything draws from one random.Random (MT19937) passed in by the caller, so
a seed fixes the whole sequence.
"""
import random
from typing import List, Tuple

from sdepth_core.errors import IdealError
from sdepth_core.ideal import MonomialIdeal, bit, full_mask, popcount
from sdepth_core.poset import CharacteristicPoset, IntervalPartition

MAX_TRIES = 10_000


def random_squarefree_ideal(rng: random.Random, n: int, m: int, max_tries: int = MAX_TRIES) -> MonomialIdeal:
    """
    m distinct nonempty subsets of {1..n}, redrawn until they are exactly m
    minimal generators and every variable occurs in one of them.
    """
    if n < 1 or m < 1 or m > (1 << n) - 1:
        raise IdealError(f"No {m}-generated squarefree ideal in {n} variables")
    full = full_mask(n)
    for _ in range(max_tries):
        masks = rng.sample(range(1, 1 << n), m)
        union = 0
        for s in masks:
            union |= s
        if union != full:
            continue
        ideal = MonomialIdeal.from_supports(n, masks)
        if ideal.m == m:
            return ideal
    raise IdealError(f"No {m}-generated ideal covering {n} variables after {max_tries} draws")


def random_ideals(seed: int, n: int, m: int, count: int) -> List[MonomialIdeal]:
    rng = random.Random(seed)
    return [random_squarefree_ideal(rng, n, m) for _ in range(count)]


def random_pivot_instance(rng: random.Random, n: int, m: int) -> Tuple[MonomialIdeal, int]:
    """A squarefree ideal in n variables plus a pivot that divides exactly one generator."""
    for _ in range(MAX_TRIES):
        ideal = random_squarefree_ideal(rng, n, m)
        pivots = [
            j for j in range(1, n + 1)
            if sum(1 for s in ideal.supports if s & bit(j)) == 1
        ]
        if pivots:
            return ideal, rng.choice(pivots)
    raise IdealError(f"No pivot found for {m} generators in {n} variables")


def random_complete_intersection(rng: random.Random, n: int, m: int) -> Tuple[MonomialIdeal, int]:
    """Pairwise disjoint supports over a random m-part split of a random subset, plus a pivot."""
    if not 1 <= m <= n:
        raise IdealError(f"No complete intersection with {m} generators in {n} variables")
    variables = list(range(1, n + 1))
    rng.shuffle(variables)
    used = rng.randint(m, n)
    cuts = sorted(rng.sample(range(1, used), m - 1))
    bounds = [0] + cuts + [used]
    supports = []
    for lo, hi in zip(bounds, bounds[1:]):
        mask = 0
        for j in variables[lo:hi]:
            mask |= bit(j)
        supports.append(mask)
    ideal = MonomialIdeal.from_supports(n, supports)
    pivot_support = rng.choice(ideal.supports)
    pivot = rng.choice([j for j in range(1, n + 1) if pivot_support & bit(j)])
    return ideal, pivot


def random_partition(rng: random.Random, poset: CharacteristicPoset) -> IntervalPartition:
    """
    Random interval partition of a squarefree poset: repeatedly take the
    smallest uncovered element and a random top whose interval is still free.
    Singletons are always free, so this never gets stuck.
    """
    if not poset.squarefree:
        raise IdealError("random_partition works on squarefree posets")
    order = sorted(poset.elements, key=lambda c: (popcount(c), c))
    members = set(poset.elements)
    covered = set()
    triples = []
    for c in order:
        if c in covered:
            continue
        options = []
        for d in order:
            if d & c != c:
                continue
            block = [e for e in members if e & c == c and e | d == d]
            if not any(e in covered for e in block):
                options.append((d, block))
        d, block = rng.choice(options)
        covered.update(block)
        triples.append((c, d, "random"))
    return IntervalPartition.from_masks(poset, triples)
