"""
Self-test suites: the known Stanley depth values and construction guarantees,
re-checked end to end on fixed families and on seeded random instances.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional

from sdepth_core.constructions.four_gen import four_gen_partition
from sdepth_core.constructions.lifts import ci_partition, lem_lift, rem_lift
from sdepth_core.constructions.three_gen import three_gen_partition
from sdepth_core.constructions.upper_discrete import upper_discrete_refine
from sdepth_core.errors import StanleyDepthError
from sdepth_core.ideal import MonomialIdeal, bit, radical
from sdepth_core.poset import (
    IntervalPartition,
    build_poset,
    is_upper_discrete,
    partition_sdepth,
)
from sdepth_core.search import SearchConfig, brute_force_sdepth, sdepth_exact
from sdepth_core.utils.parse_ideal import parse_ideal
from sdepth_core.utils.random_ideals import (
    random_complete_intersection,
    random_partition,
    random_pivot_instance,
    random_squarefree_ideal,
)


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checked += 1
        if not ok:
            logging.error(f"[Selftest] {self.suite}: {message}")
            self.failures.append(message)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checked": self.checked, "failures": self.failures}


def _maximal(n: int) -> MonomialIdeal:
    return MonomialIdeal.from_supports(n, [bit(i) for i in range(1, n + 1)])


def _guard(result: SuiteResult, label: str, fn: Callable[[], None]) -> None:
    try:
        fn()
    except StanleyDepthError as e:
        result.check(False, f"{label}: {type(e).__name__}: {e}")


# -------------------------------------------------------------------
# Fixed families
# -------------------------------------------------------------------

def suite_maximal(cfg: SearchConfig, max_n: int = 6) -> SuiteResult:
    result = SuiteResult("maximal")
    for n in range(1, max_n + 1):
        def run(n=n):
            value = sdepth_exact(_maximal(n), cfg).value
            result.check(value == (n + 1) // 2, f"maximal ideal n={n}: sdepth {value}, expected {(n + 1) // 2}")
        _guard(result, f"maximal n={n}", run)
    return result


def _compositions(total: int) -> Iterable[List[int]]:
    for parts in range(1, total + 1):
        for cuts in combinations(range(1, total), parts - 1):
            bounds = (0,) + cuts + (total,)
            yield [b - a for a, b in zip(bounds, bounds[1:])]


def suite_complete_intersections(cfg: SearchConfig, max_n: int = 7) -> SuiteResult:
    """Consecutive support blocks from x1 for every composition of every s <= n."""
    result = SuiteResult("complete-intersections")
    for n in range(1, max_n + 1):
        for s in range(1, n + 1):
            for sizes in _compositions(s):
                supports = []
                start = 1
                for size in sizes:
                    supports.append(sum(bit(j) for j in range(start, start + size)))
                    start += size
                ideal = MonomialIdeal.from_supports(n, supports)
                expected = n - len(sizes) // 2

                def run(ideal=ideal, expected=expected):
                    value = sdepth_exact(ideal, cfg).value
                    built = partition_sdepth(ci_partition(ideal))
                    result.check(value == expected and built == expected,
                                 f"{ideal}: exact {value}, construction {built}, expected {expected}")
                _guard(result, str(ideal), run)
    return result


def suite_radical(cfg: SearchConfig) -> SuiteResult:
    result = SuiteResult("radical")

    def run():
        ideal = parse_ideal("n=3; x1^2, x2*x3^2")
        value = sdepth_exact(ideal, cfg).value
        rad = sdepth_exact(radical(ideal), cfg).value
        result.check(value == 2 and rad == 2, f"{ideal}: sdepth {value}, radical {rad}, expected 2")
    _guard(result, "radical", run)
    return result


# -------------------------------------------------------------------
# Seeded random families
# -------------------------------------------------------------------

def suite_three_gen(cfg: SearchConfig, count: int = 200, seed: int = 0, max_n: int = 7) -> SuiteResult:
    result = SuiteResult("three-gen")
    rng = random.Random(seed)
    for _ in range(count):
        ideal = random_squarefree_ideal(rng, rng.randint(3, max_n), 3)

        def run(ideal=ideal):
            built = partition_sdepth(three_gen_partition(ideal))
            value = sdepth_exact(ideal, cfg).value
            result.check(built >= ideal.n - 1 and value == ideal.n - 1,
                         f"{ideal}: construction {built}, exact {value}, expected {ideal.n - 1}")
        _guard(result, "three-gen", run)
    return result


def suite_four_gen(cfg: SearchConfig, count: int = 100, seed: int = 0, max_n: int = 6) -> SuiteResult:
    result = SuiteResult("four-gen")

    def fixed():
        ideal = parse_ideal("n=4; x1*x2*x3, x1*x2*x4, x1*x3*x4, x2*x3*x4")
        value = sdepth_exact(ideal, cfg).value
        built = partition_sdepth(four_gen_partition(ideal))
        result.check(value == 3 and built >= 2, f"{ideal}: exact {value}, construction {built}")
    _guard(result, "four-gen fixed", fixed)

    rng = random.Random(seed)
    for _ in range(count):
        ideal = random_squarefree_ideal(rng, rng.randint(4, max_n), 4)

        def run(ideal=ideal):
            built = partition_sdepth(four_gen_partition(ideal))
            value = sdepth_exact(ideal, cfg).value
            result.check(built >= ideal.n - 2 and value >= built,
                         f"{ideal}: construction {built}, exact {value}, bound {ideal.n - 2}")
        _guard(result, "four-gen", run)
    return result


def suite_upper_discrete(cfg: SearchConfig, count: int = 100, seed: int = 0) -> SuiteResult:
    result = SuiteResult("upper-discrete")

    def fixed():
        ideal = parse_ideal("n=3; x1*x2, x2*x3, x1*x3")
        poset = build_poset(ideal)
        accepted = IntervalPartition.from_masks(
            poset, [(0b011, 0b011, ""), (0b110, 0b110, ""), (0b101, 0b101, ""), (0b111, 0b111, "")]
        )
        rejected = IntervalPartition.from_masks(
            poset, [(0b011, 0b111, ""), (0b110, 0b110, ""), (0b101, 0b101, "")]
        )
        result.check(accepted.is_verified and is_upper_discrete(accepted, 2), "singleton partition rejected")
        result.check(rejected.is_verified and not is_upper_discrete(rejected, 2), "[12,123] partition accepted")
    _guard(result, "upper-discrete fixed", fixed)

    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 5)
        ideal = random_squarefree_ideal(rng, n, rng.randint(1, n))
        part = random_partition(rng, build_poset(ideal))

        def run(ideal=ideal, part=part):
            for k in range(partition_sdepth(part) + 1):
                refined = upper_discrete_refine(ideal, part, k)
                result.check(is_upper_discrete(refined, k), f"{ideal}: refinement at k={k} not upper-discrete")
        _guard(result, "upper-discrete", run)
    return result


def suite_oracle(cfg: SearchConfig, count: int = 500, seed: int = 0, max_elements: int = 18) -> SuiteResult:
    result = SuiteResult("oracle")
    rng = random.Random(seed)
    done = 0
    while done < count:
        n = rng.randint(1, 5)
        ideal = random_squarefree_ideal(rng, n, rng.randint(1, n))
        if len(build_poset(ideal)) > max_elements:
            continue
        done += 1

        def run(ideal=ideal):
            brute = brute_force_sdepth(ideal, max_elements)
            value = sdepth_exact(ideal, cfg).value
            result.check(brute == value, f"{ideal}: brute force {brute}, search {value}")
        _guard(result, "oracle", run)
    return result


def suite_lifts(cfg: SearchConfig, count: int = 100, seed: int = 0) -> SuiteResult:
    result = SuiteResult("lifts")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 5)
        ideal, pivot = random_pivot_instance(rng, n, rng.randint(1, n))
        part = random_partition(rng, build_poset(ideal))

        def run_lem(ideal=ideal, pivot=pivot, part=part):
            lifted = lem_lift(ideal, part, pivot)
            result.check(partition_sdepth(lifted) == partition_sdepth(part) + 1, f"{ideal}: lem lift off by more than one")
        _guard(result, "lem", run_lem)

    for _ in range(count):
        n = rng.randint(1, 5)
        ideal, pivot = random_complete_intersection(rng, n, rng.randint(1, n))
        part = random_partition(rng, build_poset(ideal))
        k = rng.randint(0, partition_sdepth(part))

        def run_rem(ideal=ideal, pivot=pivot, part=part, k=k):
            lifted = rem_lift(ideal, upper_discrete_refine(ideal, part, k), k, pivot)
            result.check(is_upper_discrete(lifted, k + 1), f"{ideal}: rem lift not upper-discrete of degree {k + 1}")
        _guard(result, "rem", run_rem)
    return result


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "maximal": suite_maximal,
    "complete-intersections": suite_complete_intersections,
    "radical": suite_radical,
    "three-gen": suite_three_gen,
    "four-gen": suite_four_gen,
    "upper-discrete": suite_upper_discrete,
    "oracle": suite_oracle,
    "lifts": suite_lifts,
}

SEEDED = {"three-gen", "four-gen", "upper-discrete", "oracle", "lifts"}


def run_selftest(
    cfg: SearchConfig,
    names: Optional[List[str]] = None,
    count: Optional[int] = None,
    seed: int = 0,
) -> List[SuiteResult]:
    """Run the named suites (all by default); count overrides every random suite's size."""
    names = names or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suites: {', '.join(unknown)}")
    results = []
    for name in names:
        kwargs = {}
        if name in SEEDED:
            kwargs["seed"] = seed
            if count is not None:
                kwargs["count"] = count
        res = SUITES[name](cfg, **kwargs)
        logging.info(f"[Selftest] {name}: {res.checked} checks, {len(res.failures)} failures")
        results.append(res)
    return results
