"""
Partitions of 3-generated squarefree ideals with min rho >= n - 1.

The construction works in canonical labels. The core variables (each in
exactly two generators) are x1..x_core and are appended one at a time to an
empty triple. Then every generator that owns a private variable gets it
appended, in role order. Further private variables come back through lem
lifts, and the result is relabelled onto the input ring with the variables
of all three generators (fixed) and of none (free) restored.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from sdepth_core.constructions.common import (
    LiftInstruction,
    embed_partition,
    require_verified,
    verified_partition,
)
from sdepth_core.constructions.lifts import lem_lift
from sdepth_core.errors import ConstructionError
from sdepth_core.ideal import (
    MonomialIdeal,
    bit,
    classify_variables,
    full_mask,
    mask_members,
    popcount,
)
from sdepth_core.poset import (
    CharacteristicPoset,
    IntervalPartition,
    build_poset,
    is_upper_discrete,
    partition_sdepth,
)


@dataclass(frozen=True)
class GeneratorTriple:
    """
    Three squarefree generators by role, as bitmasks over x1..xn. Repeated and
    empty supports are allowed; they show up midway through the induction.
    """

    n: int
    supports: Tuple[int, int, int]

    def __post_init__(self):
        if len(self.supports) != 3:
            raise ConstructionError(f"A generator triple needs 3 supports, got {len(self.supports)}")
        if any(s >> self.n for s in self.supports):
            raise ConstructionError(f"Support outside x1..x{self.n}")

    @classmethod
    def empty(cls) -> "GeneratorTriple":
        return cls(0, (0, 0, 0))

    def extend(self, roles: Tuple[int, ...]) -> "GeneratorTriple":
        """Append x_{n+1} to the generators in `roles`."""
        a = bit(self.n + 1)
        return GeneratorTriple(
            self.n + 1, tuple(s | a if r in roles else s for r, s in enumerate(self.supports))
        )

    @cached_property
    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal.from_supports(self.n, self.supports, allow_unit=True)

    @cached_property
    def poset(self) -> CharacteristicPoset:
        return build_poset(self.ideal)

    def roles_of(self, variable: int) -> Tuple[int, ...]:
        return tuple(r for r, s in enumerate(self.supports) if s & bit(variable))


def initial_partition() -> IntervalPartition:
    """[0, 0] on the single point of the empty ring, upper-discrete of degree -1."""
    return verified_partition(GeneratorTriple.empty().poset, [(0, 0, "base")], "initial_partition")


def _check_input(triple: GeneratorTriple, part: IntervalPartition, degree: int, context: str) -> None:
    if part.poset.ideal != triple.ideal:
        raise ConstructionError(f"{context}: partition belongs to a different ideal")
    require_verified(part, context)
    if not is_upper_discrete(part, degree):
        raise ConstructionError(f"{context}: input is not upper-discrete of degree {degree}")


def step0_extend(
    triple: GeneratorTriple,
    part: IntervalPartition,
    pair: Tuple[int, int],
    appended: Optional[int] = None,
) -> Tuple[GeneratorTriple, IntervalPartition]:
    """
    Append x_{n+1} to the two generators in `pair` of an all-type-2 triple.

    part must be upper-discrete of degree n - 1; the result is upper-discrete
    of degree n for the extended triple.
    """
    n = triple.n
    appended = n + 1 if appended is None else appended
    if appended != n + 1:
        raise ConstructionError(f"Step 0 appends x{n + 1}, got x{appended}")
    if len(set(pair)) != 2 or not set(pair) <= {0, 1, 2}:
        raise ConstructionError(f"Step 0 needs two distinct roles, got {pair}")
    for j in range(1, n + 1):
        if len(triple.roles_of(j)) != 2:
            raise ConstructionError(f"Step 0 needs every variable of type 2, x{j} is not")
    _check_input(triple, part, n - 1, "step0_extend")

    (untouched,) = {0, 1, 2} - set(pair)
    v_t = triple.supports[untouched]
    full = full_mask(n)
    a = bit(appended)
    triples = []
    for c, d, _ in part.masks():
        if d == full:
            triples.append((c, c, "step0:B3"))
            triples.append((c | a, c | a, "step0:B4"))
        elif v_t & ~c == 0:
            triples.append((c, d | a, "step0:B1"))
        else:
            triples.append((c | a, d | a, "step0:B2"))
    extended = triple.extend(tuple(pair))
    out = verified_partition(extended.poset, triples, "step0_extend")
    if not is_upper_discrete(out, n):
        raise ConstructionError(f"step0_extend output is not upper-discrete of degree {n}")
    return extended, out


def step_private_extend(
    triple: GeneratorTriple,
    part: IntervalPartition,
    step: int,
    appended: Optional[int] = None,
) -> Tuple[GeneratorTriple, IntervalPartition]:
    """
    Append a private variable to the generator in role step - 1.

    triple is the Step 0 core on x1..x_core followed by step - 1 private
    variables, and part is upper-discrete of degree core - 2 + step.
    """
    if step not in (1, 2, 3):
        raise ConstructionError(f"Private steps are 1, 2, 3; got {step}")
    core = triple.n - (step - 1)
    if core < 0:
        raise ConstructionError(f"Step {step} on a triple with only {triple.n} variables")
    appended = triple.n + 1 if appended is None else appended
    if appended != triple.n + 1:
        raise ConstructionError(f"Step {step} appends x{triple.n + 1}, got x{appended}")
    for j in range(1, core + 1):
        if len(triple.roles_of(j)) != 2:
            raise ConstructionError(f"Core variable x{j} is not of type 2")
    for r in range(step - 1):
        if triple.roles_of(core + r + 1) != (r,):
            raise ConstructionError(f"x{core + r + 1} must be private to role {r} before step {step}")
    degree = core - 2 + step
    _check_input(triple, part, degree, f"step{step}")

    role = step - 1
    F = full_mask(core)
    v = triple.supports[role] & F
    a = bit(appended)
    label = f"step{step}"
    triples = []
    if step == 3:
        a1, a2 = bit(core + 1), bit(core + 2)
        emitted = False
        for c, d, _ in part.masks():
            if F & ~d == 0:
                if not emitted:
                    triples += [
                        (F | a1, F | a1 | a2, f"{label}:B3"),
                        (F | a2, F | a2 | a, f"{label}:B4"),
                        (F | a, F | a1 | a, f"{label}:B5"),
                        (F | a1 | a2 | a, F | a1 | a2 | a, f"{label}:B6"),
                    ]
                    emitted = True
            elif v & ~c == 0:
                triples.append((c | a, d | a, f"{label}:B1"))
            else:
                triples.append((c, d | a, f"{label}:B2"))
    else:
        for c, d, _ in part.masks():
            if step == 1 and d == F:
                triples.append((F, F, f"{label}:B3"))
                triples.append((F | a, F | a, f"{label}:B4"))
            elif step == 2 and popcount(d) == core + 1:
                triples.append((F, d, f"{label}:B3"))
                triples.append((d | a, d | a, f"{label}:B4"))
            elif v & ~c == 0:
                triples.append((c | a, d | a, f"{label}:B1"))
            else:
                triples.append((c, d | a, f"{label}:B2"))

    extended = triple.extend((role,))
    out = verified_partition(extended.poset, triples, f"step_private_extend({step})")
    if not is_upper_discrete(out, degree + 1):
        raise ConstructionError(f"Step {step} output is not upper-discrete of degree {degree + 1}")
    return extended, out


# -------------------------------------------------------------------
# Full pipeline
# -------------------------------------------------------------------

@dataclass
class ThreeGenPlan:
    """
    roles: original generator index (canonical order) for roles 0, 1, 2.
    var_map: canonical variable -> original variable.
    fixed: variables in all three generators; free: variables in none.
    """

    roles: Tuple[int, int, int]
    core_size: int
    var_map: Dict[int, int]
    fixed: int
    free: int
    instructions: List[LiftInstruction] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "roles": list(self.roles),
            "core_size": self.core_size,
            "var_map": {str(k): v for k, v in self.var_map.items()},
            "fixed": mask_members(self.fixed),
            "free": mask_members(self.free),
            "instructions": [i.to_dict() for i in self.instructions],
        }


def plan_three_gen(ideal: MonomialIdeal) -> ThreeGenPlan:
    """Canonical labelling and the sequence of lifts three_gen_partition replays."""
    if not ideal.squarefree or ideal.m != 3:
        raise ConstructionError(f"three_gen_partition needs 3 squarefree generators, got {ideal}")

    types = classify_variables(ideal)
    fixed = 0
    free = 0
    core_vars: List[int] = []
    private: Dict[int, List[int]] = {0: [], 1: [], 2: []}
    for t in types:
        if t.type_ == 0:
            free |= bit(t.variable)
        elif t.type_ == 3:
            fixed |= bit(t.variable)
        elif t.type_ == 2:
            core_vars.append(t.variable)
        else:
            private[t.owner].append(t.variable)

    with_private = [g for g in range(3) if private[g]]
    roles = tuple(with_private + [g for g in range(3) if not private[g]])
    role_of = {g: r for r, g in enumerate(roles)}

    var_map: Dict[int, int] = {}
    instructions: List[LiftInstruction] = []
    for j, original in enumerate(core_vars, start=1):
        holders = tuple(sorted(role_of[i] for i, s in enumerate(ideal.supports) if s & bit(original)))
        instructions.append(LiftInstruction("step0", j, holders))
        var_map[j] = original
    core = len(core_vars)
    for r, g in enumerate(with_private):
        instructions.append(LiftInstruction(f"step{r + 1}", core + r + 1, (r,)))
        var_map[core + r + 1] = private[g][0]
    nxt = core + len(with_private) + 1
    for r, g in enumerate(with_private):
        for original in private[g][1:]:
            instructions.append(LiftInstruction("lem", nxt, (r,), pivot=core + r + 1))
            var_map[nxt] = original
            nxt += 1
    return ThreeGenPlan(roles, core, var_map, fixed, free, instructions)


def three_gen_partition(ideal: MonomialIdeal) -> IntervalPartition:
    """Partition of P_I with min rho >= n - 1 for a 3-generated squarefree I."""
    plan = plan_three_gen(ideal)
    triple = GeneratorTriple.empty()
    part = initial_partition()
    for instr in plan.instructions:
        if instr.kind == "step0":
            triple, part = step0_extend(triple, part, instr.target_generators, instr.appended_variable)
        elif instr.kind in ("step1", "step2", "step3"):
            step = int(instr.kind[-1])
            triple, part = step_private_extend(triple, part, step, instr.appended_variable)
        else:
            part = lem_lift(part.poset.ideal, part, instr.pivot, instr.appended_variable)
    logging.debug(f"[Construction] three-gen plan for {ideal}: {len(plan.instructions)} lifts")

    out = embed_partition(
        part, build_poset(ideal), plan.var_map, fixed=plan.fixed, free=plan.free,
        context="three_gen_partition",
    )
    if partition_sdepth(out) < ideal.n - 1:
        raise ConstructionError(f"three_gen_partition reached {partition_sdepth(out)} < {ideal.n - 1}")
    return out
