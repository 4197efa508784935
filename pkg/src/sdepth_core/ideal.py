"""
Monomials and monomial ideals.

Variables are 1-indexed x1..xn. A squarefree exponent is also handled as a
bitmask where bit i-1 stands for x_i, which is the encoding the poset and the
constructions work in.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sdepth_core.errors import IdealError


Exponent = Tuple[int, ...]

SUBSET_MAX_N = 63


# -------------------------------------------------------------------
# Bit helpers
# -------------------------------------------------------------------

def bit(i: int) -> int:
    """Mask of the single variable x_i."""
    return 1 << (i - 1)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_from_exponent(exponent: Sequence[int]) -> int:
    """Support of an exponent as a bitmask."""
    mask = 0
    for j, e in enumerate(exponent):
        if e:
            mask |= 1 << j
    return mask


def exponent_from_mask(mask: int, n: int) -> Exponent:
    return tuple((mask >> j) & 1 for j in range(n))


def mask_members(mask: int) -> List[int]:
    """Variable indices (1-based) set in mask, ascending."""
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j + 1)
        mask >>= 1
        j += 1
    return out


def permute_mask(mask: int, var_map: Dict[int, int]) -> int:
    """Relabel variable i as var_map[i] for every i in mask."""
    out = 0
    for i in mask_members(mask):
        out |= bit(var_map[i])
    return out


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """x^a | x^b, i.e. a <= b componentwise."""
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Subset:
    """A squarefree exponent vector, i.e. a subset of {1..n}, bit-packed."""

    bits: int
    n: int

    def __post_init__(self):
        if self.n > SUBSET_MAX_N:
            raise IdealError(f"Subset supports n <= {SUBSET_MAX_N}, got n={self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise IdealError(f"Subset bits {self.bits:#x} out of range for n={self.n}")

    @classmethod
    def from_members(cls, members: Iterable[int], n: int) -> "Subset":
        mask = 0
        for i in members:
            if not 1 <= i <= n:
                raise IdealError(f"Variable index {i} out of range 1..{n}")
            mask |= bit(i)
        return cls(mask, n)

    @classmethod
    def from_exponent(cls, exponent: Sequence[int]) -> "Subset":
        if any(e not in (0, 1) for e in exponent):
            raise IdealError(f"Exponent {tuple(exponent)} is not squarefree")
        return cls(mask_from_exponent(exponent), len(exponent))

    def to_exponent(self) -> Exponent:
        return exponent_from_mask(self.bits, self.n)

    @property
    def members(self) -> List[int]:
        return mask_members(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.n and bool(self.bits & bit(i))


# -------------------------------------------------------------------
# Ideals
# -------------------------------------------------------------------

def minimalize(gens: Iterable[Sequence[int]]) -> List[Exponent]:
    """
    Minimal elements of gens under divisibility, deduplicated.

    Canonical order is the lex term order with x1 > x2 > ... > xn, largest
    first, so the result does not depend on the input order.
    """
    unique = {tuple(int(e) for e in g) for g in gens}
    minimal = [
        g for g in unique
        if not any(h != g and divides(h, g) for h in unique)
    ]
    return sorted(minimal, reverse=True)


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: Tuple[Exponent, ...]
    squarefree: bool

    @classmethod
    def from_generators(
        cls,
        n: int,
        generators: Iterable[Sequence[int]],
        allow_unit: bool = False,
    ) -> "MonomialIdeal":
        """
        Validate and minimalize a generating set.

        The unit ideal (all-zero generator) is rejected unless allow_unit is set;
        only the upper-discrete machinery and the four-generator split need it.
        """
        if not isinstance(n, int) or n < 0:
            raise IdealError(f"Ambient variable count must be a non-negative integer, got {n!r}")
        gens = [tuple(g) for g in generators]
        if not gens:
            raise IdealError("Empty generator list")
        for g in gens:
            if len(g) != n:
                raise IdealError(f"Generator {g} has length {len(g)}, expected n={n}")
            if any((not isinstance(e, int)) or e < 0 for e in g):
                raise IdealError(f"Generator {g} has a negative or non-integer exponent")
        minimal = minimalize(gens)
        if any(not any(g) for g in minimal) and not allow_unit:
            raise IdealError("The unit ideal is not allowed here")
        squarefree = all(e <= 1 for g in minimal for e in g)
        return cls(n=n, generators=tuple(minimal), squarefree=squarefree)

    @classmethod
    def from_supports(cls, n: int, masks: Iterable[int], allow_unit: bool = False) -> "MonomialIdeal":
        return cls.from_generators(n, [exponent_from_mask(m, n) for m in masks], allow_unit=allow_unit)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    @cached_property
    def supports(self) -> Tuple[int, ...]:
        return tuple(mask_from_exponent(g) for g in self.generators)

    @cached_property
    def lcm_exponent(self) -> Exponent:
        return tuple(max(g[j] for g in self.generators) for j in range(self.n))

    @property
    def support_mask(self) -> int:
        """Variables occurring in some generator."""
        out = 0
        for s in self.supports:
            out |= s
        return out

    def __str__(self) -> str:
        return format_ideal(self)


def is_complete_intersection(ideal: MonomialIdeal) -> bool:
    """Generators form a regular sequence iff their supports are pairwise disjoint."""
    seen = 0
    for s in ideal.supports:
        if seen & s:
            return False
        seen |= s
    return True


def radical(ideal: MonomialIdeal) -> MonomialIdeal:
    clamped = [tuple(min(e, 1) for e in g) for g in ideal.generators]
    return MonomialIdeal.from_generators(ideal.n, clamped, allow_unit=ideal.is_unit)


@dataclass(frozen=True)
class VariableType:
    """
    type_: number of generators whose support contains the variable.
    owner: 0-based generator index when type_ == 1 ("type 1-(owner+1)").
    """

    variable: int
    type_: int
    owner: Optional[int] = None


def classify_variables(ideal: MonomialIdeal) -> List[VariableType]:
    """Type of each variable x_1..x_n; types only look at supports."""
    out = []
    for j in range(1, ideal.n + 1):
        holders = [i for i, s in enumerate(ideal.supports) if s & bit(j)]
        owner = holders[0] if len(holders) == 1 else None
        out.append(VariableType(variable=j, type_=len(holders), owner=owner))
    return out


def restrict_to_support(ideal: MonomialIdeal) -> Tuple[MonomialIdeal, Dict[int, int]]:
    """
    Drop the variables that occur in no generator.

    Returns the ideal on the remaining variables, relabelled 1..n' in ascending
    order, and the map reduced index -> original index.
    """
    used = [j for j in range(1, ideal.n + 1) if ideal.support_mask & bit(j)]
    var_map = {k + 1: j for k, j in enumerate(used)}
    gens = [tuple(g[j - 1] for j in used) for g in ideal.generators]
    reduced = MonomialIdeal.from_generators(len(used), gens, allow_unit=ideal.is_unit)
    return reduced, var_map


# -------------------------------------------------------------------
# Serialization
# -------------------------------------------------------------------

def format_monomial(exponent: Sequence[int]) -> str:
    terms = []
    for j, e in enumerate(exponent, start=1):
        if e == 1:
            terms.append(f"x{j}")
        elif e > 1:
            terms.append(f"x{j}^{e}")
    return "*".join(terms) if terms else "1"


def format_ideal(ideal: MonomialIdeal) -> str:
    """Compact text form, accepted back by parse_ideal (except the unit ideal)."""
    return f"n={ideal.n}; " + ", ".join(format_monomial(g) for g in ideal.generators)


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    return {"n": ideal.n, "generators": [list(g) for g in ideal.generators]}
