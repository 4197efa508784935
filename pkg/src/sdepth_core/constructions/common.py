"""
Bookkeeping shared by the constructions: lift records, the verified-output
gate every construction goes through, and relabelling a partition into a
larger ring.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from sdepth_core.errors import ConstructionError
from sdepth_core.ideal import permute_mask
from sdepth_core.poset import CharacteristicPoset, IntervalPartition


LIFT_KINDS = ("lem", "rem", "step0", "step1", "step2", "step3")


@dataclass(frozen=True)
class LiftInstruction:
    """
    One variable-appending move.

    target_generators are role indices (0-based) of the generators that gain
    the appended variable; pivot is the variable a lem/rem lift keys on.
    """

    kind: str
    appended_variable: int
    target_generators: Tuple[int, ...]
    pivot: Optional[int] = None
    degree_k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in LIFT_KINDS:
            raise ValueError(f"Unknown lift kind '{self.kind}'")
        if self.kind in ("lem", "rem") and self.pivot is None:
            raise ValueError(f"A {self.kind} lift needs a pivot variable")
        if self.kind == "rem" and self.degree_k is None:
            raise ValueError("A rem lift needs degree_k")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "appended_variable": self.appended_variable,
            "target_generators": list(self.target_generators),
            "pivot": self.pivot,
            "degree_k": self.degree_k,
        }


def require_verified(part: IntervalPartition, context: str) -> None:
    v = part.violation
    if v is not None:
        raise ConstructionError(f"{context}: input is not a partition ({v.kind} at {v.witness})")


def verified_partition(
    poset: CharacteristicPoset,
    triples: Iterable[Tuple[int, int, str]],
    context: str,
) -> IntervalPartition:
    """Build from bitmask triples and refuse to return anything that does not verify."""
    part = IntervalPartition.from_masks(poset, list(triples))
    v = part.violation
    if v is not None:
        logging.error(f"[Construction] {context} produced a {v.kind} at {v.witness} on {poset.ideal}")
        raise ConstructionError(f"{context} output is not a partition: {v.kind} at {v.witness}")
    return part


def embed_partition(
    part: IntervalPartition,
    target: CharacteristicPoset,
    var_map: Dict[int, int],
    fixed: int = 0,
    free: int = 0,
    context: str = "embedding",
) -> IntervalPartition:
    """
    Relabel variables by var_map, then add `fixed` to both ends of every
    interval and `free` to the hi only.
    """
    triples = []
    for lo, hi, rule in part.masks():
        lo2 = permute_mask(lo, var_map) | fixed
        hi2 = permute_mask(hi, var_map) | fixed | free
        triples.append((lo2, hi2, rule))
    return verified_partition(target, triples, context)
