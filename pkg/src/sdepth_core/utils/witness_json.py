"""
Witness files:

    {"n": 3, "g": [1,1,1], "generators": [[1,1,0], ...],
     "intervals": [{"lo": [1,1,0], "hi": [1,1,1], "rule": "search"}, ...]}

"generators" is optional on read; when present it must match the ideal the
witness is checked against.
"""
import json
import logging
from pathlib import Path
from typing import Optional, Union

from sdepth_core.errors import PartitionError
from sdepth_core.ideal import MonomialIdeal, ideal_to_json
from sdepth_core.poset import CharacteristicPoset, Interval, IntervalPartition


def witness_to_json(part: IntervalPartition, include_generators: bool = True) -> dict:
    poset = part.poset
    data = {"n": poset.n, "g": list(poset.g)}
    if include_generators:
        data["generators"] = ideal_to_json(poset.ideal)["generators"]
    data["intervals"] = [
        {"lo": list(iv.lo), "hi": list(iv.hi), "rule": iv.rule} for iv in part.intervals
    ]
    return data


def dump_witness(part: IntervalPartition, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(witness_to_json(part), indent=2))
    logging.info(f"[Witness] wrote {len(part)} intervals to {path}")
    return path


def load_witness(path: Union[str, Path]) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise PartitionError(f"Witness file {path} is not valid JSON: {e}")
    if not isinstance(data, dict) or "intervals" not in data:
        raise PartitionError(f"Witness file {path} has no 'intervals'")
    return data


def ideal_from_witness(data: dict) -> Optional[MonomialIdeal]:
    if "generators" not in data:
        return None
    return MonomialIdeal.from_generators(data["n"], data["generators"], allow_unit=True)


def _exponent(value, n: int, where: str):
    if not isinstance(value, list) or len(value) != n or any(
        not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in value
    ):
        raise PartitionError(f"{where} must be a list of {n} non-negative integers, got {value!r}")
    return tuple(value)


def partition_from_witness(poset: CharacteristicPoset, data: dict) -> IntervalPartition:
    """
    Rebuild a partition of `poset` from witness JSON. Shape mismatches raise;
    whether the intervals actually partition the poset is left to verification.
    """
    n = data.get("n")
    if n != poset.n:
        raise PartitionError(f"Witness is for n={n}, the ideal has n={poset.n}")
    if "g" in data and tuple(data["g"]) != poset.g:
        raise PartitionError(f"Witness bounding vector {data['g']} differs from {list(poset.g)}")
    stated = ideal_from_witness(data)
    if stated is not None and stated.generators != poset.ideal.generators:
        raise PartitionError("Witness generators differ from the ideal it is checked against")
    intervals = []
    for i, raw in enumerate(data["intervals"]):
        if not isinstance(raw, dict) or "lo" not in raw or "hi" not in raw:
            raise PartitionError(f"Interval {i} needs 'lo' and 'hi'")
        lo = _exponent(raw["lo"], poset.n, f"Interval {i} lo")
        hi = _exponent(raw["hi"], poset.n, f"Interval {i} hi")
        intervals.append(Interval(lo, hi, str(raw.get("rule", ""))))
    return IntervalPartition(poset, tuple(intervals))
