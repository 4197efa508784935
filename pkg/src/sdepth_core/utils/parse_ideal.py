import json
import logging
import re
from typing import List

from sdepth_core.errors import IdealError, IdealSyntaxError
from sdepth_core.ideal import MonomialIdeal


_HEADER_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*;(.*)$", re.DOTALL)
_TERM_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _parse_monomial(text: str, n: int) -> List[int]:
    exponent = [0] * n
    for raw in text.split("*"):
        term = raw.strip()
        match = _TERM_RE.match(term)
        if not match:
            raise IdealSyntaxError(f"Malformed term '{term}' in monomial '{text.strip()}'")
        index = int(match.group(1))
        power = int(match.group(2)) if match.group(2) is not None else 1
        if not 1 <= index <= n:
            raise IdealSyntaxError(f"Variable x{index} out of range 1..{n}")
        exponent[index - 1] += power
    return exponent


def _parse_compact(text: str) -> MonomialIdeal:
    match = _HEADER_RE.match(text)
    if not match:
        raise IdealSyntaxError(f"Expected 'n=<int>; <monomials>', got '{text.strip()}'")
    n = int(match.group(1))
    body = match.group(2).strip()
    if not body:
        raise IdealSyntaxError("Empty generator list")
    gens = [_parse_monomial(chunk, n) for chunk in body.split(",")]
    return MonomialIdeal.from_generators(n, gens)


def _parse_json(text: str) -> MonomialIdeal:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise IdealSyntaxError(f"Invalid ideal JSON: {e}")
    if not isinstance(data, dict) or "n" not in data or "generators" not in data:
        raise IdealSyntaxError("Ideal JSON must be an object with 'n' and 'generators'")
    n = data["n"]
    gens = data["generators"]
    if not isinstance(n, int) or not isinstance(gens, list):
        raise IdealSyntaxError("'n' must be an integer and 'generators' a list")
    if not gens:
        raise IdealSyntaxError("Empty generator list")
    for g in gens:
        if not isinstance(g, list) or any(not isinstance(e, int) or isinstance(e, bool) for e in g):
            raise IdealSyntaxError(f"Generator {g!r} is not a list of integers")
    return MonomialIdeal.from_generators(n, gens)


def parse_ideal(text: str) -> MonomialIdeal:
    """
    Parse an ideal from the compact form "n=3; x1*x2, x2*x3^2" or from JSON
    {"n": 3, "generators": [[1,1,0], [0,1,2]]}. The result is minimalized.
    """
    stripped = text.strip()
    try:
        ideal = _parse_json(stripped) if stripped.startswith("{") else _parse_compact(stripped)
    except IdealError as e:
        # range/shape problems found after tokenising are still syntax errors for the caller
        raise IdealSyntaxError(str(e))
    logging.debug(f"[Ideal Parsing] {stripped!r} -> {ideal.generators}")
    return ideal
