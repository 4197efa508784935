import logging
from typing import Any, Dict, List, Optional

from fastapi import HTTPException

from sdepth_core.constructions.four_gen import four_gen_partition
from sdepth_core.constructions.lifts import ci_partition, lem_lift, rem_lift
from sdepth_core.constructions.three_gen import three_gen_partition
from sdepth_core.constructions.upper_discrete import boolean_upper_discrete, upper_discrete_refine
from sdepth_core.errors import SearchBudgetExceeded, StanleyDepthError
from sdepth_core.ideal import (
    classify_variables,
    format_ideal,
    ideal_to_json,
    is_complete_intersection,
    radical,
)
from sdepth_core.poset import build_poset, is_upper_discrete, partition_sdepth
from sdepth_core.search import SearchConfig, sdepth_exact
from sdepth_core.utils.parse_ideal import parse_ideal
from sdepth_core.utils.random_ideals import random_ideals
from sdepth_core.utils.witness_json import partition_from_witness, witness_to_json


TOOL_CONSTRUCTIONS = ("lem", "ci", "boolean", "upper-discrete", "rem", "three-gen", "four-gen")


def _to_http(e: Exception, action: str) -> HTTPException:
    if isinstance(e, SearchBudgetExceeded):
        return HTTPException(status_code=400, detail={
            "error": "budget_exceeded", "message": str(e), "lower": e.lower, "upper": e.upper,
        })
    if isinstance(e, StanleyDepthError):
        return HTTPException(status_code=400, detail={"error": type(e).__name__, "message": str(e)})
    logging.error(f"[MCP] {action} failed: {e}")
    return HTTPException(status_code=500, detail=f"Failed to {action}: {e}")


def _search_config(node_budget: Optional[int]) -> SearchConfig:
    cfg = SearchConfig.from_env()
    if node_budget is None:
        return cfg
    return SearchConfig(node_budget=node_budget, parallel=cfg.parallel, threads=cfg.threads, memo_limit=cfg.memo_limit)


def _compute_sdepth(ideal_text: str, node_budget: Optional[int] = None) -> Dict[str, Any]:
    try:
        ideal = parse_ideal(ideal_text)
        result = sdepth_exact(ideal, _search_config(node_budget))
        return {
            "n": ideal.n,
            "m": ideal.m,
            "sdepth": result.value,
            "nodes": result.nodes,
            "witness": witness_to_json(result.witness),
        }
    except Exception as e:
        raise _to_http(e, "compute Stanley depth")


def _verify_witness(ideal_text: str, witness: Dict[str, Any], k: Optional[int] = None) -> Dict[str, Any]:
    try:
        ideal = parse_ideal(ideal_text)
        poset = build_poset(ideal, witness.get("g"))
        part = partition_from_witness(poset, witness)
        if part.violation is not None:
            return {"ok": False, "violation": part.violation.to_dict()}
        out: Dict[str, Any] = {"ok": True, "sdepth": partition_sdepth(part)}
        if k is not None:
            out["upper_discrete"] = poset.squarefree and is_upper_discrete(part, k)
        return out
    except Exception as e:
        raise _to_http(e, "verify witness")


def _construct_partition(
    ideal_text: str,
    construction: str,
    k: Optional[int] = None,
    pivot: Optional[int] = None,
) -> Dict[str, Any]:
    try:
        ideal = parse_ideal(ideal_text)
        if construction in ("lem", "rem") and pivot is None:
            raise HTTPException(status_code=400, detail=f"Construction '{construction}' needs a pivot")
        if construction == "lem":
            part = lem_lift(ideal, sdepth_exact(ideal).witness, pivot)
        elif construction == "ci":
            part = ci_partition(ideal)
        elif construction == "boolean":
            part = boolean_upper_discrete(ideal.n, ideal.n if k is None else k)
        elif construction in ("upper-discrete", "rem"):
            base = sdepth_exact(ideal).witness
            k = partition_sdepth(base) if k is None else k
            part = upper_discrete_refine(ideal, base, k)
            if construction == "rem":
                part = rem_lift(ideal, part, k, pivot)
        elif construction == "three-gen":
            part = three_gen_partition(ideal)
        elif construction == "four-gen":
            part = four_gen_partition(ideal)
        else:
            raise HTTPException(
                status_code=400,
                detail=f"Unknown construction '{construction}', expected one of {', '.join(TOOL_CONSTRUCTIONS)}",
            )
        return {
            "construction": construction,
            "ideal": format_ideal(part.poset.ideal),
            "sdepth": partition_sdepth(part),
            "witness": witness_to_json(part),
        }
    except HTTPException:
        raise
    except Exception as e:
        raise _to_http(e, f"run construction '{construction}'")


def _classify_ideal(ideal_text: str) -> Dict[str, Any]:
    try:
        ideal = parse_ideal(ideal_text)
        types = [
            {"variable": t.variable, "type": t.type_, "owner": t.owner} for t in classify_variables(ideal)
        ]
        return {
            "ideal": format_ideal(ideal),
            **ideal_to_json(ideal),
            "squarefree": ideal.squarefree,
            "complete_intersection": is_complete_intersection(ideal),
            "types": types,
            "radical": format_ideal(radical(ideal)),
        }
    except Exception as e:
        raise _to_http(e, "classify ideal")


def _survey_question(n: int, m: int, count: int = 10, seed: int = 0) -> Dict[str, Any]:
    try:
        cfg = _search_config(None)
        rows: List[Dict[str, Any]] = []
        for idx, ideal in enumerate(random_ideals(seed, n, m, count)):
            value = sdepth_exact(ideal, cfg).value
            bound = n - m // 2
            rows.append({"seed": seed, "idx": idx, "n": n, "m": m, "sdepth": value, "bound": bound, "slack": value - bound})
        return {
            "rows": rows,
            "min_slack": min((r["slack"] for r in rows), default=None),
        }
    except Exception as e:
        raise _to_http(e, "run survey")
