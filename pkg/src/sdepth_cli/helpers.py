import json
import logging
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sdepth_core.constructions.four_gen import compose_split, four_gen_partition, split_ideal
from sdepth_core.constructions.lifts import ci_partition, lem_lift, rem_lift
from sdepth_core.constructions.three_gen import plan_three_gen, three_gen_partition
from sdepth_core.constructions.upper_discrete import boolean_upper_discrete, upper_discrete_refine
from sdepth_core.ideal import MonomialIdeal, format_ideal
from sdepth_core.poset import (
    IntervalPartition,
    build_poset,
    is_upper_discrete,
    partition_sdepth,
)
from sdepth_core.search import SearchConfig, has_partition_min_rho, sdepth_exact
from sdepth_core.utils.random_ideals import random_ideals
from sdepth_core.utils.witness_json import dump_witness, load_witness, partition_from_witness


EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

CONSTRUCTIONS = ("lem", "ci", "boolean", "upper-discrete", "rem", "three-gen", "four-gen", "split")

Report = Union[dict, List[dict]]


# -------------------------------------------------------------------
# Output
# -------------------------------------------------------------------

def report_format(result: Report, as_json: bool = True) -> str:
    """
    One JSON object per line in JSON mode (a list becomes one line per row);
    "key: value" lines otherwise.
    """
    rows = result if isinstance(result, list) else [result]
    if as_json:
        return "\n".join(json.dumps(row) for row in rows)
    blocks = []
    for row in rows:
        blocks.append("\n".join(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}" for k, v in row.items()))
    return "\n\n".join(blocks)


def error_report(kind: str, message: str) -> dict:
    return {"error": kind, "message": message}


def _write(part: IntervalPartition, out: Optional[str], default: str) -> str:
    return str(dump_witness(part, out or default))


# -------------------------------------------------------------------
# Verbs
# -------------------------------------------------------------------

def run_sdepth(ideal: MonomialIdeal, cfg: SearchConfig, out: Optional[str] = None) -> Tuple[int, dict]:
    result = sdepth_exact(ideal, cfg)
    path = _write(result.witness, out, "witness.json")
    return EXIT_OK, {"n": ideal.n, "m": ideal.m, "sdepth": result.value, "witness": path}


def run_witness(ideal: MonomialIdeal, k: int, cfg: SearchConfig, out: Optional[str] = None) -> Tuple[int, dict]:
    if not 0 <= k <= ideal.n:
        raise ValueError(f"--k must lie in 0..{ideal.n}")
    result = has_partition_min_rho(build_poset(ideal), k, cfg)
    report = {"n": ideal.n, "k": k, "status": result.status.value, "nodes": result.nodes, "witness": None}
    if result.found:
        report["witness"] = _write(result.partition, out, "witness.json")
        return EXIT_OK, report
    if result.status.value == "budget_exceeded":
        return EXIT_BUDGET, report
    return EXIT_VIOLATION, report


def run_verify(ideal: MonomialIdeal, witness_path: str, k: Optional[int] = None) -> Tuple[int, dict]:
    data = load_witness(witness_path)
    g = data.get("g")
    poset = build_poset(ideal, g)
    part = partition_from_witness(poset, data)
    if part.violation is not None:
        return EXIT_VIOLATION, {"ok": False, "violation": part.violation.to_dict()}
    report = {"ok": True, "sdepth": partition_sdepth(part)}
    if k is not None:
        report["k"] = k
        report["upper_discrete"] = poset.squarefree and is_upper_discrete(part, k)
        if not report["upper_discrete"]:
            return EXIT_VIOLATION, report
    return EXIT_OK, report


def _base_partition(ideal: MonomialIdeal, cfg: SearchConfig, witness_path: Optional[str]) -> IntervalPartition:
    """Partition a construction starts from: a witness file, or the exact solver's optimum."""
    if witness_path:
        part = partition_from_witness(build_poset(ideal), load_witness(witness_path))
        return part.ensure_verified("input witness")
    return sdepth_exact(ideal, cfg).witness


def run_construct(
    ideal: MonomialIdeal,
    name: str,
    cfg: SearchConfig,
    k: Optional[int] = None,
    pivot: Optional[int] = None,
    witness_path: Optional[str] = None,
    out: Optional[str] = None,
) -> Tuple[int, dict]:
    extra: Dict[str, object] = {}
    if name == "lem":
        if pivot is None:
            raise ValueError("construct lem needs --pivot")
        part = lem_lift(ideal, _base_partition(ideal, cfg, witness_path), pivot)
    elif name == "ci":
        part = ci_partition(ideal)
    elif name == "boolean":
        part = boolean_upper_discrete(ideal.n, ideal.n if k is None else k)
    elif name == "upper-discrete":
        base = _base_partition(ideal, cfg, witness_path)
        k = partition_sdepth(base) if k is None else k
        part = upper_discrete_refine(ideal, base, k)
    elif name == "rem":
        if pivot is None:
            raise ValueError("construct rem needs --pivot")
        base = _base_partition(ideal, cfg, witness_path)
        k = partition_sdepth(base) if k is None else k
        part = rem_lift(ideal, upper_discrete_refine(ideal, base, k), k, pivot)
        k += 1
    elif name == "three-gen":
        extra["plan"] = plan_three_gen(ideal).to_dict()
        part = three_gen_partition(ideal)
    elif name == "four-gen":
        part = four_gen_partition(ideal)
    elif name == "split":
        split = split_ideal(ideal)
        part0 = sdepth_exact(split.i0, cfg).witness if split.i0 is not None else None
        part1 = sdepth_exact(split.i1, cfg).witness
        extra["i0"] = format_ideal(split.i0) if split.i0 is not None else None
        extra["i1"] = format_ideal(split.i1)
        part = compose_split(ideal, part0, part1)
    else:
        raise ValueError(f"Unknown construction '{name}', expected one of {', '.join(CONSTRUCTIONS)}")

    result_ideal = part.poset.ideal
    report = {
        "construction": name,
        "ideal": format_ideal(result_ideal),
        "n": result_ideal.n,
        "m": result_ideal.m,
        "sdepth": partition_sdepth(part),
    }
    if k is not None and name in ("boolean", "upper-discrete", "rem"):
        report["upper_discrete_k"] = k
    report.update(extra)
    report["witness"] = _write(part, out, f"{name}_witness.json")
    return EXIT_OK, report


# -------------------------------------------------------------------
# Survey: does sdepth(I) >= n - floor(m/2) hold for m-generated squarefree I?
# -------------------------------------------------------------------

def survey_instances(n: int, m: int, count: int, seed: int) -> List[MonomialIdeal]:
    """All instances are drawn up front from one stream, so --threads never changes them."""
    return random_ideals(seed, n, m, count)


def _survey_one(args) -> dict:
    seed, idx, ideal, cfg = args
    value = sdepth_exact(ideal, cfg).value
    bound = ideal.n - ideal.m // 2
    return {"seed": seed, "idx": idx, "n": ideal.n, "m": ideal.m, "sdepth": value, "bound": bound, "slack": value - bound}


def survey(n: int, m: int, count: int, seed: int, cfg: SearchConfig, threads: int = 1) -> List[dict]:
    # instance-level parallelism only, each solver call stays single-threaded
    solver_cfg = SearchConfig(node_budget=cfg.node_budget, memo_limit=cfg.memo_limit)
    jobs = [(seed, idx, ideal, solver_cfg) for idx, ideal in enumerate(survey_instances(n, m, count, seed))]
    if threads > 1:
        with Pool(threads) as pool:
            rows = pool.map(_survey_one, jobs)
    else:
        rows = [_survey_one(job) for job in jobs]
    logging.info(f"[Survey] n={n} m={m} seed={seed}: {len(rows)} instances")
    return rows


def summarize_survey(rows: Sequence[dict]) -> dict:
    slacks = [r["slack"] for r in rows]
    return {
        "count": len(rows),
        "min_slack": min(slacks) if slacks else None,
        "counterexamples": [r["idx"] for r in rows if r["slack"] < 0],
    }


def run_survey(n: int, m: int, count: int, seed: int, cfg: SearchConfig, threads: int = 1) -> Tuple[int, List[dict]]:
    rows = survey(n, m, count, seed, cfg, threads)
    summary = summarize_survey(rows)
    code = EXIT_VIOLATION if summary["counterexamples"] else EXIT_OK
    return code, rows + [{"summary": summary}]
