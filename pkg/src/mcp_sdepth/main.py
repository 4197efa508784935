import logging
import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from typing import Any, Dict, Optional

from fastmcp import FastMCP

import mcp_sdepth.helpers as helpers
from sdepth_core import config


logging.basicConfig(level=config.SDEPTH_LOG_LEVEL)

mcp = FastMCP("Stanley Depth MCP Server", auth=None)


@mcp.tool
def compute_sdepth(ideal: str, node_budget: Optional[int] = None) -> Dict[str, Any]:
    """
    Compute the exact Stanley depth of a monomial ideal.

    Parameters:
    - ideal: compact text such as "n=3; x1*x2, x2*x3, x1*x3", or JSON {"n": 3, "generators": [[1,1,0], ...]}
    - node_budget: optional cap on search nodes per k

    Returns:
    n, m, the Stanley depth, the number of search nodes and a witness partition in witness JSON.
    """
    return helpers._compute_sdepth(ideal, node_budget)


@mcp.tool
def verify_witness(ideal: str, witness: Dict[str, Any], k: Optional[int] = None) -> Dict[str, Any]:
    """
    Check that a witness partitions the characteristic poset of the ideal.

    Parameters:
    - ideal: the ideal the witness is for
    - witness: {"n", "g", "intervals": [{"lo", "hi", "rule"}]}
    - k: if given, also report whether the partition is upper-discrete of degree k

    Returns:
    {"ok": true, "sdepth": ...} or {"ok": false, "violation": {"kind", "witness"}}
    """
    return helpers._verify_witness(ideal, witness, k)


@mcp.tool
def construct_partition(
    ideal: str,
    construction: str,
    k: Optional[int] = None,
    pivot: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Run one of the explicit partition constructions.

    Parameters:
    - construction: lem, ci, boolean, upper-discrete, rem, three-gen or four-gen
    - k: degree for boolean / upper-discrete / rem
    - pivot: variable index for lem / rem

    Returns:
    The resulting ideal, the partition's Stanley depth and the witness JSON.
    """
    return helpers._construct_partition(ideal, construction, k, pivot)


@mcp.tool
def classify_ideal(ideal: str) -> Dict[str, Any]:
    """
    Variable types (how many generators involve each variable), squarefreeness,
    complete-intersection test and the radical.
    """
    return helpers._classify_ideal(ideal)


@mcp.tool
def survey_question(n: int, m: int, count: int = 10, seed: int = 0) -> Dict[str, Any]:
    """
    Sample random m-generated squarefree ideals in n variables and compare their
    Stanley depth with n - floor(m/2).

    Returns:
    One row per instance plus the smallest slack; a negative slack is a counterexample.
    """
    return helpers._survey_question(n, m, count, seed)


if __name__ == "__main__":
    mcp.run(transport="http", host=config.MCP_HOST, port=config.MCP_PORT, path=config.MCP_PATH)
