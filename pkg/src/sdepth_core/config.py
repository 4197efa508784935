import os
from pathlib import Path

from dotenv import load_dotenv


load_dotenv(Path(__file__).resolve().parents[2] / ".env")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    if not raw.strip():
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got '{raw}'")


SDEPTH_NODE_BUDGET = _int_env("SDEPTH_NODE_BUDGET", 10**8)
SDEPTH_ENUMERATION_CAP = _int_env("SDEPTH_ENUMERATION_CAP", 2**24)
SDEPTH_BASE_CACHE_MAX_M = _int_env("SDEPTH_BASE_CACHE_MAX_M", 12)
SDEPTH_MEMO_LIMIT = _int_env("SDEPTH_MEMO_LIMIT", 2_000_000)
SDEPTH_THREADS = _int_env("SDEPTH_THREADS", 1)
SDEPTH_LOG_LEVEL = os.getenv("SDEPTH_LOG_LEVEL", "WARNING").upper()

MCP_HOST = os.getenv("MCP_HOST", "0.0.0.0")
MCP_PORT = _int_env("MCP_PORT", 8300)
MCP_PATH = os.getenv("MCP_PATH", "/mcp")
