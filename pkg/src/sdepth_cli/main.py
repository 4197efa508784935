import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import sdepth_cli.helpers as helpers
from sdepth_cli.acceptance import SUITES, run_selftest
from sdepth_core import config
from sdepth_core.errors import SearchBudgetExceeded, StanleyDepthError
from sdepth_core.search import SearchConfig
from sdepth_core.utils.parse_ideal import parse_ideal


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get the JSON error shape."""

    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, ideal: bool = True) -> None:
    if ideal:
        p.add_argument("--ideal", "-i", help='ideal text, e.g. "n=3; x1*x2, x2*x3"')
        p.add_argument("--file", help="file holding the ideal (compact text or JSON)")
    p.add_argument("--budget", type=int, default=config.SDEPTH_NODE_BUDGET, help="search node budget")
    p.add_argument("--threads", type=int, default=config.SDEPTH_THREADS)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="where to write the witness")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdepth", description="Stanley depth of monomial ideals via interval partitions")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("sdepth", help="exact Stanley depth with a witness")
    p.add_argument("ideal_text", nargs="?", help="ideal text (same as --ideal)")
    _common(p)

    p = sub.add_parser("witness", help="partition with min rho >= k, if any")
    p.add_argument("ideal_text", nargs="?")
    p.add_argument("--k", type=int, required=True)
    _common(p)

    p = sub.add_parser("verify", help="check a witness file against an ideal")
    p.add_argument("witness", help="witness JSON file")
    p.add_argument("--k", type=int, help="also require upper-discreteness of degree k")
    _common(p)

    p = sub.add_parser("construct", help="run a named construction")
    p.add_argument("name", choices=helpers.CONSTRUCTIONS)
    p.add_argument("ideal_text", nargs="?")
    p.add_argument("--k", type=int)
    p.add_argument("--pivot", type=int)
    p.add_argument("--witness", help="start from this witness instead of the exact optimum")
    _common(p)

    p = sub.add_parser("survey", help="random m-generated ideals against n - floor(m/2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    _common(p, ideal=False)

    p = sub.add_parser("selftest", help="run the acceptance suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES))
    p.add_argument("--count", type=int, help="size of every random suite")
    p.add_argument("--seed", type=int, default=0)
    _common(p, ideal=False)
    return parser


def _load_ideal(args):
    text = getattr(args, "ideal", None) or getattr(args, "ideal_text", None)
    if getattr(args, "file", None):
        text = Path(args.file).read_text()
    if not text:
        raise UsageError(f"'{args.verb}' needs an ideal (--ideal or --file)")
    return parse_ideal(text)


def dispatch(args) -> tuple:
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    cfg = SearchConfig(node_budget=args.budget, parallel=args.threads > 1, threads=args.threads)

    if args.verb == "selftest":
        results = run_selftest(cfg, args.suite, args.count, args.seed)
        code = helpers.EXIT_OK if all(r.passed for r in results) else helpers.EXIT_VIOLATION
        return code, [r.to_dict() for r in results]
    if args.verb == "survey":
        return helpers.run_survey(args.n, args.m, args.count, args.seed, cfg, args.threads)

    ideal = _load_ideal(args)
    if args.verb == "sdepth":
        return helpers.run_sdepth(ideal, cfg, args.out)
    if args.verb == "witness":
        return helpers.run_witness(ideal, args.k, cfg, args.out)
    if args.verb == "verify":
        return helpers.run_verify(ideal, args.witness, args.k)
    return helpers.run_construct(ideal, args.name, cfg, args.k, args.pivot, args.witness, args.out)


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=config.SDEPTH_LOG_LEVEL, format="%(levelname)s %(message)s")
    as_json = True
    try:
        args = build_parser().parse_args(argv)
        as_json = args.json
        code, report = dispatch(args)
    except UsageError as e:
        code, report = helpers.EXIT_USAGE, helpers.error_report("usage", str(e))
    except SearchBudgetExceeded as e:
        code = helpers.EXIT_BUDGET
        report = helpers.error_report("budget_exceeded", str(e))
        report.update({"lower": e.lower, "upper": e.upper})
    except (StanleyDepthError, ValueError, OSError) as e:
        code, report = helpers.EXIT_USAGE, helpers.error_report(type(e).__name__, str(e))
    except Exception as e:
        logging.exception(f"[CLI] unexpected failure: {e}")
        code, report = helpers.EXIT_VIOLATION, helpers.error_report("internal", str(e))
    errored = isinstance(report, dict) and "error" in report
    print(helpers.report_format(report, as_json or errored))
    return code


if __name__ == "__main__":
    sys.exit(main())
