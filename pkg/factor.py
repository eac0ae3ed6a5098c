import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from config.run_config import RunConfig
from config.settings import settings
from services.pipeline import FactoringPipeline
from services.reporting import emit_report, write_histograms
from utils.error_handler import (
    EXIT_FACTOR_FOUND,
    EXIT_NO_FACTOR,
    ConfigurationError,
    ErrorHandler,
)
from utils.formatters import format_int_list, format_outcome

logger = logging.getLogger(__name__)

RUN_FIELDS = ("n", "base", "blocks", "overlaps", "shots", "top_k", "max_combos", "seed", "backend", "retries")


class CommandParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors share exit code 1"""

    def error(self, message: str):
        raise ConfigurationError("usage", message)


def build_parser() -> CommandParser:
    parser = CommandParser(prog="factor", description="Factor N with windowed (modular) Shor phase estimation")
    # run inputs default to None so the config file and settings can fill them
    parser.add_argument("--n", type=int, help="Odd composite modulus to factor")
    parser.add_argument("--base", type=int, help="Base a in [2, N-1]; sampled from the seed when omitted")
    parser.add_argument("--blocks", help="Comma-separated block sizes, e.g. 3,4,4,5")
    parser.add_argument("--overlaps", help="Comma-separated overlaps, first one 0, e.g. 0,2,3,2")
    parser.add_argument("--shots", type=int, help=f"Shots per block, 0 for exact mode (default {settings.DEFAULT_SHOTS})")
    parser.add_argument("--top-k", type=int, help=f"Candidates kept per block (default {settings.DEFAULT_TOP_K})")
    parser.add_argument("--max-combos", type=int, help=f"Stitching prune cap (default {settings.DEFAULT_MAX_COMBOS})")
    parser.add_argument("--seed", type=int, help=f"Master seed (default {settings.DEFAULT_SEED})")
    parser.add_argument("--backend", help="analytic or statevector")
    parser.add_argument("--retries", type=int, help="Attempts with fresh bases when no factor is found")
    parser.add_argument("--config", type=Path, help="JSON file with any of the run options above")
    parser.add_argument("--jobs", type=int, help="Worker threads for block execution (default: one per block)")
    parser.add_argument("--out", type=Path, help="Report destination (default: standard output)")
    parser.add_argument("--emit-histograms", type=Path, metavar="DIR", help="Write block_<i>.csv histograms here")
    parser.add_argument("--timings", action="store_true", help="Include per-stage wall-clock times in the report")
    parser.add_argument("--verbose", action="store_true", help="Log stage progress to stderr")
    return parser


def load_config_file(path: Path) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as handle:
            values = json.load(handle)
    except OSError as e:
        raise ConfigurationError("config", f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError("config", f"{path} is not valid JSON: {e.msg} (line {e.lineno})") from e

    if not isinstance(values, dict):
        raise ConfigurationError("config", f"{path} must hold a JSON object")
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Settings defaults < --config file < explicit flags"""
    values: Dict[str, Any] = load_config_file(args.config) if args.config else {}
    for name in RUN_FIELDS:
        value = getattr(args, name)
        if value is not None:
            values[name] = value
    return RunConfig.from_mapping(values)


def configure_logging(verbose: bool):
    level = logging.INFO if verbose else getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


@ErrorHandler.handle_cli_errors
def run_command(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)

    config = resolve_config(args)
    if args.jobs is not None and args.jobs < 1:
        raise ConfigurationError("jobs", f"must be >= 1, got {args.jobs}")

    logger.info(
        f"Factoring N={config.n} blocks={format_int_list(config.blocks)} "
        f"overlaps={format_int_list(config.overlaps)} backend={config.backend}"
    )
    pipeline = FactoringPipeline(config, jobs=args.jobs)
    logger.info(f"Qubit budget: {pipeline.schedule.qubit_budget(config.n_target)}")
    report = pipeline.run()

    emit_report(report, args.out, include_timings=args.timings)
    if args.emit_histograms:
        write_histograms(report, args.emit_histograms)

    if report.found:
        return EXIT_FACTOR_FOUND
    ErrorHandler.show_warning(format_outcome(None, config.n) + f" after {len(report.attempts)} attempt(s)")
    return EXIT_NO_FACTOR


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
