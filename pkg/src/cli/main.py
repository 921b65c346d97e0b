"""Command-line entry point: ``mbqc-selftest <subcommand> [options]``.

Reports go to stdout (or ``--out``) as sorted-key JSON; logs go to stderr.
Exit codes: 0 pass, 1 test failure, 2 usage or input error.
"""

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path
from typing import Any, NoReturn

import networkx
import numpy
import pydantic
import scipy

from src.cli.commands import HANDLERS, SCHEMAS
from src.cli.models import REPORT_SCHEMA_VERSION
from src.config import ConfigLoader, ConfigValidator, get_config, set_config
from src.delegation import MEASURERS, PREPARERS, SCENARIOS
from src.exceptions import ConfigurationError, SelfTestError
from src.logging_config import configure_from, set_run_label

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class JsonArgumentParser(argparse.ArgumentParser):
    """Argument parser whose usage errors are JSON on stderr."""

    def error(self, message: str) -> NoReturn:
        _print_error({"error": message, "type": "UsageError", "details": {"usage": self.format_usage().strip()}})
        sys.exit(EXIT_USAGE)


def _print_error(diagnostic: dict[str, Any]) -> None:
    sys.stderr.write(json.dumps(diagnostic, sort_keys=True, default=str) + "\n")


def module_versions() -> dict[str, str]:
    try:
        package = metadata.version("mbqc-selftest")
    except metadata.PackageNotFoundError:
        package = "unknown"
    return {
        "mbqc-selftest": package,
        "networkx": networkx.__version__,
        "numpy": numpy.__version__,
        "pydantic": pydantic.VERSION,
        "scipy": scipy.__version__,
    }


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("--csv", help="write the command's table (if any) as CSV")
    parser.add_argument("--no-timestamp", action="store_true", help="omit the UTC timestamp")
    parser.add_argument("--alpha", type=float, help="significance level (config default)")
    parser.add_argument("--beta", type=float, help="targeted acceptance probability (config default)")


def build_parser() -> argparse.ArgumentParser:
    parser = JsonArgumentParser(prog="mbqc-selftest", description="Self-testing simulator for MBQC devices")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR (config default)")
    parser.add_argument("--config", help="configuration file (default config.yaml)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=JsonArgumentParser)

    bell = sub.add_parser("bell-test", help="Test (2) on a two-site device")
    _common(bell)
    bell.add_argument("--honest", action="store_true", help="shorthand for --device honest")
    bell.add_argument("--device", default="honest",
                      choices=["honest", "product", "rotated", "depolarized", "qutrit"])
    bell.add_argument("--site", type=int, default=0)
    bell.add_argument("--label", default="X", choices=["X", "Z", "A0", "A1"])
    bell.add_argument("--theta", type=float, default=0.0)
    bell.add_argument("--p", type=float, default=0.0, help="depolarizing weight")
    bell.add_argument("--leak", type=float, default=0.0, help="qutrit leak weight")
    bell.add_argument("--m", type=int, required=True)
    bell.add_argument("--c1", type=float, help="calibrated from beta when omitted")
    bell.add_argument("--seed", type=int, default=0)
    bell.add_argument("--threads", type=int, default=0)
    bell.add_argument("--extract", action="store_true", help="attach the extraction chain")

    graph = sub.add_parser("graph-test", help="Test (4) on a graph-state device")
    _common(graph)
    graph.add_argument("--graph", required=True)
    graph.add_argument("--partition", default="file", choices=["file", "greedy", "exhaustive"])
    graph.add_argument("--adversary", default="honest",
                       choices=["honest", "z-corrupt", "rotated-state", "product"])
    graph.add_argument("--site", type=int, default=0)
    graph.add_argument("--theta", type=float, default=0.0)
    graph.add_argument("--m", type=int, required=True)
    graph.add_argument("--c1", type=float)
    graph.add_argument("--seed", type=int, default=0)
    graph.add_argument("--threads", type=int, default=0)

    delegate = sub.add_parser("delegate", help="Test (4) through the three-party harness")
    _common(delegate)
    delegate.add_argument("--scenario-file")
    delegate.add_argument("--graph")
    delegate.add_argument("--mode", default="trusting", choices=list(SCENARIOS))
    delegate.add_argument("--preparer", default="honest", choices=sorted(PREPARERS))
    delegate.add_argument("--measurer", default="honest", choices=sorted(MEASURERS))
    delegate.add_argument("--m", type=int, default=10)
    delegate.add_argument("--c1", type=float)
    delegate.add_argument("--seed", type=int, default=0)
    delegate.add_argument("--transcript", help="JSON-lines transcript path")

    calibrate = sub.add_parser("calibrate", help="size c1 and tabulate acceptance thresholds")
    _common(calibrate)
    calibrate.add_argument("--n", type=int, default=1, help="number of sites sharing the tail")
    calibrate.add_argument("--num-tests", type=int, default=4)
    calibrate.add_argument("--m-values", type=int, nargs="*", default=[])
    calibrate.add_argument("--p-star", type=float, default=0.5)
    calibrate.add_argument("--beta-tail", type=float, default=0.05)

    bounds = sub.add_parser("bounds", help="certification bounds for n, delta, alpha, m")
    _common(bounds)
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--delta", type=float, help="precision level; derived from c2 and m when omitted")
    bounds.add_argument("--m", type=int, required=True)
    bounds.add_argument("--c2", type=float)
    bounds.add_argument("--s", type=int)

    oracle = sub.add_parser("oracle", help="brute-force cross-checks")
    _common(oracle)
    oracle.add_argument("--graph", action="append", help="graph file (repeatable; bundled graphs by default)")
    oracle.add_argument("--max-n", type=int, default=20)
    oracle.add_argument("--max-m", type=int, default=200)
    oracle.add_argument("--seed", type=int, default=0)

    schema = sub.add_parser("schema", help="JSON schema of a report model")
    _common(schema)
    schema.add_argument("model", choices=sorted(SCHEMAS))
    return parser


def _configure(args: argparse.Namespace) -> None:
    if args.config:
        set_config(ConfigLoader(args.config))
    config = get_config()
    configure_from(config, level=args.log_level)
    set_run_label(args.command, getattr(args, "seed", None))
    if config.config_path.exists():
        errors = ConfigValidator.validate(config.snapshot())
        if errors:
            raise ConfigurationError(
                "Invalid configuration", details={"path": str(config.config_path), "errors": errors}
            )


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("Wrote %s", target)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _configure(args)
        code, payload, table = HANDLERS[args.command](args)
    except SelfTestError as exc:
        _print_error(exc.diagnostic())
        return EXIT_USAGE

    if args.command != "schema":
        payload = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": args.command,
            "versions": module_versions(),
            **payload,
        }
        if not args.no_timestamp:
            payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    if args.csv:
        if table is None:
            logger.warning("%s has no table to export", args.command)
        else:
            _emit(table, args.csv)
    return code


def run() -> None:
    sys.exit(main())
