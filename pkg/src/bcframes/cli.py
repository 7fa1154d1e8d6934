"""
Command-line front end.

Usage:
    bicomplex-frames analyze --input frame.json [--require-frame]
    bicomplex-frames dual --input '{"fixture": "cexp"}'
    bicomplex-frames reconstruct --input frame.json
    bicomplex-frames gabor --input '{"fixture": "painless"}'
    bicomplex-frames psi --input '{"fixture": "gaussian"}'
    bicomplex-frames selftest [--quick]
    bicomplex-frames demo

The report goes to stdout (or --output) as one JSON document; the summary and
logs go to stderr. Exit codes: 0 success, 1 input or usage error, 2 frame
property failure (not a frame, singular frame operator, failed selftest).
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .config import apply_overrides, load_config, resolve_seed
from .exceptions import BcFrameError
from .router import CommandRouter, format_summary
from .utils.codec import dumps, load_document


logger = logging.getLogger(__name__)


def _tolerance(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {name!r} needs a number, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicomplex-frames",
        description="Bicomplex frame analysis, bc frame operators and Weyl-Heisenberg bc-systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=Path, default=None, help="Path to config.json")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", type=Path, default=None, help="Write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="Seed for all random draws (default: $BCFRAMES_SEED or config)")
    common.add_argument(
        "--tolerance", type=_tolerance, action="append", default=[],
        metavar="NAME=VALUE", help="Override a tolerance, e.g. reconstruction=1e-10 (repeatable)",
    )
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--input", "-i", required=True, help="Spec file path or inline JSON")

    sub = parser.add_subparsers(dest="command", required=True)
    analyze = sub.add_parser("analyze", parents=[common, spec], help="Classify a bc frame family")
    analyze.add_argument("--require-frame", action="store_true", help="Exit 2 when the family is not a bc-frame")
    sub.add_parser("dual", parents=[common, spec], help="Canonical dual frame and reconstruction residual")
    sub.add_parser("reconstruct", parents=[common, spec], help="Reconstruction residuals over supplied or random signals")
    gabor = sub.add_parser("gabor", parents=[common, spec], help="Bicomplex Weyl-Heisenberg system on Z_N")
    gabor.add_argument("--require-frame", action="store_true", help="Exit 2 when the system is not a bc-frame")
    sub.add_parser("psi", parents=[common, spec], help="Bessel constant and non-frame witnesses of the psi system")
    selftest = sub.add_parser("selftest", parents=[common], help="Run the acceptance suite")
    selftest.add_argument("--quick", action="store_true", help="Run the configured quick subset")
    selftest.add_argument("--only", nargs="+", default=None, help="Run only the named criteria")
    demo = sub.add_parser("demo", parents=[common], help="Analyze every stock fixture")
    demo.add_argument("--quick", action="store_true", help="Skip the psi fixtures")
    return parser


def _configure_logging(level: str, verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, str(level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def _options(args: argparse.Namespace) -> dict[str, Any]:
    options: dict[str, Any] = {}
    if getattr(args, "require_frame", False):
        options["require_frame"] = True
    if args.command in ("selftest", "demo"):
        options["quick"] = args.quick
    if args.command == "selftest" and args.only:
        options["only"] = args.only
    return options


def run(args: argparse.Namespace, config: dict[str, Any]) -> tuple[dict[str, Any], int]:
    """Execute one parsed request; returns the report and the exit code."""
    config = apply_overrides(config, dict(args.tolerance))
    seed = resolve_seed(config, args.seed)
    router = CommandRouter(config, seed)

    doc = load_document(args.input) if hasattr(args, "input") else None
    started = time.perf_counter()
    payload = router.run(args.command, doc, **_options(args))
    payload["wall_time"] = time.perf_counter() - started
    payload["request"] = {
        "command": args.command,
        "input": args.input if hasattr(args, "input") else None,
        "options": _options(args),
    }
    exit_code = 0
    if payload.get("passed") is False:
        exit_code = 2
    return payload, exit_code


def main(argv: Optional[list[str]] = None) -> int:
    """Entry point for the CLI."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 is reserved for frame property failures
        return 0 if e.code in (0, None) else 1
    # load_config logs, so handlers go up before it runs
    _configure_logging("INFO", args.verbose)
    config = load_config(args.config)
    _configure_logging(config["logging"]["level"], args.verbose)

    try:
        payload, exit_code = run(args, config)
    except BcFrameError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return 1

    text = dumps(payload)
    if args.output:
        try:
            args.output.write_text(text + "\n", encoding="utf-8")
        except OSError as e:
            print(f"error: cannot write {args.output}: {e.strerror}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text + "\n")
    print(format_summary(payload), file=sys.stderr)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
