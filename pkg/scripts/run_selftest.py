#!/usr/bin/env python3
"""
Run the acceptance suite twice with one seed and check the reports agree.

Each run is a separate `bicomplex-frames selftest` process, so the check covers
seeding end to end. Timing fields are dropped before comparing.

Usage:
    python scripts/run_selftest.py
    python scripts/run_selftest.py --seed 7 --quick
    python scripts/run_selftest.py --only algebra schwarz
"""

import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path


ROOT = Path(__file__).parent.parent
TIMING_KEYS = ("wall_time", "elapsed")


def strip_timing(value):
    """Drop timing fields at every level."""
    if isinstance(value, dict):
        return {k: strip_timing(v) for k, v in value.items() if k not in TIMING_KEYS}
    if isinstance(value, list):
        return [strip_timing(v) for v in value]
    return value


def run_once(extra_args: list[str], output: Path) -> tuple[int, dict]:
    """Run one selftest process."""
    cmd = [sys.executable, "-m", "bcframes.cli", "selftest", "--output", str(output)] + extra_args
    print(f"\n{'='*60}")
    print(f"Running: {' '.join(cmd[2:])}")
    print(f"{'='*60}\n")

    result = subprocess.run(cmd, cwd=ROOT)
    report = json.loads(output.read_text()) if output.exists() else {}
    return result.returncode, report


def main():
    parser = argparse.ArgumentParser(description="Run the bicomplex-frames selftest twice and compare")
    parser.add_argument("--seed", type=int, default=None, help="Seed for both runs (default: configured seed)")
    parser.add_argument("--quick", action="store_true", help="Run the quick subset")
    parser.add_argument("--only", nargs="+", default=None, help="Run only the named criteria")
    args = parser.parse_args()

    extra_args = []
    if args.seed is not None:
        extra_args.extend(["--seed", str(args.seed)])
    if args.quick:
        extra_args.append("--quick")
    if args.only:
        extra_args.extend(["--only"] + args.only)

    with tempfile.TemporaryDirectory() as tmp:
        first_code, first = run_once(extra_args, Path(tmp) / "first.json")
        second_code, second = run_once(extra_args, Path(tmp) / "second.json")

    # Summary
    print(f"\n{'='*60}")
    print("Selftest Summary")
    print(f"{'='*60}")

    if not first or not second:
        print("A run produced no report")
        return 1

    results = first["selftest"]["results"]
    failed = [r["name"] for r in results if not r["passed"]]
    print(f"Criteria run: {len(results)} (seed {first['seed']})")

    if strip_timing(first) != strip_timing(second):
        print("Reports differ between runs with the same seed")
        return 1
    if failed or first_code != 0 or second_code != 0:
        print(f"Failed: {', '.join(failed)}")
        return 2
    print("All criteria passed, reports identical")
    return 0


if __name__ == "__main__":
    sys.exit(main())
