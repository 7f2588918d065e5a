"""
Verified Isolated Singular Solutions
====================================

Certify that a slightly perturbed polynomial system has an exact isolated
singular root near an approximate one.

Usage:
    python -m src.main certify system.sys system.start        # One system
    python -m src.main certify dz1.sys dz1.start --eps 0.005  # Custom threshold
    python -m src.main bench                                  # All fixtures
    python -m src.main bench --only dz1 --only dz2            # Some fixtures
"""

from __future__ import annotations

import argparse
import sys

from src.cli.commands import RunFlags, cmd_bench, cmd_certify
from src.core.config_validator import validate_run_config
from src.core.constants import (
    BENCH_WORKERS,
    DEFAULT_EPS,
    DEFAULT_MAX_DEFLATIONS,
    EXIT_USAGE,
    INFLATION_FACTOR,
    INFLATION_ROUNDS,
)
from src.core.logger import logger


def _add_run_flags(parser: argparse.ArgumentParser, eps_default: float | None) -> None:
    eps_help = f"default: {eps_default:g}" if eps_default is not None else "default: per fixture"
    parser.add_argument("--eps", type=float, default=eps_default,
                        help=f"Singular-value threshold for rank decisions ({eps_help})")
    parser.add_argument("--max-deflations", type=int, default=DEFAULT_MAX_DEFLATIONS,
                        help=f"Deflation cap (default: {DEFAULT_MAX_DEFLATIONS})")
    parser.add_argument("--complex", action="store_true", dest="complex_arithmetic",
                        help="Use complex interval arithmetic even for real input")
    parser.add_argument("--out", type=str, metavar="PATH",
                        help="Write the JSON report (bench: JSON lines) to PATH")
    parser.add_argument("--json", action="store_true", dest="json_output",
                        help="Print the JSON report on standard output")
    parser.add_argument("--seed", type=int,
                        help="Seed for the randomized planted-root systems")
    parser.add_argument("--inflation-factor", type=float, default=INFLATION_FACTOR,
                        help=f"Epsilon-inflation factor (default: {INFLATION_FACTOR})")
    parser.add_argument("--inflation-rounds", type=int, default=INFLATION_ROUNDS,
                        help=f"Epsilon-inflation rounds (default: {INFLATION_ROUNDS})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viss",
        description="Verified isolated singular solutions of polynomial systems",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  viss certify fixtures/dz1.sys fixtures/dz1.start --eps 0.005
  viss certify system.sys system.start --json --out report.json
  viss bench                          # every non-quarantined fixture
  viss bench --only rugr09-breadth-one
  viss bench --planted 100 --seed 7   # random systems with planted roots

Exit codes: 0 certified, 2 usage/parse error, 3 not certified, 4 deflation cap
""",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    certify = subparsers.add_parser("certify", help="Certify one system/start pair")
    certify.add_argument("system_file", help="Polynomial system file (.sys)")
    certify.add_argument("start_file", help="Approximate solution file (.start)")
    _add_run_flags(certify, DEFAULT_EPS)

    bench = subparsers.add_parser("bench", help="Run the benchmark fixtures")
    bench.add_argument("--only", action="append", metavar="NAME",
                       help="Run only this fixture (repeatable)")
    bench.add_argument("--workers", type=int, default=BENCH_WORKERS,
                       help=f"Parallel workers (default: {BENCH_WORKERS})")
    bench.add_argument("--include-quarantined", action="store_true",
                       help="List quarantined fixtures as well")
    bench.add_argument("--planted", type=int, default=0, metavar="COUNT",
                       help="Also run COUNT random systems with planted regular roots")
    _add_run_flags(bench, None)
    return parser


def main(argv: list[str] | None = None) -> int:
    """CLI entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0

    if not validate_run_config(
        args.eps if args.eps is not None else DEFAULT_EPS,
        args.max_deflations,
        args.inflation_factor,
        args.inflation_rounds,
    ):
        logger.error("\nInvalid configuration. Fix the errors above and try again.")
        return EXIT_USAGE

    flags = RunFlags(
        eps=args.eps,
        max_deflations=args.max_deflations,
        complex_arithmetic=args.complex_arithmetic,
        out=args.out,
        json_output=args.json_output,
        seed=args.seed,
        inflation_factor=args.inflation_factor,
        inflation_rounds=args.inflation_rounds,
        workers=getattr(args, "workers", BENCH_WORKERS),
        include_quarantined=getattr(args, "include_quarantined", False),
        planted=getattr(args, "planted", 0),
    )

    if args.command == "certify":
        return cmd_certify(args.system_file, args.start_file, flags)
    return cmd_bench(args.only, flags)


if __name__ == "__main__":
    sys.exit(main())
