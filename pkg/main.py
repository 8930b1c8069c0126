#!/usr/bin/env python3
"""
eulerec - Main Entry Point

Command-line front end for computing sequences through their Euler-type
recurrences or their brute-force oracles, verifying the identity catalog,
and benchmarking the recurrence solvers.

Exit codes: 0 success, 1 verification failure or oracle/recurrence
mismatch, 2 usage error.
"""

import argparse
import asyncio
import sys
from typing import List, Optional

from loguru import logger

from src.analyzers.identities import catalog
from src.core.config import settings
from src.models.identity_data import IdentityId
from src.services.bench_service import bench
from src.services.output_writer import write_records, write_reports
from src.services.sequence_service import Method, SequenceService, sequence_names
from src.services.verification_service import verify_all
from src.utils.errors import (
    DomainError, EnumerationGuardError, EulerecError, MissingParameterError, UnknownKeyError,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USAGE_ERRORS = (UnknownKeyError, MissingParameterError, DomainError, EnumerationGuardError)


def configure_logging(verbose: bool = False) -> None:
    """Logs go to stderr so stdout carries data only"""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else settings.log_level.upper())


def run_compute(args) -> int:
    method = Method(args.method)
    result = SequenceService().compute(args.sequence, args.max_n, method, k=args.k, r=args.r)
    rows = write_records(result.records(), sys.stdout, fmt=args.format, with_oracle=method == Method.BOTH)
    logger.debug(f"wrote {rows} rows for {args.sequence}")
    mismatches = result.mismatches
    if mismatches:
        logger.error(f"{args.sequence}: {len(mismatches)} mismatches, first at n = {mismatches[0]}")
        return EXIT_FAILED
    return EXIT_OK


def run_verify(args) -> int:
    identities = None if args.id == "all" else [IdentityId.from_key(args.id)]
    reports = asyncio.run(verify_all(identities, args.max_n, k=args.k, r=args.r, literal=args.literal))
    write_reports(reports, sys.stdout, fmt=args.format)
    failed = [report.label for report in reports if not report.passed]
    if failed:
        logger.warning(f"{len(failed)} of {len(reports)} identities failed: {', '.join(failed)}")
        return EXIT_FAILED
    return EXIT_OK


def run_bench(args) -> int:
    result = bench(args.sequence, args.max_n, k=args.k)
    print(result.summary())
    print(result.to_frame().to_string())
    return EXIT_OK if result.identical else EXIT_FAILED


def run_list(args) -> int:
    for identity in catalog():
        print(identity.value)
    for name in sequence_names():
        print(name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulerec",
        description="Euler-type recurrences, partitions and q-series identities over exact integers",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py compute p --max-n 50                  # partition numbers via the pentagonal recurrence
  python main.py compute r_k --k 4 --max-n 20 --method both
  python main.py verify eq3-p --max-n 1000             # one identity
  python main.py verify thm4b --max-n 200 --literal    # printed form of the triangular identity
  python main.py verify all --max-n 300                # the whole catalog
  python main.py bench sigma --max-n 5000              # solver vs trial division
        """,
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="Tabulate a named sequence")
    compute.add_argument("sequence", help="Sequence name (see `list`)")
    compute.add_argument("--max-n", type=int, default=settings.default_max_n)
    compute.add_argument("--method", choices=[m.value for m in Method], default=Method.RECURRENCE.value)
    compute.add_argument("--format", choices=["csv", "json"], default="csv")
    compute.add_argument("--k", type=int, help="Number of squares for r_k")
    compute.add_argument("--r", type=int, help="Part count / subset size for *_r sequences")
    compute.set_defaults(handler=run_compute)

    verify = commands.add_parser("verify", help="Verify a catalog identity, or all of them")
    verify.add_argument("id", help="Identity key (see `list`) or 'all'")
    verify.add_argument("--max-n", type=int, default=settings.default_max_n)
    verify.add_argument("--literal", action="store_true", help="Evaluate thm4b in its printed form")
    verify.add_argument("--format", choices=["text", "json"], default="text")
    verify.add_argument("--k", type=int, help="k for thm-rk, cor-rk-cong, jacobi-power, lemma-omega-k")
    verify.add_argument("--r", type=int, help="r for the *-r identities")
    verify.set_defaults(handler=run_verify)

    bench_cmd = commands.add_parser("bench", help="Time a recurrence solver against its oracle")
    bench_cmd.add_argument("sequence", help="p, q, qq, sigma or r_k")
    bench_cmd.add_argument("--max-n", type=int, default=settings.default_max_n)
    bench_cmd.add_argument("--k", type=int, help="Number of squares for r_k")
    bench_cmd.set_defaults(handler=run_bench)

    list_cmd = commands.add_parser("list", help="Print catalog keys and sequence names")
    list_cmd.set_defaults(handler=run_list)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except USAGE_ERRORS as e:
        logger.error(f"usage error: {e}")
        return EXIT_USAGE
    except EulerecError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
