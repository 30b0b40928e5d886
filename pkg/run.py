#!/usr/bin/env python3
"""
Convenience script to run common tasks
"""

import argparse
import logging
import shutil
import sys
from pathlib import Path

from superjacobi.arith import ExtendedScalar
from superjacobi.cli import JobSpec, run, write_output
from superjacobi.config import get_settings
from superjacobi.errors import DegenerateParameters, SuperJacobiError
from superjacobi.partitions import Partition


def print_help():
    """Print help message"""
    print("""
Super Jacobi - Task Runner

Usage: python run.py <command> [options]

Commands:
    compute-sj    Compute SJ_lambda(t), the k -> -1 limit along p = t(k+1)
    compute-si    Compute SI_lambda
    compute-sch   Compute sch E(lambda), sch L(lambda) and sch K(chi_lambda)
    verify        Run verification suites (comb, blowup, coeffs, eigen, pieri,
                  regularity, special, euler, kac, or all)
    table         Per-lambda summary: class, j, sharp chain, c~, b_lambda(t)
    setup         Create .env from .env.example
    help          Show this help message

Common options:
    --n N              Rank of OSP(2,2n) (default 1)
    --lambda PARTS     Partition as 3,1 (use - for the empty partition)
    --t T              Slope of the blow-up line: a/b or inf (default inf)
    --format FMT       text, json (or csv for table)
    --output PATH      Write the document to PATH instead of printing it

When a fixed-t construction is degenerate, the slopes in
SUPERJACOBI_RETRY_T are tried in order (default 1/2,5/3,7/11,13/7).

Exit codes: 0 success, 1 verification failure or error,
2 every slope in the retry list is degenerate.

Examples:
    python run.py compute-sj --n 1 --lambda 2 --t inf --format json
    python run.py compute-si --n 2 --lambda 3,1
    python run.py verify euler --n 1 --max-size 7
    python run.py table --n 2 --max-size 5 --t 1/2
    """)


def build_parser(command: str) -> argparse.ArgumentParser:
    """Flags shared by the computing commands"""
    settings = get_settings()
    parser = argparse.ArgumentParser(prog=f"run.py {command}")
    parser.add_argument("--n", type=int, default=1, help="rank n of OSP(2,2n)")
    parser.add_argument("--format", default="text", choices=["text", "json", "csv"])
    parser.add_argument("--output", default=None, help="write the document to this file")
    if command in ("compute-sj", "compute-si", "compute-sch"):
        parser.add_argument("--lambda", dest="lam", required=True, help="partition, e.g. 3,1 or -")
    if command in ("compute-sj", "table"):
        parser.add_argument("--t", default="inf", help="slope a/b or inf")
    if command == "compute-sj":
        parser.add_argument("--route", default="formula", choices=["formula", "limit"])
    if command == "compute-si":
        parser.add_argument("--method", default="formula", choices=["formula", "limit"])
    if command in ("verify", "table"):
        parser.add_argument("--max-size", type=int, default=settings.max_size)
    if command == "verify":
        parser.add_argument("suites", nargs="*", default=["all"], help="suite names (default: all)")
        parser.add_argument("--seed", type=int, default=settings.seed)
    return parser


def parse_job(command: str, argv) -> JobSpec:
    args = build_parser(command).parse_args(argv)
    job = JobSpec(command=command, n=args.n, format=args.format)
    if getattr(args, "lam", None) is not None:
        job.lam = Partition.parse(args.lam)
    if getattr(args, "t", None) is not None:
        job.t = ExtendedScalar.parse(args.t)
    job.route = getattr(args, "route", job.route)
    job.method = getattr(args, "method", job.method)
    job.max_size = getattr(args, "max_size", job.max_size)
    job.seed = getattr(args, "seed", job.seed)
    job.suites = getattr(args, "suites", job.suites) or ["all"]
    job.output = args.output
    return job


def run_job(command: str, argv):
    """Run one computing command and print (or write) its document"""
    try:
        job = parse_job(command, argv)
        if command == "verify":
            print(f"Running suite(s) {', '.join(job.suites)} for n={job.n}, |lambda| <= {job.max_size}...")
        result = run(job)
    except DegenerateParameters as e:
        print(f"Error: {e}")
        if e.pair is not None:
            print(f"  offending pair: {e.pair[0]} / {e.pair[1]}")
        sys.exit(2)
    except (SuperJacobiError, ValueError) as e:
        print(f"Error: {e}")
        sys.exit(1)

    if job.output:
        target = write_output(result.document, job.output, job.format)
        print(f"Wrote {command} output to {target}")
    else:
        print(result.document)

    if result.exit_code != 0:
        print("\nVerification failed.")
        sys.exit(result.exit_code)


def setup_wizard():
    """Run setup wizard"""
    print("=== Super Jacobi Setup ===\n")

    env_file = Path(__file__).parent / ".env"
    env_example = Path(__file__).parent / ".env.example"

    if env_file.exists():
        print(f".env already exists: {env_file}")
    elif env_example.exists():
        shutil.copy(env_example, env_file)
        print(f"Created .env file from .env.example:")
        print(f"  {env_file}\n")
    else:
        print("Warning: .env.example not found")

    print("\n=== Setup Complete! ===")
    print("\nNext steps:")
    print("1. Adjust SUPERJACOBI_* settings in .env if needed")
    print("2. Run: python run.py verify --n 1")
    print("3. Run: python run.py table --n 2")


def main():
    """Main function"""
    if len(sys.argv) < 2:
        print_help()
        sys.exit(1)

    command = sys.argv[1].lower()

    if command in ("compute-sj", "compute-si", "compute-sch", "verify", "table"):
        try:
            level = get_settings().log_level
        except ValueError as e:
            print(f"Error: {e}")
            sys.exit(1)
        logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
        run_job(command, sys.argv[2:])
    elif command == "setup":
        setup_wizard()
    elif command == "help":
        print_help()
    else:
        print(f"Unknown command: {command}")
        print_help()
        sys.exit(1)


if __name__ == "__main__":
    main()
