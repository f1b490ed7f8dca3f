import argparse

from linsup.core.problem_io import write_problem
from linsup.models.generation import GenSpec
from linsup.services.problem_gen import generate


def generate_command(args: argparse.Namespace) -> int:
    """Generate a random instance and write it in the problem text format."""
    spec = GenSpec(rows=args.rows, cols=args.cols, seed=args.seed, slack=args.slack)
    write_problem(generate(spec), args.out)
    print(f"Wrote {spec.rows} x {spec.cols} instance (seed={spec.seed}) to {args.out}")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("generate", help="Generate a random test instance")
    parser.add_argument("--rows", type=int, required=True, help="Number of constraints I")
    parser.add_argument("--cols", type=int, required=True, help="Number of variables J")
    parser.add_argument("--seed", type=int, default=0, help="Generator seed (default: 0)")
    parser.add_argument("--slack", type=float, default=10.0, help="Margin in b = A1 + slack (default: 10)")
    parser.add_argument("--out", required=True, help="Output problem file")
    parser.set_defaults(handler=generate_command)
