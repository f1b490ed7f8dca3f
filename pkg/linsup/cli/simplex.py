import argparse
import math

from linsup.core.config import settings
from linsup.core.problem_io import read_problem
from linsup.services.metrics import proximity
from linsup.services.reports import write_trace
from linsup.services.simplex import solve, solve_budgeted


def simplex_command(args: argparse.Namespace) -> int:
    """Solve a problem file with the Simplex baseline, optionally on a time budget."""
    problem = read_problem(args.problem)
    if args.budget is not None:
        result = solve_budgeted(problem, args.budget, args.sample_every)
    elif args.trace:
        result = solve_budgeted(problem, math.inf, args.sample_every)
    else:
        result = solve(problem)
    if args.trace:
        write_trace(result.trace, args.trace)
    print(
        f"simplex: {result.status} after {result.pivots} pivots "
        f"({result.phase1_pivots} in phase 1), objective={result.objective:.10g} "
        f"prox={proximity(problem, result.x):.3e} time={result.wall_time_s:.3f}s"
    )
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("simplex", help="Solve with the Simplex baseline")
    parser.add_argument("--problem", required=True, help="Problem file")
    parser.add_argument("--budget", type=float, default=None, help="Time budget in seconds")
    parser.add_argument(
        "--sample-every",
        type=int,
        default=settings.SIMPLEX_SAMPLE_EVERY,
        help="Pivots between trace samples",
    )
    parser.add_argument("--trace", default=None, help="Write the trace CSV here")
    parser.set_defaults(handler=simplex_command)
