import argparse
from typing import Any

from linsup.core.config import settings
from linsup.core.problem_io import read_point, read_problem
from linsup.models.solver import InitPolicy, SolverConfig
from linsup.services.reports import write_trace
from linsup.services.superiorization import linsup_run

FILE_PREFIX = "file:"


def _init_options(value: str) -> dict[str, Any]:
    if value.startswith(FILE_PREFIX):
        return {"init": InitPolicy.EXPLICIT, "init_point": read_point(value[len(FILE_PREFIX) :])}
    return {"init": InitPolicy(value)}


def run_command(args: argparse.Namespace) -> int:
    """Run LinSup or plain AMS feasibility-seeking on a problem file."""
    problem = read_problem(args.problem)
    config = SolverConfig(
        alpha=args.alpha,
        inner_steps=args.n,
        relaxation=args.relaxation,
        prox_epsilon=args.eps,
        iterate_change_epsilon=args.iterate_eps,
        max_sweeps=args.max_sweeps,
        seed=args.seed,
        superiorize=args.mode == "linsup",
        **_init_options(args.init),
    )
    report = linsup_run(problem, config)
    if args.trace:
        write_trace(report.trace, args.trace)
    print(
        f"{args.mode}: {report.stop_reason} after {report.sweeps} sweeps, "
        f"phi={report.final_phi:.10g} prox={report.final_prox:.3e} "
        f"beta_sum={report.beta_sum:.6g} time={report.wall_time_s:.3f}s"
    )
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("run", help="Run LinSup or plain feasibility-seeking")
    parser.add_argument("--problem", required=True, help="Problem file")
    parser.add_argument("--mode", choices=["feasibility", "linsup"], default="linsup")
    parser.add_argument("--alpha", type=float, default=0.99, help="Step-size kernel (default: 0.99)")
    parser.add_argument("--n", type=int, default=30, help="Perturbations per sweep (default: 30)")
    parser.add_argument(
        "--lambda", dest="relaxation", type=float, default=1.0, help="AMS relaxation (default: 1)"
    )
    parser.add_argument("--eps", type=float, default=1e-10, help="Proximity stop threshold")
    parser.add_argument("--iterate-eps", type=float, default=None, help="Relative iterate-change stop threshold")
    parser.add_argument(
        "--init",
        default="tens",
        help="Initialization: tens, random, or file:PATH (default: tens)",
    )
    parser.add_argument("--seed", type=int, default=0, help="Run seed (default: 0)")
    parser.add_argument("--max-sweeps", type=int, default=settings.MAX_SWEEPS, help="Sweep cap")
    parser.add_argument("--trace", default=None, help="Write the per-sweep trace CSV here")
    parser.set_defaults(handler=run_command)
