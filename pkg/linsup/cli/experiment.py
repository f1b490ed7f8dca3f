import argparse
from pathlib import Path

from linsup.core.config import settings
from linsup.models.experiment import ExperimentKind, ExperimentSpec
from linsup.models.solver import SolverConfig
from linsup.services.harness import DESK_SIZES, LARGE_SIZES, TIGHT_TASK1_EPSILON, run_experiment
from linsup.services.reports import emit_csv, emit_metadata, emit_plotdata


def _sizes(value: str) -> list[tuple[int, int]]:
    sizes = []
    for item in value.split(","):
        rows, _, cols = item.strip().lower().partition("x")
        try:
            sizes.append((int(rows), int(cols)))
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid size {item!r}, expected IxJ") from e
    return sizes


def _floats(value: str) -> list[float]:
    return [float(item) for item in value.split(",")]


def _ints(value: str) -> list[int]:
    return [int(item) for item in value.split(",")]


def experiment_command(args: argparse.Namespace) -> int:
    """Run one experiment and write its CSV, plot data and metadata to --out-dir."""
    sizes = list(args.sizes or DESK_SIZES)
    if args.large:
        sizes.extend(LARGE_SIZES)
    epsilon = TIGHT_TASK1_EPSILON if args.tight_eps else args.eps
    spec = ExperimentSpec(
        kind=args.kind,
        sizes=sizes,
        reps=args.reps,
        alphas=args.alphas,
        n_values=args.n_values,
        seed=args.seed,
        workers=args.workers,
        base_config=SolverConfig(
            inner_steps=args.n,
            relaxation=args.relaxation,
            prox_epsilon=epsilon,
            max_sweeps=args.max_sweeps,
        ),
    )
    report = run_experiment(spec)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    emit_csv(report, out_dir / f"{spec.kind}.csv")
    emit_plotdata(report, out_dir / f"{spec.kind}_plot.csv")
    emit_metadata(report, out_dir / f"{spec.kind}_metadata.json")
    print(f"{spec.kind}: {len(report.rows)} rows written to {out_dir}")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("experiment", help="Run an experiment and write CSV reports")
    parser.add_argument("--kind", choices=[kind.value for kind in ExperimentKind], required=True)
    parser.add_argument("--sizes", type=_sizes, default=None, help="e.g. 80x100,200x250 (default: desk sizes)")
    parser.add_argument("--large", action="store_true", help="Add the 2000x2500 to 8000x10000 sizes")
    parser.add_argument("--reps", type=int, default=10, help="Instances per size (default: 10)")
    parser.add_argument("--alphas", type=_floats, default=[0.99], help="Kernel values, e.g. 0.9,0.99,0.999")
    parser.add_argument("--n-values", type=_ints, default=[5, 10, 20, 30, 50, 100], help="N values (nsweep)")
    parser.add_argument("--n", type=int, default=30, help="Perturbations per sweep (default: 30)")
    parser.add_argument("--lambda", dest="relaxation", type=float, default=1.0, help="AMS relaxation")
    parser.add_argument("--eps", type=float, default=1e-10, help="Proximity stop threshold")
    parser.add_argument("--tight-eps", action="store_true", help=f"Use eps={TIGHT_TASK1_EPSILON:g}")
    parser.add_argument("--seed", type=int, default=0, help="Master seed (default: 0)")
    parser.add_argument("--workers", type=int, default=settings.WORKERS, help="Worker processes")
    parser.add_argument("--max-sweeps", type=int, default=settings.MAX_SWEEPS, help="Sweep cap per run")
    parser.add_argument("--out-dir", required=True, help="Output directory")
    parser.set_defaults(handler=experiment_command)
