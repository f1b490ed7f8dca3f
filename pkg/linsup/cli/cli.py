import argparse
from typing import NoReturn

from linsup.cli.experiment import register as register_experiment
from linsup.cli.generate import register as register_generate
from linsup.cli.run import register as register_run
from linsup.cli.simplex import register as register_simplex
from linsup.core.config import settings

EXIT_USAGE = 1


class _ArgumentParser(argparse.ArgumentParser):
    """argparse reports usage errors with exit code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage()
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="linsup",
        description="Linear superiorization, a Simplex baseline and the experiment harness",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    register_generate(subparsers)
    register_run(subparsers)
    register_simplex(subparsers)
    register_experiment(subparsers)
    return parser
