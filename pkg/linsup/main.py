import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from linsup.cli.cli import EXIT_USAGE, build_parser
from linsup.core.config import settings
from linsup.core.errors import NumericalError

EXIT_OK = 0
EXIT_NUMERICAL = 2
EXIT_IO = 3

# Configure logging
logging.basicConfig(
    level=settings.LOG_LEVEL, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)

logger = logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the selected command and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    try:
        return int(args.handler(args))
    except NumericalError as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL
    except (ValidationError, ValueError) as e:
        logger.error("Invalid input: %s", e)
        return EXIT_USAGE
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
