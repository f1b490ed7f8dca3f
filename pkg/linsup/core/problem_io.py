"""Problem text format.

    line 1         "I J"
    lines 2..I+1   the J entries of each row of A
    line I+2       the I entries of b
    line I+3       the J entries of c

Values are whitespace-separated decimals written with 17 significant digits,
which round-trips every float64 exactly.
"""

import logging
from pathlib import Path

import numpy as np

from linsup.core.errors import ProblemParseError
from linsup.models.problem import Problem, validate

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _format_line(values: np.ndarray) -> str:
    return " ".join(FLOAT_FORMAT % value for value in values)


def _parse_floats(text: str, line_no: int, expected: int) -> np.ndarray:
    tokens = text.split()
    if len(tokens) != expected:
        raise ProblemParseError(line_no, f"expected {expected} values, found {len(tokens)}")
    try:
        return np.array([float(token) for token in tokens], dtype=np.float64)
    except ValueError as e:
        raise ProblemParseError(line_no, str(e)) from e


def write_problem(problem: Problem, path: str | Path) -> None:
    """Write a problem in the text format."""
    lines = [f"{problem.row_count} {problem.col_count}"]
    lines.extend(_format_line(row) for row in problem.A)
    lines.append(_format_line(problem.b))
    lines.append(_format_line(problem.c))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_problem(path: str | Path) -> Problem:
    """Read and validate a problem written in the text format."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()

    def line(index: int) -> str:
        if index >= len(lines):
            raise ProblemParseError(index + 1, "unexpected end of file")
        return lines[index]

    header = line(0).split()
    if len(header) != 2:
        raise ProblemParseError(1, "expected header 'I J'")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as e:
        raise ProblemParseError(1, str(e)) from e
    if rows < 1 or cols < 1:
        raise ProblemParseError(1, f"dimensions must be positive, got {rows} x {cols}")

    A = np.empty((rows, cols), dtype=np.float64)
    for i in range(rows):
        A[i] = _parse_floats(line(1 + i), 2 + i, cols)
    b = _parse_floats(line(1 + rows), 2 + rows, rows)
    c = _parse_floats(line(2 + rows), 3 + rows, cols)
    if len(lines) > rows + 3:
        raise ProblemParseError(rows + 4, "trailing content after c")

    problem = Problem(A=A, b=b, c=c)
    validate(problem)
    logger.debug("Read %d x %d problem from %s", rows, cols, path)
    return problem


def read_point(path: str | Path) -> list[float]:
    """Read a whitespace-separated point (used by ``--init file:PATH``)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return [float(token) for token in text.split()]
    except ValueError as e:
        raise ProblemParseError(1, str(e)) from e
