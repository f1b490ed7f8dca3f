from pathlib import Path

import numpy as np
import pytest

from linsup.core.errors import (
    DimensionMismatchError,
    NonFiniteEntryError,
    ProblemParseError,
    ZeroCostError,
    ZeroRowError,
)
from linsup.core.problem_io import read_point, read_problem, write_problem
from linsup.models.generation import GenSpec
from linsup.models.problem import Problem, validate
from linsup.services.problem_gen import generate


class TestValidate:
    def test_accepts_well_formed_instance(self, identity_problem: Problem) -> None:
        validate(identity_problem)
        assert identity_problem.row_count == 2
        assert identity_problem.col_count == 2

    def test_rejects_zero_row(self) -> None:
        problem = Problem(A=[[1.0, 0.0], [0.0, 0.0]], b=[1.0, 1.0], c=[1.0, 1.0])
        with pytest.raises(ZeroRowError) as excinfo:
            validate(problem)
        assert excinfo.value.row == 1

    @pytest.mark.parametrize("c", [[0.0, 0.0], [1e-200, 0.0], [5e-324, 5e-324]])
    def test_rejects_zero_cost(self, c: list[float]) -> None:
        # the norm of a tiny c underflows to zero even though c has nonzero entries
        problem = Problem(A=[[1.0, 0.0], [0.0, 1.0]], b=[1.0, 1.0], c=c)
        with pytest.raises(ZeroCostError):
            validate(problem)

    @pytest.mark.parametrize(
        ("b", "c"),
        [([1.0], [1.0, 1.0]), ([1.0, 1.0], [1.0, 1.0, 1.0])],
    )
    def test_rejects_dimension_mismatch(self, b: list[float], c: list[float]) -> None:
        problem = Problem(A=[[1.0, 0.0], [0.0, 1.0]], b=b, c=c)
        with pytest.raises(DimensionMismatchError):
            validate(problem)

    def test_rejects_vector_as_matrix(self) -> None:
        with pytest.raises(DimensionMismatchError):
            validate(Problem(A=[1.0, 2.0], b=[1.0], c=[1.0, 1.0]))

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_rejects_non_finite_entry(self, bad: float) -> None:
        problem = Problem(A=[[1.0, bad], [0.0, 1.0]], b=[1.0, 1.0], c=[1.0, 1.0])
        with pytest.raises(NonFiniteEntryError):
            validate(problem)

    def test_problem_is_immutable(self, identity_problem: Problem) -> None:
        with pytest.raises(ValueError):
            identity_problem.A[0, 0] = 5.0

    def test_value_equality(self, identity_problem: Problem) -> None:
        same = Problem(A=np.eye(2), b=np.ones(2), c=np.ones(2))
        other = Problem(A=np.eye(2), b=np.ones(2), c=np.array([1.0, 2.0]))
        assert identity_problem == same
        assert identity_problem != other


class TestProblemFormat:
    def test_reads_format_definition(self, tmp_path: Path) -> None:
        path = tmp_path / "identity.txt"
        path.write_text("2 2\n1 0\n0 1\n1 1\n1 1\n", encoding="utf-8")

        problem = read_problem(path)

        np.testing.assert_array_equal(problem.A, np.eye(2))
        np.testing.assert_array_equal(problem.b, [1.0, 1.0])
        np.testing.assert_array_equal(problem.c, [1.0, 1.0])

    def test_truncated_file(self, tmp_path: Path) -> None:
        path = tmp_path / "truncated.txt"
        path.write_text("2 2\n1 0\n0 1\n1 1\n", encoding="utf-8")
        with pytest.raises(ProblemParseError) as excinfo:
            read_problem(path)
        assert excinfo.value.line == 5

    def test_short_row_reports_its_line(self, tmp_path: Path) -> None:
        path = tmp_path / "short.txt"
        path.write_text("2 2\n1 0\n0\n1 1\n1 1\n", encoding="utf-8")
        with pytest.raises(ProblemParseError) as excinfo:
            read_problem(path)
        assert excinfo.value.line == 3

    def test_bad_token(self, tmp_path: Path) -> None:
        path = tmp_path / "token.txt"
        path.write_text("1 2\n1 abc\n1\n1 1\n", encoding="utf-8")
        with pytest.raises(ProblemParseError) as excinfo:
            read_problem(path)
        assert excinfo.value.line == 2

    def test_bad_header(self, tmp_path: Path) -> None:
        path = tmp_path / "header.txt"
        path.write_text("2\n", encoding="utf-8")
        with pytest.raises(ProblemParseError):
            read_problem(path)

    def test_read_validates(self, tmp_path: Path) -> None:
        path = tmp_path / "zero_row.txt"
        path.write_text("2 2\n1 0\n0 0\n1 1\n1 1\n", encoding="utf-8")
        with pytest.raises(ZeroRowError):
            read_problem(path)

    def test_round_trip_generated_instance(self, tmp_path: Path) -> None:
        problem = generate(GenSpec(rows=80, cols=100, seed=3))
        path = tmp_path / "generated.txt"

        write_problem(problem, path)

        assert read_problem(path) == problem

    def test_round_trip_is_bit_exact(self, tmp_path: Path) -> None:
        problem = Problem(
            A=[[0.1, 1.0 / 3.0], [np.nextafter(1.0, 2.0), -2.5e-300]],
            b=[np.pi, -np.e],
            c=[1e300, -0.0 + 7e-17],
        )
        path = tmp_path / "exact.txt"

        write_problem(problem, path)
        restored = read_problem(path)

        assert restored.A.tobytes() == problem.A.tobytes()
        assert restored.b.tobytes() == problem.b.tobytes()
        assert restored.c.tobytes() == problem.c.tobytes()

    def test_read_point(self, tmp_path: Path) -> None:
        path = tmp_path / "point.txt"
        path.write_text("1 2.5\n-3\n", encoding="utf-8")
        assert read_point(path) == [1.0, 2.5, -3.0]
