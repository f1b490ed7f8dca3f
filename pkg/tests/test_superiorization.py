import numpy as np
import pytest
from pydantic import ValidationError

from linsup.core.rng import make_rng
from linsup.models.generation import GenSpec
from linsup.models.problem import Problem
from linsup.models.solver import InitPolicy, RunReport, SolverConfig, StopReason
from linsup.services.feasibility import seek_feasible
from linsup.services.problem_gen import generate
from linsup.services.superiorization import (
    StepSchedule,
    atl2_reset,
    linsup_run,
    next_beta,
    perturb,
    proximity_stop_check,
)


def _untimed(report: RunReport) -> list[tuple[int, float, float]]:
    return [(sample.k, sample.prox, sample.phi) for sample in report.trace]


class TestAtl2Reset:
    def test_degenerate_range(self) -> None:
        assert atl2_reset(5, 5, make_rng(0)) == 5
        assert atl2_reset(0, 0, make_rng(0)) == 0

    def test_draw_matches_philox_stream(self) -> None:
        expected = int(make_rng(42).integers(3, 90, endpoint=True))
        assert atl2_reset(3, 90, make_rng(42)) == expected
        assert 3 <= expected <= 90

    def test_range_is_order_independent(self) -> None:
        assert atl2_reset(90, 3, make_rng(42)) == atl2_reset(3, 90, make_rng(42))

    def test_covers_both_endpoints(self) -> None:
        rng = make_rng(1)
        draws = {atl2_reset(2, 4, rng) for _ in range(500)}
        assert draws == {2, 3, 4}


class TestStepSizes:
    def test_next_beta(self) -> None:
        assert next_beta(StepSchedule(0.5, 0)) == (1.0, StepSchedule(0.5, 1))
        assert next_beta(StepSchedule(0.5, 3)) == (0.125, StepSchedule(0.5, 4))

    def test_next_beta_large_exponent(self) -> None:
        beta, schedule = next_beta(StepSchedule(0.99, 100))
        assert beta == pytest.approx(0.366032341273229)
        assert schedule.ell == 101

    @pytest.mark.parametrize(
        ("y", "c", "beta", "expected"),
        [
            ([1.0, 1.0], [3.0, 4.0], 5.0, [-2.0, -3.0]),
            ([0.0, 0.0], [1.0, 0.0], 0.0, [0.0, 0.0]),
        ],
    )
    def test_perturb(self, y: list[float], c: list[float], beta: float, expected: list[float]) -> None:
        np.testing.assert_allclose(perturb(np.array(y), np.array(c), beta), expected)

    def test_perturb_lowers_target_by_beta_norm_c(self, rng: np.random.Generator) -> None:
        for _ in range(100):
            y, c = rng.normal(size=6), rng.normal(size=6)
            beta = float(rng.uniform(0.0, 2.0))
            drop = c @ y - c @ perturb(y, c, beta)
            assert drop == pytest.approx(beta * np.linalg.norm(c), rel=1e-9, abs=1e-12)

    def test_proximity_stop_check(self, identity_problem: Problem) -> None:
        assert proximity_stop_check(np.array([1.0, 1.0]), identity_problem, 0.0)
        assert not proximity_stop_check(np.array([10.0, 10.0]), identity_problem, 1e-10)


class TestLinsupRun:
    def test_step_size_law(self, small_problem: Problem) -> None:
        config = SolverConfig(alpha=0.9, inner_steps=7, record_steps=True)

        report = linsup_run(small_problem, config)

        assert len(report.steps) == 7 * report.sweeps
        for step in report.steps:
            assert step.beta == 0.9**step.ell
            assert step.beta <= 0.9**step.k
        assert report.beta_sum == pytest.approx(sum(step.beta for step in report.steps))
        assert report.beta_sum <= 7 / (1 - 0.9)

    def test_ell_bookkeeping(self, small_problem: Problem) -> None:
        config = SolverConfig(inner_steps=4, record_steps=True)

        report = linsup_run(small_problem, config)

        assert len(report.ell_history) == report.sweeps
        previous = 0
        for k, ell_end in enumerate(report.ell_history):
            ells = [step.ell for step in report.steps if step.k == k]
            start = ells[0]
            assert min(k, previous) <= start <= max(k, previous)
            assert ells == list(range(start, start + 4))
            assert ell_end == start + 4
            previous = ell_end

    def test_variable_inner_steps(self, small_problem: Problem) -> None:
        config = SolverConfig(inner_steps=2, inner_steps_increment=3, record_steps=True)

        report = linsup_run(small_problem, config)

        for k in range(report.sweeps):
            assert sum(step.k == k for step in report.steps) == 2 + 3 * k

    def test_perturbations_precede_the_sweep(self) -> None:
        # M is the unit box; the perturbed tens are projected back onto it in one sweep
        problem = Problem(A=np.eye(2), b=np.ones(2), c=[1.0, 1.0])

        report = linsup_run(problem, SolverConfig(inner_steps=1))

        assert report.sweeps == 1
        np.testing.assert_allclose(report.final_point, [1.0, 1.0])
        assert report.beta_sum == 1.0

    def test_control_arm_matches_plain_feasibility_seeking(self) -> None:
        for seed in range(20):
            problem = generate(GenSpec(rows=10, cols=12, seed=seed))
            config = SolverConfig(init=InitPolicy.RANDOM_ESCALATED, seed=seed, superiorize=False)

            control = linsup_run(problem, config)
            plain = seek_feasible(problem, config)

            assert _untimed(control) == _untimed(plain)
            np.testing.assert_array_equal(control.final_point, plain.final_point)
            assert control.beta_sum == 0.0

    def test_deterministic_given_seed(self, small_problem: Problem) -> None:
        config = SolverConfig(init=InitPolicy.RANDOM_ESCALATED, seed=99)

        first = linsup_run(small_problem, config)
        second = linsup_run(small_problem, config)

        assert _untimed(first) == _untimed(second)
        assert first.ell_history == second.ell_history
        np.testing.assert_array_equal(first.final_point, second.final_point)

    @pytest.mark.parametrize("seed", [2016, 7])
    def test_superiorization_lowers_target(self, seed: int) -> None:
        problem = generate(GenSpec(rows=80, cols=100, seed=seed))

        with_run = linsup_run(problem, SolverConfig(alpha=0.99, seed=seed))
        without = linsup_run(problem, SolverConfig(seed=seed, superiorize=False))

        assert with_run.stop_reason is StopReason.PROX_BELOW_EPSILON
        assert without.stop_reason is StopReason.PROX_BELOW_EPSILON
        assert with_run.final_phi < without.final_phi
        assert with_run.final_prox <= 1e-10


class TestSolverConfig:
    @pytest.mark.parametrize(
        "overrides",
        [
            {"alpha": 1.0},
            {"alpha": 0.0},
            {"inner_steps": 0},
            {"relaxation": 2.0},
            {"relaxation": 0.0},
            {"prox_epsilon": float("inf")},
            {"prox_epsilon": -1.0},
            {"seed": -1},
            {"seed": 2**64},
            {"init": InitPolicy.EXPLICIT},
            {"prox_epsilon": None},
        ],
    )
    def test_rejects_invalid_settings(self, overrides: dict) -> None:
        with pytest.raises(ValidationError):
            SolverConfig(**overrides)

    def test_defaults(self) -> None:
        config = SolverConfig()
        assert config.alpha == 0.99
        assert config.inner_steps == 30
        assert config.relaxation == 1.0
        assert config.prox_epsilon == 1e-10
        assert config.init is InitPolicy.ALL_TENS
