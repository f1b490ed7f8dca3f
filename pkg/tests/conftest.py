import numpy as np
import pytest

from linsup.models.generation import GenSpec
from linsup.models.problem import Problem
from linsup.services.problem_gen import generate


@pytest.fixture
def identity_problem() -> Problem:
    return Problem(A=[[1.0, 0.0], [0.0, 1.0]], b=[1.0, 1.0], c=[1.0, 1.0])


@pytest.fixture
def small_problem() -> Problem:
    return generate(GenSpec(rows=8, cols=10, seed=7))


@pytest.fixture(scope="session")
def reference_problem() -> Problem:
    """The smallest instance size used in the experiments, 80 x 100."""
    return generate(GenSpec(rows=80, cols=100, seed=2016))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
