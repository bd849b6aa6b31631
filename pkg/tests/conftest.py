import math

import numpy as np
import pytest

from jnbellman import DomainParams, Point, solve_xi


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def params2() -> DomainParams:
    return solve_xi(2.0)


@pytest.fixture(scope="session")
def params10() -> DomainParams:
    return solve_xi(10.0)


def random_point(params: DomainParams, rng, x1_range=(-3.0, 3.0), margin=1e-4) -> Point:
    """Random strip point, log-uniform between the boundaries."""
    x1 = rng.uniform(*x1_range)
    log_r = rng.uniform(math.log1p(margin), math.log(params.C) - margin)
    return Point(x1, math.exp(x1) * math.exp(log_r))


def random_C(rng, lo=1.01, hi=1000.0) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))
