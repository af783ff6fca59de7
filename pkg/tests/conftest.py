import numpy as np
import pytest

from ihtgap.models.dataset import Dataset
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.seed import Seed


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale reproduction runs, selected with -m slow")


def pytest_collection_modifyitems(config, items):
    if "slow" in (config.getoption("markexpr") or ""):
        return
    skip_slow = pytest.mark.skip(reason="slow reproduction run; select with -m slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def orthonormal_design(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    """An n-by-p design with X'X/n = I (needs n >= p)."""
    q, _ = np.linalg.qr(rng.standard_normal((n, p)))
    return np.sqrt(n) * q


def sparse_vector(rng: np.random.Generator, p: int, k: int, scale: float = 1.0) -> np.ndarray:
    w = np.zeros(p)
    w[rng.choice(p, size=k, replace=False)] = scale * rng.standard_normal(k)
    return w


def squared_problem(features, responses) -> Problem:
    return Problem(loss_kind=LossKind.SQUARED, data=Dataset(features=features, responses=responses))


def logistic_problem(features, responses, margin_scale: float = 2.0) -> Problem:
    return Problem(loss_kind=LossKind.LOGISTIC, data=Dataset(features=features, responses=responses),
                   margin_scale=margin_scale)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def seed():
    return Seed(value=12345)
