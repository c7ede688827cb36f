import numpy as np
import pytest

from pagecert.metrics import (
    PageParams,
    fubini_study_metric,
    page_metric,
    round_s4_metric,
)

# Regression constants measured at the first certified run.
PAGE_EINSTEIN_CONSTANT = 3.2380673031846854
PERTURBED_RESIDUAL = 38.05297066522197


@pytest.fixture(scope="session")
def params() -> PageParams:
    return PageParams.certified()


@pytest.fixture(scope="session")
def page(params):
    return page_metric(params)


@pytest.fixture(scope="session")
def s4():
    return round_s4_metric()


@pytest.fixture(scope="session")
def cp2():
    return fubini_study_metric()


@pytest.fixture(scope="session")
def all_metrics(page, s4, cp2):
    return (page, s4, cp2)


def central_fd(fn, x: float, h: float = 1e-5):
    """Central finite differences: (first, second) derivative estimates."""
    fp = fn(x + h)
    fm = fn(x - h)
    f0 = fn(x)
    return (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)


def interior_samples(metric, n: int, rng: np.random.RandomState, margin: float = 0.01):
    lo, hi = metric.domain
    return rng.uniform(lo + margin, hi - margin, n)
