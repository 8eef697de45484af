import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from depcov.model import ContingencyTable2x2, DiscreteBivariate  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("default")

EXAMPLE1 = [(-1.0, 1.0, 0.25), (1.0, 1.0, 0.25), (0.0, 0.6, 0.25), (0.0, -1.0, 0.25)]


@pytest.fixture
def example1():
    return DiscreteBivariate(EXAMPLE1)


@pytest.fixture
def example2():
    return ContingencyTable2x2.from_counts(10, 5, 14, 11)


def random_distribution(rng, max_atoms=8, scale=3.0, grid=None):
    """Random small distribution; ``grid`` rounds coordinates to force shared values."""
    k = int(rng.integers(1, max_atoms + 1))
    xy = rng.uniform(-scale, scale, size=(k, 2))
    if grid:
        xy = np.round(xy * grid) / grid
    p = rng.uniform(0.05, 1.0, size=k)
    p = p / p.sum()
    p[-1] = 1.0 - p[:-1].sum()
    return DiscreteBivariate(zip(xy[:, 0], xy[:, 1], p))


def random_product(rng, kx=3, ky=3):
    xs = rng.uniform(-2, 2, kx)
    ys = rng.uniform(-2, 2, ky)
    px = rng.dirichlet(np.ones(kx))
    py = rng.dirichlet(np.ones(ky))
    return xs, px, ys, py


# --- acceptance summary ------------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL for the acceptance criterion named by the test's marker."""
    number, title = request.node.get_closest_marker("criterion").args
    detail = {}
    yield detail
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    ACCEPTANCE_RESULTS[number] = ("PASS" if ok else "FAIL", title, detail.get("info", ""))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        status, title, info = ACCEPTANCE_RESULTS[number]
        line = f"{status} criterion {number:2d}: {title}"
        terminalreporter.write_line(line + (f" ({info})" if info else ""))
