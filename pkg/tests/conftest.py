import numpy as np
import pytest


def make_signal(rng, n):
    """Mix of plain noise, offset noise, scaled noise and noisy sinusoids."""
    kind = rng.integers(4)
    t = np.arange(n)
    if kind == 0:
        return rng.normal(size=n)
    if kind == 1:
        return rng.normal(size=n) + rng.uniform(-5, 5)
    if kind == 2:
        return 100.0 * rng.normal(size=n)
    freq = rng.integers(1, max(2, n // 3))
    return np.sin(2 * np.pi * freq * t / n) + 0.3 * rng.normal(size=n)


def random_suite(seed, count, lengths):
    rng = np.random.default_rng(seed)
    return [make_signal(rng, int(rng.choice(lengths))) for _ in range(count)]


def random_simplex(rng, k, size=None):
    return rng.dirichlet(np.ones(k), size=size)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture(scope="session")
def solver_suite():
    """(y, K_eff) pairs: 50 signals with N in {5,7,9,11}, K_eff in {1,2,3}."""
    pairs = []
    for y in random_suite(7, 50, [5, 7, 9, 11]):
        k = (len(y) - 1) // 2
        pairs.extend((y, ke) for ke in (1, 2, 3) if ke <= k)
    return pairs


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
