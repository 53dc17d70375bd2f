import numpy as np
import pytest
from scipy.linalg import expm

OMEGA2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def random_symplectic(rng, s, scale=0.3):
    """exp(Ω H) with H symmetric is symplectic."""
    h = rng.normal(scale=scale, size=(2 * s, 2 * s))
    h = (h + h.T) / 2
    return expm(np.kron(np.eye(s), OMEGA2) @ h)


def random_physical(rng, s=2):
    """Random physical covariance with a symplectic spectrum known by construction.

    Returns ``(gamma, nu)`` with ``nu`` sorted descending.
    """
    nu = 0.5 + rng.exponential(1.0, size=s)
    S = random_symplectic(rng, s)
    gamma = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return (gamma + gamma.T) / 2, np.sort(nu)[::-1]


@pytest.fixture
def rng():
    return np.random.default_rng(20041214)


# one summary line per acceptance criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    n, title = marker.args
    ok = call.excinfo is None
    prev = _criteria.get(n, (title, True, []))
    failed = prev[2] + ([item.name] if not ok else [])
    _criteria[n] = (title, prev[1] and ok, failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok, failed = _criteria[n]
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        terminalreporter.write_line(line)
