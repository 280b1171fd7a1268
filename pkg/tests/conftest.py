import numpy as np
import pytest

# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_points(rng, n, radius=2.0, modes=1):
    """``n`` complex points per mode, uniform in the disc of the given radius."""
    rad = radius * np.sqrt(rng.uniform(size=(modes, n)))
    ang = rng.uniform(0, 2 * np.pi, size=(modes, n))
    return rad * np.exp(1j * ang)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
