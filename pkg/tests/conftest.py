import math

import numpy as np
import pytest

from sqlnoise.optomech import InterferometerConfig

_ACCEPTANCE = []


def random_config(rng):
    """Interferometer spanning tabletop to km scale."""
    return InterferometerConfig(
        mirror_mass=10 ** rng.uniform(-4, 3),
        arm_length=10 ** rng.uniform(-1, 4),
        arm_power=10 ** rng.uniform(-2, 6),
        laser_frequency=10 ** rng.uniform(14, 15),
        detector_bandwidth=10 ** rng.uniform(0, 4),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20201022)


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        _ACCEPTANCE.append((number, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE, key=lambda t: t[0]):
        tag = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{tag}] criterion {number:>2}: {detail}")


def rel(a, b):
    return abs(a - b) / abs(b)


def deg(x):
    return math.radians(x)
