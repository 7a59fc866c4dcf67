import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sqlnoise.core import (C, HBAR, FrequencyGrid, ModeWindow, PhysConstants,
                           make_log_grid, min_fourier_area)


def test_constants():
    assert HBAR == 1.054571817e-34
    assert C == 299792458
    assert PhysConstants().hbar == HBAR


@pytest.mark.parametrize("args, expected", [
    ((10, 1000, 3), [10, 100, 1000]),
    ((10, 10000, 4), [10, 100, 1000, 10000]),
])
def test_log_grid_decades(args, expected):
    assert list(make_log_grid(*args)) == expected


@pytest.mark.parametrize("args", [
    (100, 100, 2), (1000, 10, 5), (0, 10, 5), (-1, 10, 5), (1, 10, 1), (1, 10, 2.5),
])
def test_log_grid_rejects(args):
    with pytest.raises(ValueError):
        make_log_grid(*args)


@given(st.floats(1e-3, 1e3), st.floats(1.001, 1e4), st.integers(2, 500))
def test_log_grid_endpoints_exact(f_min, span, n):
    g = make_log_grid(f_min, f_min * span, n)
    assert len(g) == n
    assert g.points[0] == f_min
    assert g.points[-1] == f_min * span
    assert np.all(np.diff(g.points) > 0)


def test_grid_validation():
    with pytest.raises(ValueError):
        FrequencyGrid([1, 1, 2])
    with pytest.raises(ValueError):
        FrequencyGrid([0, 1])
    with pytest.raises(ValueError):
        FrequencyGrid([])


def test_grid_is_immutable():
    g = make_log_grid(1, 10, 5)
    with pytest.raises(ValueError):
        g.points[0] = 3.0
    with pytest.raises(AttributeError):
        g.foo = 1


@given(st.lists(st.floats(1e-6, 1e9, allow_nan=False), min_size=1, max_size=50, unique=True))
def test_grid_json_roundtrip_bit_exact(pts):
    g = FrequencyGrid(sorted(pts))
    back = FrequencyGrid.from_json(g.to_json())
    assert back == g
    assert back.points.tobytes() == g.points.tobytes()


def test_min_fourier_area():
    assert min_fourier_area() == pytest.approx(0.07957747, abs=1e-8)
    assert min_fourier_area() == 1 / (4 * math.pi)


def test_gw150914_tile_is_valid():
    w = ModeWindow(130, 25, 0.42, 0.0032)
    assert w.area == pytest.approx(0.08)
    assert w.area >= min_fourier_area()


def test_sub_fourier_tile_rejected():
    with pytest.raises(ValueError):
        ModeWindow(100, 10, 0, 0.005)
    assert not ModeWindow.is_valid(10, 0.005)


def test_tile_exactly_at_limit():
    df = 10.0
    dt = min_fourier_area() / df
    ModeWindow(100, df, 0, dt)
    ModeWindow(100, df, 0, dt * (1 - 1e-13))
    with pytest.raises(ValueError):
        ModeWindow(100, df, 0, dt * (1 - 1e-11))
