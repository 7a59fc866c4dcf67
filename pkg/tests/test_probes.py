import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sqlnoise import optomech as om
from sqlnoise import probes
from sqlnoise.core import make_log_grid


def bisection_bound(model, observed, band, tol):
    """Independent oracle: largest feasible B by bisection."""
    mask = model.grid.mask(*band)
    m = model.values[mask]
    cap = observed.values[mask] * (1 + tol)
    feasible = lambda b: bool(np.all(m + b <= cap))
    if not feasible(0.0):
        return 0.0
    lo, hi = 0.0, float(cap.max())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return lo


def test_marshall_width():
    w = probes.zero_point_width(probes.MARSHALL_MIRROR)
    assert w == pytest.approx(5.79e-14, abs=1e-16)
    by_hand = math.sqrt(1.054571817e-34 / (4 * math.pi * 5e-12 * 500))
    assert w == pytest.approx(by_hand, rel=1e-14)


def test_width_scalings():
    a = probes.zero_point_width(probes.MechanicalOscillator(1e-3, 10))
    b = probes.zero_point_width(probes.MechanicalOscillator(4e-3, 10))
    assert b == pytest.approx(a / 2, rel=1e-14)
    unit = probes.MechanicalOscillator(1.054571817e-34 / (4 * math.pi), 1.0)
    assert probes.zero_point_width(unit) == pytest.approx(1.0, rel=1e-14)


def test_marshall_report_flags_quoted_value():
    rep = probes.marshall_report()
    assert rep.discrepant
    assert rep.quoted_width == 6e-13
    assert rep.ratio == pytest.approx(10.36, abs=0.01)
    assert not probes.marshall_report(quoted=5.8e-14).discrepant


def test_oscillator_validation():
    with pytest.raises(ValueError):
        probes.MechanicalOscillator(0, 1)
    with pytest.raises(ValueError):
        probes.DecoherenceScenario("x", 0)


def test_survival():
    assert probes.survival_fraction(probes.THERMAL_50HZ, 0) == 1
    assert probes.survival_fraction(probes.THERMAL_50HZ, 100e-6) == pytest.approx(
        math.exp(-1 / 30), rel=1e-14)
    assert probes.survival_fraction(probes.THERMAL_50HZ, 100e-6) == pytest.approx(0.967, abs=5e-4)
    assert probes.survival_fraction(probes.GRAVITATIONAL, 100e-6) == pytest.approx(3.72e-44, rel=1e-2)
    with pytest.raises(ValueError):
        probes.survival_fraction(probes.GRAVITATIONAL, -1)


@given(st.floats(1e-9, 1), st.floats(0, 1e-2), st.floats(0, 1e-2))
def test_survival_multiplicative(tau, t1, t2):
    sc = probes.DecoherenceScenario("x", tau)
    lhs = probes.survival_fraction(sc, t1) * probes.survival_fraction(sc, t2)
    assert lhs == pytest.approx(probes.survival_fraction(sc, t1 + t2), rel=1e-12, abs=1e-300)


def _spectra(values_model, values_obs, grid):
    model = om.NoiseSpectrum(grid, "total_quantum", values_model)
    obs = om.NoiseSpectrum(grid, "total", values_obs)
    sql = om.NoiseSpectrum(grid, "sql", np.full(len(grid), 1e-40))
    return model, obs, sql


def test_bound_self_consistent():
    g = make_log_grid(10, 100, 20)
    vals = np.linspace(1e-40, 3e-40, 20)
    model, obs, sql = _spectra(vals, vals, g)
    b = probes.decoherence_upper_bound(model, obs, sql, (20, 60), tol=0.05)
    mask = g.mask(20, 60)
    assert b == pytest.approx(0.05 * vals[mask].min(), rel=1e-12)
    assert probes.decoherence_upper_bound(model, obs, sql, (20, 60), tol=0) == 0


def test_bound_constructed_offset():
    g = make_log_grid(10, 100, 20)
    vals = np.linspace(1e-40, 3e-40, 20)
    model, obs, sql = _spectra(vals, vals + 1e-41, g)
    assert probes.decoherence_upper_bound(model, obs, sql, (10, 100), tol=0) == \
        pytest.approx(1e-41, rel=1e-9)


def test_bound_floored_at_zero():
    g = make_log_grid(10, 100, 5)
    model, obs, sql = _spectra(np.full(5, 2.0), np.full(5, 1.0), g)
    assert probes.decoherence_upper_bound(model, obs, sql, (10, 100)) == 0.0


def test_bound_errors():
    g = make_log_grid(10, 100, 5)
    model, obs, sql = _spectra(np.ones(5), np.ones(5), g)
    with pytest.raises(ValueError):
        probes.decoherence_upper_bound(model, obs, sql, (11, 12))
    other = om.NoiseSpectrum(make_log_grid(10, 100, 6), "total", np.ones(6))
    with pytest.raises(ValueError):
        probes.decoherence_upper_bound(model, other, sql, (10, 100))


def test_bound_matches_bisection(rng):
    for _ in range(50):
        g = make_log_grid(1, 1e3, 64)
        m = 10 ** rng.uniform(-41, -39, 64)
        o = m * 10 ** rng.uniform(-0.1, 0.5, 64)
        model, obs, sql = _spectra(m, o, g)
        band = tuple(sorted(10 ** rng.uniform(0, 3, 2)))
        if not g.mask(*band).any():
            continue
        tol = rng.uniform(0, 0.1)
        closed = probes.decoherence_upper_bound(model, obs, sql, band, tol)
        brute = bisection_bound(model, obs, band, tol)
        assert closed == pytest.approx(brute, rel=1e-9, abs=1e-60)


def test_bound_with_sub_sql_observation():
    """A sub-SQL observation caps the extra noise below the SQL margin."""
    cfg = om.ligo_like()
    g = make_log_grid(10, 200, 120)
    r = 13.8 * math.log(10) / 20
    model = om.quantum_noise_squeezed(cfg, r, math.radians(35), g, 0.54)
    sql = om.sql_spectrum(cfg, g)
    observed = om.NoiseSpectrum(g, "total", model.values * 1.02)
    band = (30, 40)
    mask = g.mask(*band)
    assert np.all(observed.values[mask] < sql.values[mask])
    b = probes.decoherence_upper_bound(model, observed, sql, band, tol=0.0)
    assert 0 < b < float(np.min(sql.values[mask] - model.values[mask]))
    assert b == pytest.approx(bisection_bound(model, observed, band, 0.0), rel=1e-9)
