"""
Locating the SQL frequency and tuning the injection angle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optomech import kimble_factor, quantum_noise_squeezed, sql_asd

INV_PHI = (math.sqrt(5) - 1) / 2

PRESCAN_POINTS = 64


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class BandObjective:
    band: tuple
    weighting: str = "flat"

    def __post_init__(self):
        lo, hi = self.band
        if not 0 < lo < hi:
            raise ValueError(f"need 0 < f_lo < f_hi, got {self.band}")
        if self.weighting not in ("flat", "inverse_sql"):
            raise ValueError(f"unknown weighting {self.weighting!r}")
        object.__setattr__(self, "band", (float(lo), float(hi)))

    @property
    def center(self):
        """Geometric band centre."""
        return math.sqrt(self.band[0] * self.band[1])


def find_f_sql(cfg, rtol=1e-12):
    """Frequency where K(f) = 1, by bisection in log f."""
    # K is strictly decreasing from +inf to 0; grow a bracket around 1 Hz
    lo, hi = 1.0, 1.0
    while kimble_factor(cfg, lo) < 1:
        lo /= 16
    while kimble_factor(cfg, hi) > 1:
        hi *= 16
    if lo == hi:
        return lo
    log_k = lambda u: math.log(kimble_factor(cfg, math.exp(u)))
    u_lo, u_hi = math.log(lo), math.log(hi)
    for _ in range(2000):
        mid = 0.5 * (u_lo + u_hi)
        # width in log f is a relative width in f
        if u_hi - u_lo <= rtol:
            return math.exp(mid)
        if log_k(mid) > 0:
            u_lo = mid
        else:
            u_hi = mid
    raise ConvergenceError("f_sql bisection did not converge")


def optimal_angle_at(cfg, f):
    """Injection angle arctan K(f) that minimises the noise at `f` alone."""
    return math.atan(kimble_factor(cfg, f))


def golden_section(func, a, b, tol=1e-6, maxiter=500):
    """Minimiser of a unimodal `func` on [a, b] to within `tol`."""
    if b < a:
        a, b = b, a
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(maxiter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = func(d)
    else:
        raise ConvergenceError("golden-section search did not converge")
    return (c, fc) if fc <= fd else (d, fd)


def band_cost_function(cfg, r, obj, grid, efficiency=1.0):
    """theta -> weighted in-band sum of the squeezed quantum noise."""
    mask = grid.mask(*obj.band)
    if not mask.any():
        raise ValueError(f"band {obj.band} contains no grid bins")
    if obj.weighting == "inverse_sql":
        weights = 1.0 / sql_asd(cfg.mirror_mass, grid.points[mask]) ** 2
    else:
        weights = np.ones(int(mask.sum()))

    def cost(theta):
        s = quantum_noise_squeezed(cfg, r, theta, grid, efficiency)
        return float(np.dot(weights, s.values[mask]))

    return cost


@dataclass(frozen=True)
class AngleOptimum:
    angle: float
    cost: float
    flat: bool
    scan_angles: np.ndarray
    scan_costs: np.ndarray


def optimize_band_angle(cfg, r, obj, grid, efficiency=1.0, tol=1e-6):
    """Injection angle in [0, pi/2] minimising the band cost.

    A coarse scan picks the best bracket; golden-section refines it.  When
    the cost does not depend on theta (r = 0) the scan minimum is returned
    with ``flat=True``.
    """
    lo_f, hi_f = obj.band
    if lo_f < grid.points[0] or hi_f > grid.points[-1]:
        raise ValueError(f"band {obj.band} lies outside the grid")
    cost = band_cost_function(cfg, r, obj, grid, efficiency)
    scan = np.linspace(0.0, math.pi / 2, PRESCAN_POINTS)
    costs = np.array([cost(t) for t in scan])
    i = int(np.argmin(costs))
    spread = costs.max() - costs.min()
    if spread <= 1e-12 * abs(costs.max()):
        return AngleOptimum(float(scan[i]), float(costs[i]), True, scan, costs)
    a = scan[max(i - 1, 0)]
    b = scan[min(i + 1, scan.size - 1)]
    theta, c = golden_section(cost, a, b, tol=tol)
    if costs[i] < c:
        theta, c = float(scan[i]), float(costs[i])
    return AngleOptimum(float(theta), float(c), False, scan, costs)
