"""
Physical constants, frequency grids and Fourier-limited mode windows.

All frequencies are Fourier frequencies in Hz (never angular) and all
spectral densities are one-sided.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

HBAR = 1.054571817e-34  # J s, CODATA 2018 (exact in SI 2019 via h)
C = 299792458.0  # m/s

# relative slack allowed on invariant checks
REL_EPS = 1e-12


@dataclass(frozen=True)
class PhysConstants:
    hbar: float = HBAR
    c: float = C


CONSTANTS = PhysConstants()


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


class FrequencyGrid:
    """Strictly increasing, positive Fourier frequencies in Hz."""

    __slots__ = ("_points",)

    def __init__(self, points):
        pts = np.asarray(points, dtype=float).ravel()
        if pts.size == 0:
            raise ValueError("frequency grid is empty")
        if not np.all(np.isfinite(pts)):
            raise ValueError("frequency grid contains non-finite values")
        if np.any(pts <= 0):
            raise ValueError("frequency grid points must be > 0")
        if pts.size > 1 and np.any(np.diff(pts) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        object.__setattr__(self, "_points", _readonly(pts))

    def __setattr__(self, name, value):
        raise AttributeError("FrequencyGrid is immutable")

    @property
    def points(self):
        return self._points

    def __len__(self):
        return self._points.size

    def __iter__(self):
        return iter(self._points.tolist())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._points, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, FrequencyGrid):
            return NotImplemented
        return np.array_equal(self._points, other._points)

    def __hash__(self):
        return hash(self._points.tobytes())

    def __repr__(self):
        return (f"FrequencyGrid(n={len(self)}, "
                f"f_min={self._points[0]:g}, f_max={self._points[-1]:g})")

    def mask(self, f_lo, f_hi):
        """Boolean mask of bins with f_lo <= f <= f_hi."""
        return (self._points >= f_lo) & (self._points <= f_hi)

    def to_json(self):
        # repr-based float encoding in json is round-trip exact
        return json.dumps({"points": self._points.tolist()})

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text)["points"])


def make_log_grid(f_min, f_max, n):
    """`n` log-spaced frequencies from `f_min` to `f_max` with exact endpoints."""
    if not (f_min > 0 and f_max > 0):
        raise ValueError(f"grid bounds must be > 0, got ({f_min}, {f_max})")
    if not f_min < f_max:
        raise ValueError(f"need f_min < f_max, got ({f_min}, {f_max})")
    if int(n) != n or n < 2:
        raise ValueError(f"need an integer n >= 2, got {n}")
    pts = np.logspace(math.log10(f_min), math.log10(f_max), int(n))
    # logspace rounding can land a point a few ulp off a decade; snap those
    snapped = 10.0 ** np.round(np.log10(pts))
    close = np.abs(pts - snapped) <= 4 * np.spacing(pts)
    pts = np.where(close, snapped, pts)
    pts[0] = f_min
    pts[-1] = f_max
    return FrequencyGrid(pts)


def min_fourier_area():
    """Smallest time-frequency area of an energy distribution, 1/(4 pi)."""
    return 1.0 / (4.0 * math.pi)


@dataclass(frozen=True)
class ModeWindow:
    """Time-frequency tile f_center +- half_bandwidth, t_center +- half_duration."""

    f_center: float
    half_bandwidth: float
    t_center: float
    half_duration: float

    def __post_init__(self):
        if not self.half_bandwidth > 0:
            raise ValueError("half_bandwidth must be > 0")
        if not self.half_duration > 0:
            raise ValueError("half_duration must be > 0")
        area = self.area
        if area < min_fourier_area() * (1 - REL_EPS):
            raise ValueError(
                f"mode window area {area:.6g} is below the Fourier limit "
                f"{min_fourier_area():.6g}")

    @property
    def area(self):
        return self.half_bandwidth * self.half_duration

    @staticmethod
    def is_valid(half_bandwidth, half_duration):
        return (half_bandwidth > 0 and half_duration > 0 and
                half_bandwidth * half_duration
                >= min_fourier_area() * (1 - REL_EPS))
