"""
Displacement-referred quantum noise of a laser interferometer.

The model is the single-pole optomechanical coupling

    K(f) = 2 J gamma / ((2 pi)^3 f^2 (gamma^2 + f^2)),   J = 8 pi nu0 P_arm / (M L c)

with the free-mass SQL x_SQL(f) = sqrt(8 hbar / (M f^2)) / (2 pi), and the
squeezed-injection spectrum

    S_x = x_SQL^2 / 2 (1/K + K) [V_- cos^2(theta - vt) + V_+ sin^2(theta - vt)]

where vt = arctan K and V_-/V_+ are the squeezed and anti-squeezed variance
ratios of the injected field (e^{-2r}, e^{2r} when lossless).

Squeeze angle convention: ``theta = 0`` injects phase-squeezed light
(amplitude quadrature anti-squeezed), so back action grows with r and the
SQL cannot be beaten.  `theta` is measured from the amplitude quadrature to
the *anti-squeezed* axis.  `sqlnoise.gaussian` measures its angle to the
squeezed axis instead; see :func:`sqlnoise.gaussian.injected_state`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import C, HBAR, FrequencyGrid, _readonly

NM_1064_HZ = C / 1064e-9

COMPONENTS = ("qmn", "qbn", "total_quantum", "sql", "classical", "total")


@dataclass(frozen=True)
class InterferometerConfig:
    """Parameters of the single-pole model.

    `detector_bandwidth` is gamma in Hz, used verbatim in K(f).  Whether it is a
    half or full width is left to whoever fits (arm_power, detector_bandwidth).
    """

    mirror_mass: float
    arm_length: float
    arm_power: float
    laser_frequency: float = NM_1064_HZ
    detector_bandwidth: float = 450.0

    def __post_init__(self):
        for name in ("mirror_mass", "arm_length", "arm_power",
                     "laser_frequency", "detector_bandwidth"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a finite number > 0, got {v!r}")

    @property
    def coupling(self):
        """J = 8 pi nu0 P_arm / (M L c), in s^-3."""
        return (8 * math.pi * self.laser_frequency * self.arm_power /
                (self.mirror_mass * self.arm_length * C))

    @property
    def kimble_constant(self):
        """A = 2 J gamma / (2 pi)^3, so that K(f) = A / (f^2 (gamma^2 + f^2))."""
        return 2 * self.coupling * self.detector_bandwidth / (2 * math.pi) ** 3


@dataclass(frozen=True)
class Susceptibility:
    kind: str
    mass: float
    resonance: float | None = None
    quality: float | None = None

    def __post_init__(self):
        if self.kind not in ("free_mass", "damped_oscillator"):
            raise ValueError(f"unknown susceptibility kind {self.kind!r}")
        if not self.mass > 0:
            raise ValueError("mass must be > 0")
        if self.kind == "damped_oscillator":
            if self.resonance is None or not self.resonance > 0:
                raise ValueError("damped oscillator needs resonance > 0")
            if self.quality is None or not self.quality > 0:
                raise ValueError("damped oscillator needs quality > 0")

    @classmethod
    def free_mass(cls, mass):
        return cls("free_mass", mass)

    @classmethod
    def oscillator(cls, mass, resonance, quality):
        return cls("damped_oscillator", mass, resonance, quality)


class NoiseSpectrum:
    """One-sided displacement PSD (m^2/Hz) on a frequency grid."""

    __slots__ = ("grid", "component", "values")

    def __init__(self, grid, component, values):
        if not isinstance(grid, FrequencyGrid):
            grid = FrequencyGrid(grid)
        if component not in COMPONENTS:
            raise ValueError(f"unknown component {component!r}")
        vals = np.asarray(values, dtype=float).ravel()
        if vals.shape != (len(grid),):
            raise ValueError(
                f"{vals.size} values for a grid of {len(grid)} points")
        if np.any(np.isnan(vals)) or np.any(vals < 0):
            raise ValueError("PSD values must be >= 0")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "component", component)
        object.__setattr__(self, "values", _readonly(vals))

    def __setattr__(self, name, value):
        raise AttributeError("NoiseSpectrum is immutable")

    def __len__(self):
        return len(self.grid)

    def __repr__(self):
        return f"NoiseSpectrum({self.component!r}, {self.grid!r})"

    @property
    def frequencies(self):
        return self.grid.points

    @property
    def asd(self):
        return np.sqrt(self.values)


def _positive_freq(f):
    f = np.asarray(f, dtype=float)
    if np.any(~(f > 0)):
        raise ValueError("frequency must be > 0")
    return f


def _scalar_or_array(x):
    return x.item() if np.ndim(x) == 0 else x


def susceptibility(s, f):
    """Mechanical response chi(f) in m/N."""
    f = _positive_freq(f)
    w = 2 * np.pi * f
    if s.kind == "free_mass":
        chi = -1.0 / (s.mass * w ** 2) + 0j
    else:
        w0 = 2 * np.pi * s.resonance
        chi = 1.0 / (s.mass * (w0 ** 2 - w ** 2 + 1j * w0 * w / s.quality))
    return _scalar_or_array(chi)


def kimble_factor(cfg, f):
    f = _positive_freq(f)
    gamma = cfg.detector_bandwidth
    k = cfg.kimble_constant / (f ** 2 * (gamma ** 2 + f ** 2))
    return _scalar_or_array(k)


def sql_asd(mass, f):
    """Free-mass SQL amplitude spectral density in m/sqrt(Hz)."""
    if not mass > 0:
        raise ValueError("mass must be > 0")
    f = _positive_freq(f)
    return _scalar_or_array(np.sqrt(8 * HBAR / (mass * f ** 2)) / (2 * np.pi))


def sql_spectrum(cfg, grid):
    return NoiseSpectrum(grid, "sql", sql_asd(cfg.mirror_mass, grid.points) ** 2)


def input_output(K, a_X, a_Y, signal):
    """Output quadratures (b_X, b_Y) of the movable mirror, phase factors dropped.

    `signal` is the already-scaled term alpha chi F_sig.
    """
    return a_X, a_Y - K * a_X - signal


def quantum_noise_components(cfg, grid):
    """Unsqueezed (qmn, qbn, total_quantum) spectra."""
    k = np.asarray(kimble_factor(cfg, grid.points))
    half_sql = sql_asd(cfg.mirror_mass, grid.points) ** 2 / 2
    qmn = half_sql / k
    qbn = half_sql * k
    return (NoiseSpectrum(grid, "qmn", qmn),
            NoiseSpectrum(grid, "qbn", qbn),
            NoiseSpectrum(grid, "total_quantum", qmn + qbn))


def quantum_noise_unsqueezed(cfg, grid):
    return quantum_noise_components(cfg, grid)[2]


def _variance_ratios(r, efficiency):
    if r < 0:
        raise ValueError(f"squeeze factor must be >= 0, got {r}")
    if not 0 <= efficiency <= 1:
        raise ValueError(f"efficiency must lie in [0, 1], got {efficiency}")
    v_sqz = efficiency * math.exp(-2 * r) + (1 - efficiency)
    v_anti = efficiency * math.exp(2 * r) + (1 - efficiency)
    return v_sqz, v_anti


def squeezing_bracket(r, theta, vartheta, efficiency=1.0):
    """Variance ratio of the injected field along the detected direction."""
    v_sqz, v_anti = _variance_ratios(r, efficiency)
    d = np.asarray(theta) - np.asarray(vartheta)
    return v_sqz * np.cos(d) ** 2 + v_anti * np.sin(d) ** 2


def quantum_noise_squeezed(cfg, r, theta, grid, efficiency=1.0):
    """Total quantum noise with squeezed vacuum injected at angle `theta` (rad).

    `efficiency` is the total quantum efficiency applied to the squeezed field
    (1 reproduces the lossless expression).
    """
    k = np.asarray(kimble_factor(cfg, grid.points))
    x2 = sql_asd(cfg.mirror_mass, grid.points) ** 2
    bracket = squeezing_bracket(r, theta, np.arctan(k), efficiency)
    return NoiseSpectrum(grid, "total_quantum", x2 / 2 * (1 / k + k) * bracket)


def quantum_noise_squeezed_components(cfg, r, theta, grid, efficiency=1.0):
    """(qmn, qbn, total_quantum) with squeezed injection.

    qmn is the phase-quadrature (shot) part and qbn the amplitude-quadrature
    (radiation pressure) part; with theta not a multiple of pi/2 the
    quadrature correlation makes total_quantum differ from qmn + qbn.
    """
    v_sqz, v_anti = _variance_ratios(r, efficiency)
    k = np.asarray(kimble_factor(cfg, grid.points))
    half_sql = sql_asd(cfg.mirror_mass, grid.points) ** 2 / 2
    c, s = math.cos(theta), math.sin(theta)
    qmn = half_sql / k * (v_sqz * c * c + v_anti * s * s)
    qbn = half_sql * k * (v_sqz * s * s + v_anti * c * c)
    total = quantum_noise_squeezed(cfg, r, theta, grid, efficiency)
    return (NoiseSpectrum(grid, "qmn", qmn),
            NoiseSpectrum(grid, "qbn", qbn),
            total)


def total_noise(quantum, classical):
    if quantum.grid != classical.grid:
        raise ValueError("spectra are defined on different grids")
    return NoiseSpectrum(quantum.grid, "total", quantum.values + classical.values)


def arm_power_for_f_sql(f_sql, mirror_mass, arm_length,
                        laser_frequency=NM_1064_HZ, detector_bandwidth=450.0):
    """Arm power that puts K(f_sql) = 1 for the given geometry."""
    if not f_sql > 0:
        raise ValueError("f_sql must be > 0")
    g = detector_bandwidth
    kc = f_sql ** 2 * (g ** 2 + f_sql ** 2)
    coupling = kc * (2 * math.pi) ** 3 / (2 * g)
    return coupling * mirror_mass * arm_length * C / (8 * math.pi * laser_frequency)


def ligo_like(f_sql=30.0, detector_bandwidth=450.0):
    """40 kg mirrors, 4 km arms, 1064 nm, arm power fitted to `f_sql`."""
    p = arm_power_for_f_sql(f_sql, 40.0, 4000.0, NM_1064_HZ, detector_bandwidth)
    return InterferometerConfig(40.0, 4000.0, p, NM_1064_HZ, detector_bandwidth)
