"""
Single-mode Gaussian quadrature states.

A state is its 2x2 covariance matrix in (X, Y) with the vacuum variance 1/4
per quadrature, so Heisenberg reads det >= 1/16.  Means are not tracked.

Angles: `squeezed(r, theta)` puts the *squeezed* axis at `theta` from the
amplitude quadrature X.  Homodyne angle `zeta` reads X sin(zeta) + Y cos(zeta),
so zeta = 0 is the phase quadrature Y.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

VACUUM_VARIANCE = 0.25
HEISENBERG_DET = VACUUM_VARIANCE ** 2
_TOL = 1e-12


@dataclass(frozen=True)
class CovarianceState:
    cxx: float
    cyy: float
    cxy: float = 0.0

    def __post_init__(self):
        if not (self.cxx > 0 and self.cyy > 0):
            raise ValueError("quadrature variances must be > 0")
        # cxx*cyy - cxy^2 cancels catastrophically for strong squeezing
        slack = HEISENBERG_DET * _TOL + 8 * np.finfo(float).eps * self.cxx * self.cyy
        if self.det < HEISENBERG_DET - slack:
            raise ValueError(
                f"det = {self.det:.6g} violates the uncertainty bound 1/16")

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2) or not np.isclose(m[0, 1], m[1, 0], rtol=1e-12, atol=0):
            raise ValueError("need a symmetric 2x2 matrix")
        return cls(float(m[0, 0]), float(m[1, 1]), float(m[0, 1]))

    @property
    def matrix(self):
        return np.array([[self.cxx, self.cxy], [self.cxy, self.cyy]])

    @property
    def det(self):
        return self.cxx * self.cyy - self.cxy ** 2

    def __repr__(self):
        return f"CovarianceState(cxx={self.cxx:.6g}, cyy={self.cyy:.6g}, cxy={self.cxy:.6g})"


def vacuum():
    return CovarianceState(VACUUM_VARIANCE, VACUUM_VARIANCE, 0.0)


def _rotated(v_major_axis, v_minor_axis, theta):
    # v_minor_axis sits along angle theta, v_major_axis along theta + pi/2
    c, s = math.cos(theta), math.sin(theta)
    cxx = v_minor_axis * c * c + v_major_axis * s * s
    cyy = v_minor_axis * s * s + v_major_axis * c * c
    cxy = (v_minor_axis - v_major_axis) * c * s
    return cxx, cyy, cxy


def squeezed(r, theta=0.0):
    """Pure squeezed vacuum, variance e^{-2r}/4 along angle `theta` from X."""
    if r < 0:
        raise ValueError(f"squeeze factor must be >= 0, got {r}")
    v_minus = math.exp(-2 * r) / 4
    v_plus = math.exp(2 * r) / 4
    cxx, cyy, cxy = _rotated(v_plus, v_minus, theta)
    return CovarianceState(cxx, cyy, cxy)


def rotate(state, phi):
    """Rotate the ellipse by `phi` (counter-clockwise in the X-Y plane)."""
    # R Sigma R^T written out, so the result is symmetric by construction
    c, s = math.cos(phi), math.sin(phi)
    cxx = c * c * state.cxx - 2 * c * s * state.cxy + s * s * state.cyy
    cyy = s * s * state.cxx + 2 * c * s * state.cxy + c * c * state.cyy
    cxy = c * s * (state.cxx - state.cyy) + (c * c - s * s) * state.cxy
    return CovarianceState(cxx, cyy, cxy)


def ponderomotive(state, K):
    """Radiation-pressure shear Y -> Y - K X."""
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    cxx = state.cxx
    cxy = state.cxy - K * state.cxx
    cyy = state.cyy - 2 * K * state.cxy + K * K * state.cxx
    return CovarianceState(cxx, cyy, cxy)


def loss_channel(state, efficiency):
    """Mix with vacuum: Sigma -> eta Sigma + (1 - eta) Sigma_vac."""
    if not 0 <= efficiency <= 1:
        raise ValueError(f"efficiency must lie in [0, 1], got {efficiency}")
    e = efficiency
    return CovarianceState(e * state.cxx + (1 - e) * VACUUM_VARIANCE,
                           e * state.cyy + (1 - e) * VACUUM_VARIANCE,
                           e * state.cxy)


def homodyne_variance(state, zeta):
    """Variance of X sin(zeta) + Y cos(zeta).  Vectorised over `zeta`."""
    s, c = np.sin(zeta), np.cos(zeta)
    v = state.cxx * s * s + state.cyy * c * c + 2 * state.cxy * s * c
    return v.item() if np.ndim(v) == 0 else v


def sheared_readout_variance(state, K, zeta):
    """Homodyne variance at `zeta` after the shear Y -> Y - K X.

    Equal to ``homodyne_variance(ponderomotive(state, K), zeta)`` but the
    measurement vector is pulled back through the shear instead, so a huge
    amplitude variance that the readout cancels never enters the sum.
    """
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    s, c = np.sin(zeta), np.cos(zeta)
    u = s - K * c
    v = state.cxx * u * u + state.cyy * c * c + 2 * state.cxy * u * c
    return v.item() if np.ndim(v) == 0 else v


def evasion_angle(K):
    """Homodyne angle at which the shear's X-contribution cancels."""
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    return math.atan(K)


def purity(state):
    return 1.0 / (4.0 * math.sqrt(state.det))


def uncertainty_product(state):
    """Product of principal standard deviations in units of the minimum, 1/4."""
    return math.sqrt(state.det) / VACUUM_VARIANCE


def principal_variances(state):
    """(smallest, largest) eigenvariances."""
    mean = (state.cxx + state.cyy) / 2
    hi = mean + math.hypot((state.cxx - state.cyy) / 2, state.cxy)
    # mean - half cancels for elongated ellipses; det / hi does not
    return state.det / hi, hi


def min_variance_angle(state):
    """Homodyne angle in [0, pi) of least variance, and that variance.

    Isotropic states return angle 0.
    """
    lo, hi = principal_variances(state)
    if hi - lo <= _TOL * hi:
        return 0.0, lo
    # variance(zeta) = mean + a cos(2 zeta) + b sin(2 zeta)
    a = (state.cyy - state.cxx) / 2
    b = state.cxy
    zeta = 0.5 * (math.atan2(b, a) + math.pi)
    zeta %= math.pi
    if math.isclose(zeta, math.pi, rel_tol=0, abs_tol=1e-15):
        zeta = 0.0
    return zeta, lo


def injected_state(r, theta, efficiency=1.0):
    """State of the injected field for an interferometer injection angle `theta`.

    Interferometer angles point at the anti-squeezed axis (theta = 0 is
    phase squeezing), so the squeezed axis sits at theta + pi/2 here.
    """
    return loss_channel(squeezed(r, theta + math.pi / 2), efficiency)


def readout_noise_ratio(state, K):
    """Phase-quadrature readout noise after the shear, per unit K-free shot noise.

    Multiplying by x_SQL^2 / 2 gives the displacement PSD:
    S_x = x_SQL^2 / 2 * (1/K) * 4 Var(Y - K X).
    """
    out = ponderomotive(state, K)
    return homodyne_variance(out, 0.0) / (VACUUM_VARIANCE * K)


def db(variance):
    """Variance relative to vacuum, in dB."""
    return 10 * math.log10(variance / VACUUM_VARIANCE)
