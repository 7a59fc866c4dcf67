"""Variational readout: reading at atan(K) removes the amplitude-quadrature term.

Run: python3 demos/04_back_action_evasion.py
"""
import math

import numpy as np

from sqlnoise import gaussian as gs

# %% vacuum sheared by K = 1: phase readout sees twice the vacuum
out = gs.ponderomotive(gs.vacuum(), 1.0)
print("sheared vacuum covariance:\n", out.matrix)
z, v = gs.min_variance_angle(out)
print(f"least variance {v:.4f} at {math.degrees(z):.1f} deg (vacuum is 0.25)")

# %% blow up the amplitude noise a million times; the evading readout does not notice
for k in (0.1, 1.0, 10.0, 100.0):
    zeta = gs.evasion_angle(k)
    base = gs.vacuum()
    loud = gs.CovarianceState(base.cxx * 1e6, base.cyy, base.cxy)
    a = gs.sheared_readout_variance(base, k, zeta)
    b = gs.sheared_readout_variance(loud, k, zeta)
    naive = gs.sheared_readout_variance(loud, k, 0.0) / gs.sheared_readout_variance(base, k, 0.0)
    print(f"K={k:6.1f}  zeta={math.degrees(zeta):6.2f} deg  change {abs(b / a - 1):.1e}"
          f"  (phase readout grows x{naive:.3g})")

# %% tomography of a lossy squeezed state
s = gs.injected_state(1.2, 0.0, 0.7)
zetas = np.radians(np.arange(0, 180, 30))
for zd, v in zip(np.degrees(zetas), gs.homodyne_variance(s, zetas)):
    print(f"zeta {zd:5.1f} deg: {gs.db(v):+6.2f} dB")
