"""Bounding extra (decoherence) noise and the Marshall mirror width.

Run: python3 demos/06_decoherence_probes.py
"""
import math

import numpy as np

from sqlnoise import optomech as om, probes
from sqlnoise.core import make_log_grid

# %% zero-point width of a 5 ng, 500 Hz mirror, and the quoted value
rep = probes.marshall_report()
print(f"formula {rep.formula_width:.3e} m, quoted {rep.quoted_width:.1e} m "
      f"(x{rep.ratio:.1f}), discrepant={rep.discrepant}")

# %% how much superposition survives a 100 us verification time
for sc in (probes.THERMAL_50HZ, probes.GRAVITATIONAL):
    print(f"{sc.label}: survival {probes.survival_fraction(sc, 100e-6):.3g}")

# %% a measurement 2 % above the squeezed model caps any extra white noise
cfg = om.ligo_like()
grid = make_log_grid(10, 200, 120)
model = om.quantum_noise_squeezed(cfg, 13.8 * math.log(10) / 20, math.radians(35), grid, 0.54)
sql = om.sql_spectrum(cfg, grid)
observed = om.NoiseSpectrum(grid, "total", model.values * 1.02)
b = probes.decoherence_upper_bound(model, observed, sql, (30, 40), tol=0.0)
mask = grid.mask(30, 40)
print(f"extra noise PSD <= {b:.3e} m^2/Hz "
      f"({b / np.min(sql.values[mask]):.2%} of SQL in 30-40 Hz)")
