"""Free-mass SQL and the optomechanical coupling K(f) for a LIGO-like detector.

Run: python3 demos/01_sql_and_kimble_factor.py
"""
import numpy as np

from sqlnoise import optomech as om
from sqlnoise.core import make_log_grid
from sqlnoise.optimize import find_f_sql

# %% 40 kg test masses, 4 km arms, arm power chosen so K = 1 at 30 Hz
cfg = om.ligo_like()
print(f"arm power {cfg.arm_power / 1e3:.1f} kW, bandwidth {cfg.detector_bandwidth:g} Hz")
print(f"f_SQL = {find_f_sql(cfg):.6f} Hz")

# %% unsqueezed noise splits into shot (1/K) and radiation-pressure (K) parts
grid = make_log_grid(10, 1000, 9)
qmn, qbn, total = om.quantum_noise_components(cfg, grid)
sql = om.sql_spectrum(cfg, grid)
print(f"{'f [Hz]':>8} {'K':>10} {'shot/SQL':>10} {'rp/SQL':>10} {'total/SQL':>10}")
for f, k, a, b, t, s in zip(grid.points, om.kimble_factor(cfg, grid.points),
                            qmn.values, qbn.values, total.values, sql.values):
    print(f"{f:8.1f} {k:10.3g} {a / s:10.3g} {b / s:10.3g} {t / s:10.4f}")

# the total never dips below SQL; it touches it only where K = 1
print("min total/SQL:", np.min(total.values / sql.values))
