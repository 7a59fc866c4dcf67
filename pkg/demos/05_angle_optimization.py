"""Choosing one squeeze angle for a whole frequency band.

Run: python3 demos/05_angle_optimization.py
"""
import math

from sqlnoise import optomech as om
from sqlnoise.core import make_log_grid
from sqlnoise.optimize import BandObjective, optimal_angle_at, optimize_band_angle
from sqlnoise.squeezer import db_to_r

cfg = om.ligo_like()
grid = make_log_grid(10, 1000, 300)
r = db_to_r(13.8)

# %% pointwise optimum sweeps from 90 deg (low f) to 0 (high f)
for f in (10, 30, 100, 300):
    print(f"{f:4d} Hz: best angle {math.degrees(optimal_angle_at(cfg, f)):5.1f} deg")

# %% a single angle for a band, flat or SQL-weighted
for band in ((20, 40), (30, 50), (100, 500)):
    for w in ("flat", "inverse_sql"):
        opt = optimize_band_angle(cfg, r, BandObjective(band, w), grid, efficiency=0.54)
        print(f"band {band[0]}-{band[1]} Hz, {w:>11}: {math.degrees(opt.angle):6.2f} deg")
