"""Injecting squeezed vacuum: where the noise goes below the SQL, and where not.

Run: python3 demos/02_squeezed_injection.py
"""
import math

from sqlnoise import budget, optomech as om
from sqlnoise.core import make_log_grid
from sqlnoise.squeezer import EfficiencyChain, SqueezerConfig

cfg = om.ligo_like()
grid = make_log_grid(10, 1000, 400)
chain = EfficiencyChain((("total", 0.54),))

# %% phase squeezing (angle 0) helps at high f but never beats the SQL
for deg in (0, 24, 35, 46):
    sq = SqueezerConfig(13.8, math.radians(deg), chain)
    b = budget.noise_budget(cfg, grid, sq)
    bands = budget.sub_sql_bands(b)
    f_min, depth = budget.deepest_sub_sql(b)
    desc = ", ".join(f"{lo:.1f}-{hi:.1f} Hz" for lo, hi in bands) or "none"
    print(f"theta {deg:2d} deg: below SQL in {desc}; deepest {depth:+.2f} dB at {f_min:.1f} Hz")

# %% lossless dip at f_SQL with the optimal 45 deg angle is exactly e^{-2r}
r = 1.0
dip = om.quantum_noise_squeezed(cfg, r, math.pi / 4, make_log_grid(30, 30.0000001, 2))
x2 = om.sql_asd(cfg.mirror_mass, 30.0) ** 2
print(f"S(f_SQL) / x_SQL^2 = {dip.values[0] / x2:.6f}  vs  e^-2r = {math.exp(-2 * r):.6f}")
