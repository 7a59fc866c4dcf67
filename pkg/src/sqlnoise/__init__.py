"""
sqlnoise
========

Quantum-noise budgets for laser-interferometric position measurement:
shot noise and radiation-pressure noise, the free-mass standard quantum
limit, squeezed-light injection with arbitrary angle and loss, Gaussian
quadrature states, angle optimisation and sub-SQL decoherence bounds.

Modules
-------
core
    Constants, frequency grids, Fourier-limited mode windows.
optomech
    Coupling factor K(f), SQL and displacement-referred quantum noise.
gaussian
    2x2 covariance states, radiation-pressure shear, loss, homodyne readout.
squeezer
    dB conversions and efficiency chains.
optimize
    f_SQL root finding and band-optimal injection angle.
probes
    Zero-point widths, decoherence survival, sub-SQL noise bounds.
budget
    Full budget tables and CSV input/output.
cli
    ``sqlnoise`` command-line interface.
"""
__version__ = "0.1.0"

from .core import (C, HBAR, FrequencyGrid, ModeWindow, make_log_grid,
                   min_fourier_area)
from .optomech import (InterferometerConfig, NoiseSpectrum, Susceptibility,
                       kimble_factor, ligo_like, quantum_noise_squeezed,
                       quantum_noise_unsqueezed, sql_asd, susceptibility,
                       total_noise)
from .squeezer import EfficiencyChain, SqueezerConfig, db_to_r, effective_db
from .optimize import BandObjective, find_f_sql, optimize_band_angle
