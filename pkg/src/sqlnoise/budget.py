"""Assembling a full noise budget and reading/writing it as CSV."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import optomech
from .core import FrequencyGrid

NODE_RTOL = 1e-8

BUDGET_COLUMNS = ("f_hz", "qmn", "qbn", "total_quantum", "sql", "classical", "total")


@dataclass(frozen=True)
class Budget:
    grid: FrequencyGrid
    qmn: optomech.NoiseSpectrum
    qbn: optomech.NoiseSpectrum
    total_quantum: optomech.NoiseSpectrum
    sql: optomech.NoiseSpectrum
    classical: optomech.NoiseSpectrum | None = None
    total: optomech.NoiseSpectrum | None = None

    def rows(self):
        cols = [self.grid.points, self.qmn.values, self.qbn.values,
                self.total_quantum.values, self.sql.values,
                None if self.classical is None else self.classical.values,
                None if self.total is None else self.total.values]
        for i in range(len(self.grid)):
            yield [None if c is None else float(c[i]) for c in cols]

    def below_sql(self):
        return self.total_quantum.values < self.sql.values


def noise_budget(cfg, grid, squeezer=None, classical=None):
    """Quantum components, SQL and (optionally) classical and total noise.

    `squeezer` is a SqueezerConfig; its chain efficiency is applied to the
    injected field.  `classical` is a NoiseSpectrum on `grid`.
    """
    if squeezer is None:
        qmn, qbn, tq = optomech.quantum_noise_components(cfg, grid)
    else:
        qmn, qbn, tq = optomech.quantum_noise_squeezed_components(
            cfg, squeezer.r, squeezer.angle, grid, squeezer.efficiency)
    sql = optomech.sql_spectrum(cfg, grid)
    if classical is None:
        return Budget(grid, qmn, qbn, tq, sql)
    classical = optomech.NoiseSpectrum(classical.grid, "classical", classical.values)
    return Budget(grid, qmn, qbn, tq, sql, classical,
                  optomech.total_noise(tq, classical))


def fmt(x):
    """Nine significant digits; empty for missing."""
    if x is None:
        return ""
    return format(x, ".9g")


def write_csv(header, rows, stream):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])


def to_csv_text(header, rows):
    buf = io.StringIO()
    write_csv(header, rows, buf)
    return buf.getvalue()


def read_spectrum_csv(path):
    """Two-column (f_hz, psd_m2_per_hz) CSV with a header row."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if len(header) < 2:
            raise ValueError(f"{path}: header needs two columns")
        f, p = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                f.append(float(row[0]))
                p.append(float(row[1]))
            except (ValueError, IndexError):
                raise ValueError(f"{path}:{lineno}: expected two numbers") from None
    f, p = np.array(f), np.array(p)
    if f.size < 2:
        raise ValueError(f"{path}: need at least two rows")
    if np.any(f <= 0) or np.any(np.diff(f) <= 0):
        raise ValueError(f"{path}: frequencies must be positive and increasing")
    if np.any(~(p > 0)):
        raise ValueError(f"{path}: PSD values must be > 0 for log-log interpolation")
    return f, p


def interpolate_loglog(f_src, psd_src, grid):
    """Log-log linear interpolation onto `grid`; no extrapolation."""
    f = grid.points
    if f[0] < f_src[0] * (1 - 1e-12) or f[-1] > f_src[-1] * (1 + 1e-12):
        raise ValueError(
            f"spectrum covers {f_src[0]:g}-{f_src[-1]:g} Hz, "
            f"grid needs {f[0]:g}-{f[-1]:g} Hz")
    out = np.exp(np.interp(np.log(f), np.log(f_src), np.log(psd_src)))
    # nodes equal to a grid point up to 9-digit CSV rounding pass through
    # untouched, so re-ingesting our own output is lossless
    hi = np.clip(np.searchsorted(f_src, f), 1, f_src.size - 1)
    nearest = np.where(np.abs(f_src[hi] - f) < np.abs(f_src[hi - 1] - f), hi, hi - 1)
    hit = np.abs(f_src[nearest] - f) <= NODE_RTOL * f
    out[hit] = psd_src[nearest[hit]]
    return out


def sub_sql_bands(budget):
    """Contiguous runs (f_lo, f_hi) where total quantum noise is below SQL."""
    below = budget.below_sql()
    f = budget.grid.points
    runs, start = [], None
    for i, b in enumerate(below):
        if b and start is None:
            start = i
        if not b and start is not None:
            runs.append((float(f[start]), float(f[i - 1])))
            start = None
    if start is not None:
        runs.append((float(f[start]), float(f[-1])))
    return runs


def deepest_sub_sql(budget):
    """(frequency, dB below SQL) at the minimum of total_quantum / sql."""
    ratio = budget.total_quantum.values / budget.sql.values
    i = int(np.argmin(ratio))
    return float(budget.grid.points[i]), 10 * math.log10(ratio[i])
