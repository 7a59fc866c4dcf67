"""
Command-line front end.

    sqlnoise budget|sql|optimize-angle|loss-chain|state|decoherence-bound|marshall
        --config CONFIG.json [--out OUT.csv] [--band LO:HI] [--tol X]

CSV goes to --out (or stdout).  With --out, derived scalars and a config echo
are written to OUT.csv.meta.json.  Exit codes: 0 ok, 2 config error, 3 I/O
error, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, budget as bud, gaussian, optomech, probes, squeezer
from .core import make_log_grid
from .optimize import (BandObjective, ConvergenceError, band_cost_function,
                       find_f_sql, optimal_angle_at, optimize_band_angle)

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4

COMMANDS = ("budget", "sql", "optimize-angle", "loss-chain", "state",
            "decoherence-bound", "marshall")

DEFAULT_GRID = {"f_min": 10.0, "f_max": 1000.0, "n": 200}


class ConfigError(Exception):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class InputError(Exception):
    """Unreadable or missing input file."""


# -- config parsing ---------------------------------------------------------

def _section(doc, key, path="", required=True):
    full = f"{path}.{key}" if path else key
    if key not in doc:
        if required:
            raise ConfigError(full, "required section is missing")
        return None
    val = doc[key]
    if not isinstance(val, dict):
        raise ConfigError(full, "must be an object")
    return val


def _number(sec, key, path, required=True, default=None, positive=False,
            nonneg=False, lo=None, hi=None, integer=False):
    full = f"{path}.{key}"
    if key not in sec:
        if required:
            raise ConfigError(full, "required field is missing")
        return default
    v = sec[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(full, f"must be a finite number, got {v!r}")
    if integer and int(v) != v:
        raise ConfigError(full, f"must be an integer, got {v!r}")
    if positive and not v > 0:
        raise ConfigError(full, f"must be > 0, got {v!r}")
    if nonneg and not v >= 0:
        raise ConfigError(full, f"must be >= 0, got {v!r}")
    if lo is not None and v < lo or hi is not None and v > hi:
        raise ConfigError(full, f"must lie in [{lo}, {hi}], got {v!r}")
    return int(v) if integer else float(v)


def parse_interferometer(doc):
    sec = _section(doc, "interferometer")
    p = "interferometer"
    mass = _number(sec, "mirror_mass_kg", p, positive=True)
    length = _number(sec, "arm_length_m", p, positive=True)
    nu0 = _number(sec, "laser_frequency_hz", p, required=False,
                  default=optomech.NM_1064_HZ, positive=True)
    gamma = _number(sec, "detector_bandwidth_hz", p, positive=True)
    if "arm_power_w" in sec and "f_sql_hz" in sec:
        raise ConfigError(f"{p}.arm_power_w", "give either arm_power_w or f_sql_hz, not both")
    if "arm_power_w" in sec:
        power = _number(sec, "arm_power_w", p, positive=True)
    elif "f_sql_hz" in sec:
        f_sql = _number(sec, "f_sql_hz", p, positive=True)
        power = optomech.arm_power_for_f_sql(f_sql, mass, length, nu0, gamma)
    else:
        raise ConfigError(f"{p}.arm_power_w", "required field is missing (or give f_sql_hz)")
    return optomech.InterferometerConfig(mass, length, power, nu0, gamma)


def parse_squeezer(doc, required=False):
    sec = _section(doc, "squeezer", required=required)
    if sec is None:
        return None
    p = "squeezer"
    db = _number(sec, "generated_db", p, nonneg=True)
    angle = _number(sec, "angle_deg", p, required=False, default=0.0)
    stages = sec.get("chain", [])
    if not isinstance(stages, list):
        raise ConfigError(f"{p}.chain", "must be a list of {label, efficiency}")
    parsed = []
    for i, st in enumerate(stages):
        sp = f"{p}.chain[{i}]"
        if not isinstance(st, dict):
            raise ConfigError(sp, "must be an object with label and efficiency")
        label = st.get("label", f"stage {i}")
        if not isinstance(label, str):
            raise ConfigError(f"{sp}.label", "must be a string")
        eta = _number(st, "efficiency", sp, lo=0.0, hi=1.0)
        parsed.append((label, eta))
    return squeezer.SqueezerConfig(db, math.radians(angle),
                                   squeezer.EfficiencyChain(tuple(parsed)))


def parse_grid(doc):
    sec = _section(doc, "grid", required=False)
    if sec is None:
        sec = DEFAULT_GRID
    p = "grid"
    f_min = _number(sec, "f_min", p, positive=True)
    f_max = _number(sec, "f_max", p, positive=True)
    n = _number(sec, "n", p, integer=True)
    if not f_min < f_max:
        raise ConfigError(f"{p}.f_max", f"must exceed f_min ({f_min:g}), got {f_max:g}")
    if n < 2:
        raise ConfigError(f"{p}.n", f"must be >= 2, got {n}")
    return make_log_grid(f_min, f_max, n)


def _parse_band_value(v, path):
    if (not isinstance(v, (list, tuple)) or len(v) != 2 or
            any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in v)):
        raise ConfigError(path, "must be a pair [f_lo, f_hi] in Hz")
    lo, hi = float(v[0]), float(v[1])
    if not 0 < lo < hi:
        raise ConfigError(path, f"need 0 < f_lo < f_hi, got [{lo:g}, {hi:g}]")
    return lo, hi


def parse_band_arg(text):
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise ConfigError("--band", f"expected LO:HI, got {text!r}") from None
    return _parse_band_value([lo, hi], "--band")


def _resolve(doc_dir, rel):
    return rel if os.path.isabs(rel) else os.path.join(doc_dir, rel)


def _csv_path(doc, key, doc_dir, required=False):
    if key not in doc:
        if required:
            raise ConfigError(key, "required field is missing")
        return None
    if not isinstance(doc[key], str):
        raise ConfigError(key, "must be a file path string")
    return _resolve(doc_dir, doc[key])


def load_spectrum(path, grid, field):
    if not os.path.exists(path):
        raise InputError(f"{field}: cannot read {path}")
    try:
        f, p = bud.read_spectrum_csv(path)
    except OSError as exc:
        raise InputError(f"{field}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(field, str(exc)) from None
    try:
        return bud.interpolate_loglog(f, p, grid)
    except ValueError as exc:
        raise ConfigError(field, str(exc)) from None


@dataclass
class RunConfig:
    document: dict
    base_dir: str

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read config {path}: {exc.strerror}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("<root>", f"invalid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("<root>", "must be a JSON object")
        return cls(doc, os.path.dirname(os.path.abspath(path)))

    def interferometer(self):
        return parse_interferometer(self.document)

    def squeezer(self, required=False):
        return parse_squeezer(self.document, required)

    def grid(self):
        return parse_grid(self.document)

    def band(self, override=None, required=True):
        if override is not None:
            return override
        if "band" not in self.document:
            if required:
                raise ConfigError("band", "required field is missing (or pass --band)")
            return None
        return _parse_band_value(self.document["band"], "band")

    def tol(self, override=None):
        if override is not None:
            if not (math.isfinite(override) and override >= 0):
                raise ConfigError("--tol", f"must be >= 0, got {override}")
            return override
        return _number(self.document, "tol", "<root>", required=False,
                       default=0.05, nonneg=True)

    def spectrum(self, key, grid, required=False):
        path = _csv_path(self.document, key, self.base_dir, required)
        if path is None:
            return None
        return optomech.NoiseSpectrum(grid, "classical", load_spectrum(path, grid, key))


# -- commands ----------------------------------------------------------------
# Each returns (header, rows, derived) where derived is a JSON-ready dict.

def cmd_budget(run, args):
    cfg = run.interferometer()
    grid = run.grid()
    sq = run.squeezer()
    classical = run.spectrum("classical_noise_csv", grid)
    b = bud.noise_budget(cfg, grid, sq, classical)
    derived = {"f_sql_hz": find_f_sql(cfg),
               "arm_power_w": cfg.arm_power,
               "sub_sql_bands_hz": [list(r) for r in bud.sub_sql_bands(b)]}
    if sq is not None:
        derived.update(squeeze_factor=sq.r, total_efficiency=sq.efficiency)
    return bud.BUDGET_COLUMNS, list(b.rows()), derived


def cmd_sql(run, args):
    cfg = run.interferometer()
    grid = run.grid()
    asd = optomech.sql_asd(cfg.mirror_mass, grid.points)
    k = optomech.kimble_factor(cfg, grid.points)
    rows = [[f, a, a * a, kk] for f, a, kk in zip(grid.points, asd, k)]
    f_sql = find_f_sql(cfg)
    derived = {"f_sql_hz": f_sql,
               "sql_asd_at_f_sql": optomech.sql_asd(cfg.mirror_mass, f_sql)}
    return ("f_hz", "sql_asd", "sql", "kimble_factor"), rows, derived


def cmd_optimize_angle(run, args):
    cfg = run.interferometer()
    grid = run.grid()
    sq = run.squeezer(required=True)
    band = run.band(args.band)
    weighting = run.document.get("weighting", "flat")
    try:
        obj = BandObjective(band, weighting)
    except ValueError as exc:
        raise ConfigError("weighting", str(exc)) from None
    try:
        opt = optimize_band_angle(cfg, sq.r, obj, grid, sq.efficiency)
    except ValueError as exc:
        raise ConfigError("band", str(exc)) from None
    cost = band_cost_function(cfg, sq.r, obj, grid, sq.efficiency)
    rows = [[float(d), cost(math.radians(d))] for d in range(0, 91)]
    derived = {"theta_opt_deg": math.degrees(opt.angle), "cost": opt.cost,
               "flat_cost": opt.flat,
               "pointwise_angle_at_center_deg":
                   math.degrees(optimal_angle_at(cfg, obj.center)),
               "band_hz": list(band), "weighting": weighting}
    return ("theta_deg", "cost"), rows, derived


def cmd_loss_chain(run, args):
    sq = run.squeezer(required=True)
    rows = []
    labels = ["generated"] + [label for label, _ in sq.chain.stages]
    etas = [1.0] + [eta for _, eta in sq.chain.stages]
    for i, prefix in enumerate(sq.chain.prefixes()):
        eta = squeezer.chain_efficiency(prefix)
        s_db, a_db = squeezer.effective_db(sq.generated_db, prefix)
        rows.append([str(i), labels[i], etas[i], eta, s_db, a_db])
    s_db, a_db = squeezer.effective_db(sq.generated_db, sq.chain)
    state = gaussian.injected_state(sq.r, 0.0, sq.efficiency)
    derived = {"total_efficiency": sq.efficiency, "squeezed_db": s_db,
               "antisqueezed_db": a_db,
               "uncertainty_product": gaussian.uncertainty_product(state),
               "purity": gaussian.purity(state)}
    header = ("stage", "label", "stage_efficiency", "cumulative_efficiency",
              "squeezed_db", "antisqueezed_db")
    return header, rows, derived


def cmd_state(run, args):
    sq = run.squeezer(required=True)
    sec = _section(run.document, "state", required=False) or {}
    k = None
    if "kimble_factor" in sec and "frequency_hz" in sec:
        raise ConfigError("state.kimble_factor", "give kimble_factor or frequency_hz, not both")
    if "kimble_factor" in sec:
        k = _number(sec, "kimble_factor", "state", nonneg=True)
    elif "frequency_hz" in sec:
        f = _number(sec, "frequency_hz", "state", positive=True)
        k = optomech.kimble_factor(run.interferometer(), f)
    state = gaussian.injected_state(sq.r, sq.angle, sq.efficiency)
    if k is not None:
        state = gaussian.ponderomotive(state, k)
    zeta = np.radians(np.arange(180))
    var = np.atleast_1d(gaussian.homodyne_variance(state, zeta))
    rows = [[float(d), v, gaussian.db(v)] for d, v in zip(range(180), var)]
    z_min, v_min = gaussian.min_variance_angle(state)
    lo, hi = gaussian.principal_variances(state)
    derived = {"cxx": state.cxx, "cyy": state.cyy, "cxy": state.cxy,
               "purity": gaussian.purity(state),
               "uncertainty_product": gaussian.uncertainty_product(state),
               "min_variance_angle_deg": math.degrees(z_min),
               "min_variance": v_min, "max_variance": hi,
               "kimble_factor": k}
    return ("zeta_deg", "variance", "variance_db"), rows, derived


def cmd_decoherence_bound(run, args):
    cfg = run.interferometer()
    grid = run.grid()
    sq = run.squeezer()
    band = run.band(args.band)
    tol = run.tol(args.tol)
    if sq is None:
        model = optomech.quantum_noise_unsqueezed(cfg, grid)
    else:
        model = optomech.quantum_noise_squeezed(cfg, sq.r, sq.angle, grid, sq.efficiency)
    observed = run.spectrum("observed_csv", grid, required=True)
    sql = optomech.sql_spectrum(cfg, grid)
    try:
        b = probes.decoherence_upper_bound(model, observed, sql, band, tol)
    except ValueError as exc:
        raise ConfigError("band", str(exc)) from None
    headroom, sub_sql = probes.bin_margins(model, observed, sql, tol)
    in_band = grid.mask(*band)
    rows = [[f, m, o, s, h, d, "1" if ib else "0"]
            for f, m, o, s, h, d, ib in zip(grid.points, model.values, observed.values,
                                            sql.values, headroom, sub_sql, in_band)]
    derived = {"bound_psd_m2_per_hz": b, "bound_asd_m_per_rthz": math.sqrt(b),
               "band_hz": list(band), "tol": tol,
               "observed_below_sql_in_band": bool(np.all(sub_sql[in_band] > 0))}
    header = ("f_hz", "model", "observed", "sql", "headroom", "sql_margin", "in_band")
    return header, rows, derived


def cmd_marshall(run, args):
    sec = _section(run.document, "oscillator", required=False)
    if sec is None:
        osc = probes.MARSHALL_MIRROR
        quoted = probes.QUOTED_MARSHALL_WIDTH
    else:
        osc = probes.MechanicalOscillator(
            _number(sec, "mass_kg", "oscillator", positive=True),
            _number(sec, "resonance_hz", "oscillator", positive=True))
        default_q = (probes.QUOTED_MARSHALL_WIDTH if osc == probes.MARSHALL_MIRROR
                     else None)
        quoted = _number(sec, "quoted_width_m", "oscillator", required=False,
                         default=default_q, positive=True)
    rep = probes.marshall_report(osc, quoted)
    flag = "quoted_value_disagrees_with_formula" if rep.discrepant else ""
    if rep.discrepant:
        print(f"warning: formula gives {rep.formula_width:.3g} m but the quoted "
              f"value is {rep.quoted_width:.3g} m ({rep.ratio:.3g}x)", file=sys.stderr)
    rows = [[osc.mass, osc.resonance, rep.formula_width, rep.quoted_width,
             rep.ratio, flag]]
    derived = {"zero_point_width_m": rep.formula_width,
               "quoted_width_m": rep.quoted_width, "ratio": rep.ratio,
               "discrepant": rep.discrepant}
    header = ("mass_kg", "resonance_hz", "zero_point_width_m", "quoted_width_m",
              "quoted_over_formula", "flag")
    return header, rows, derived


HANDLERS = {
    "budget": cmd_budget,
    "sql": cmd_sql,
    "optimize-angle": cmd_optimize_angle,
    "loss-chain": cmd_loss_chain,
    "state": cmd_state,
    "decoherence-bound": cmd_decoherence_bound,
    "marshall": cmd_marshall,
}


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def build_parser():
    ap = argparse.ArgumentParser(prog="sqlnoise", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"sqlnoise {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="JSON run configuration")
    ap.add_argument("--out", help="CSV output path (default: stdout)")
    ap.add_argument("--band", help="band override LO:HI in Hz")
    ap.add_argument("--tol", type=float, help="relative tolerance for decoherence-bound")
    return ap


def run(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    try:
        args.band = None if args.band is None else parse_band_arg(args.band)
        cfg = RunConfig.load(args.config)
        header, rows, derived = HANDLERS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # invariant violations raised by the model types
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = bud.to_csv_text(header, rows)
    if args.out is None:
        stdout.write(text)
        return EXIT_OK
    meta = {"tool": "sqlnoise", "version": __version__, "command": args.command,
            "config": cfg.document, "derived": _jsonable(derived)}
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        with open(args.out + ".meta.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"i/o error: cannot write {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
