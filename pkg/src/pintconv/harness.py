"""Experiment orchestration: config files in, deterministic CSV out.

A config is an INI file whose sections each describe one experiment
group; [DEFAULT] carries shared keys. Comma-separated values of the
study keys (method, relax, guess, scope, norm, and the scalar
parameters c, rho, mu, dt, nt, m, htheta) expand into the cartesian
product of experiments. Numeric fields accept plain floats, rationals
("1/2"), and pi-expressions ("pi/32", "15pi/16").

Every run of a config with the same seed produces byte-identical CSV:
rows are sorted by (method, variant, k) with a stable order, numbers
are printed with 17 significant digits, and the header is fixed and
version-stamped.
"""

from __future__ import annotations

import configparser
import io
import math
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from itertools import product
from pathlib import Path

import numpy as np

from .advection import AdvectionParams, AdvectionSymbols
from .core import ConfigError, Hierarchy, MethodSpec, NumericalFailure, PredictionSeries
from .elasticity import ElasticityParams, ElasticitySymbols
from . import lfa, mgrit, reduction, sama

SCHEMA_STAMP = "# pintconv-results v1"
HEADER = (
    "problem,method,variant,relax,levels,cycle,m,m2,nx,nt,k,value,"
    "theta_x,theta_y,omega0,extra"
)

_METHODS = ("lfa", "sama", "ra", "measured")
_STUDY_KEYS = ("c", "rho", "mu", "dt", "nt", "m", "htheta")


class ConvergedWindowError(ValueError):
    """The averaging window contains nonpositive values: the series hit
    exactness and no geometric rate is defined there."""


def average_reduction(values, window: tuple[int, int]) -> float:
    """Average per-iteration reduction over a window of a k-series.

    Fits a least-squares line to log10(value) against k over
    k = window[0]..window[1] (inclusive, 1-based) and returns 10**slope:
    a series decaying like r^k yields exactly r.
    """
    values = np.asarray(values, dtype=float)
    lo, hi = window
    if not (1 <= lo < hi <= len(values)):
        raise ValueError(f"window {window} not within series of length {len(values)}")
    window_vals = values[lo - 1 : hi]
    if np.any(window_vals <= 0.0):
        raise ConvergedWindowError(f"nonpositive values in window {window}")
    ks = np.arange(lo, hi + 1, dtype=float)
    slope = np.polyfit(ks, np.log10(window_vals), 1)[0]
    return float(10.0**slope)


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------

_PI_RE = re.compile(r"^([+-]?)(\d+(?:\.\d+)?)?pi(?:/(\d+(?:\.\d+)?))?$")


def parse_number(text: str, key: str = "value") -> float:
    """Parse a float, a rational a/b, or a pi-expression like 15pi/16."""
    s = text.strip().replace(" ", "")
    match = _PI_RE.match(s)
    if match:
        sign = -1.0 if match.group(1) == "-" else 1.0
        coef = float(match.group(2)) if match.group(2) else 1.0
        denom = float(match.group(3)) if match.group(3) else 1.0
        return sign * coef * math.pi / denom
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return float(num) / float(den)
        return float(s)
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse number {text!r}") from exc


def _parse_bool(text: str, key: str) -> bool:
    s = text.strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: cannot parse boolean {text!r}")


def _parse_window(text: str, key: str) -> tuple[int, int]:
    try:
        lo, hi = text.replace("-", ":").split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected 'lo:hi', got {text!r}") from exc


@dataclass(frozen=True)
class Experiment:
    """One fully resolved experiment: a single method/parameter combination."""

    name: str
    problem: str = "advection"
    method: str = "sama"
    relax: str = "F"
    levels: int = 2
    cycle: str = "two-level"
    m: int = 2
    m2: int = 1
    nx: int = 64
    nt: int = 64
    dx: float = 0.5
    dt: float = 0.1
    c: float = 1.0
    rho: float = 1.0
    mu: float = 1.0
    htheta: float | None = None
    homega: float | None = None
    norm: str = "exact2"
    scope: str = "full"
    kmax: int = 10
    guess: str = "random"
    seed: int = 20240101
    iters: int = 10
    error_scope: str = "all"
    ic_amplitude: tuple[float, ...] = (2.0,)
    ic_theta: tuple[float, ...] = (math.pi / 16,)
    label: str = ""
    average_window: tuple[int, int] | None = None
    emit_argmax_map: bool = False
    engine: str = "auto"
    allow_large_exact2: bool = False
    study: tuple[tuple[str, str], ...] = ()

    def validate(self) -> None:
        if self.problem not in ("advection", "elasticity"):
            raise ConfigError(f"problem: must be advection or elasticity, got {self.problem!r}")
        if self.method not in _METHODS:
            raise ConfigError(f"method: must be one of {_METHODS}, got {self.method!r}")
        if self.levels not in (2, 3):
            raise ConfigError(f"levels: must be 2 or 3, got {self.levels}")
        if self.method == "measured" and self.problem != "advection":
            raise ConfigError("problem: the reference solver covers advection only")
        if len(self.ic_amplitude) != len(self.ic_theta):
            raise ConfigError("ic_amplitude: must align with ic_theta")
        # Constructing these validates positivity/divisibility and names
        # the offending key in the error message.
        self.hierarchy()
        self.method_spec()
        if self.problem == "advection":
            AdvectionParams(self.c, self.dx, self.dt, self.nx)
        else:
            ElasticityParams(self.rho, self.mu, self.dx, self.dt)

    def hierarchy(self) -> Hierarchy:
        return Hierarchy(self.nt, self.m, self.dt, self.m2 if self.levels == 3 else 1)

    def method_spec(self) -> MethodSpec:
        return MethodSpec(self.relax, self.cycle)

    def symbols(self):
        if self.problem == "advection":
            return AdvectionSymbols(AdvectionParams(self.c, self.dx, self.dt, self.nx))
        return ElasticitySymbols(ElasticityParams(self.rho, self.mu, self.dx, self.dt))

    def theta_spacing(self) -> float:
        # Rigorous-sampling default: one frequency per spatial unknown.
        return self.htheta if self.htheta is not None else 2.0 * math.pi / self.nx

    def variant(self) -> str:
        if self.method == "lfa":
            return "spacetime"
        if self.method == "sama":
            return f"{self.scope}+{self.norm}"
        if self.method == "ra":
            return self.scope
        return f"{self.guess}+{self.label or self.name}"


def _expand_section(name: str, raw: dict[str, str]) -> list[Experiment]:
    lists: dict[str, list[str]] = {}
    scalars: dict[str, str] = {}
    for key, value in raw.items():
        parts = [p.strip() for p in value.split(",")] if key in (
            "method",
            "relax",
            "guess",
            "scope",
            "norm",
            *_STUDY_KEYS,
        ) else [value.strip()]
        if len(parts) > 1:
            lists[key] = parts
        else:
            scalars[key] = parts[0]

    combos = [dict(scalars)]
    for key, values in lists.items():
        combos = [dict(c, **{key: v}) for c in combos for v in values]

    experiments = []
    for combo in combos:
        study = tuple(
            (key, combo[key]) for key in _STUDY_KEYS if key in lists
        )
        experiments.append(_experiment_from_dict(name, combo, study))
    return experiments


def _experiment_from_dict(name: str, d: dict[str, str], study) -> Experiment:
    exp = Experiment(name=name, study=study)
    converters = {
        "problem": str,
        "method": str,
        "relax": str,
        "guess": str,
        "scope": str,
        "norm": str,
        "engine": str,
        "label": str,
        "error_scope": lambda s: s,
        "levels": int,
        "m": int,
        "m2": int,
        "nx": int,
        "nt": int,
        "kmax": int,
        "seed": int,
        "iters": int,
        "dx": lambda s: parse_number(s, "dx"),
        "dt": lambda s: parse_number(s, "dt"),
        "c": lambda s: parse_number(s, "c"),
        "rho": lambda s: parse_number(s, "rho"),
        "mu": lambda s: parse_number(s, "mu"),
        "htheta": lambda s: parse_number(s, "htheta"),
        "homega": lambda s: parse_number(s, "homega"),
        "average_window": lambda s: _parse_window(s, "average_window"),
        "emit_argmax_map": lambda s: _parse_bool(s, "emit_argmax_map"),
        "allow_large_exact2": lambda s: _parse_bool(s, "allow_large_exact2"),
        "ic_amplitude": lambda s: tuple(parse_number(p, "ic_amplitude") for p in s.split(",")),
        "ic_theta": lambda s: tuple(parse_number(p, "ic_theta") for p in s.split(",")),
        "cycle": None,  # handled below
    }
    updates: dict = {}
    for key, value in d.items():
        if key == "cycle":
            continue
        if key not in converters:
            raise ConfigError(f"{key}: unknown configuration key")
        try:
            updates[key] = converters[key](value)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{key}: invalid value {value!r} ({exc})") from exc
    exp = replace(exp, **updates)
    cycle = _resolve_cycle(exp.levels, d.get("cycle"))
    exp = replace(exp, cycle=cycle)
    exp.validate()
    return exp


def _resolve_cycle(levels: int, cycle_text: str | None) -> str:
    if levels == 2:
        if cycle_text not in (None, "", "V", "v"):
            raise ConfigError(f"cycle: two-level methods take no cycle kind, got {cycle_text!r}")
        return "two-level"
    kind = (cycle_text or "V").strip().upper()
    if kind not in ("V", "F"):
        raise ConfigError(f"cycle: must be V or F for three-level methods, got {cycle_text!r}")
    return "three-level-v" if kind == "V" else "three-level-f"


def bundled_configs() -> dict[str, Path]:
    """Name -> path of the figure configs shipped with the package."""
    root = resources.files("pintconv").joinpath("configs")
    found = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".cfg"):
            found[entry.name[: -len(".cfg")]] = Path(str(entry))
    return found


def load_config(source: str | Path, overrides: dict[str, str] | None = None) -> list[Experiment]:
    """Read experiments from a config path or bundled config name."""
    path = Path(source)
    if not path.exists():
        bundled = bundled_configs()
        if str(source) in bundled:
            path = bundled[str(source)]
        else:
            raise ConfigError(f"config: no file or bundled config named {source!r}")
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    with open(path) as handle:
        parser.read_file(handle)
    experiments = []
    for section in parser.sections():
        raw = dict(parser[section])
        if overrides:
            raw.update(overrides)
        experiments.extend(_expand_section(section, raw))
    if not experiments:
        raise ConfigError(f"config: {path} defines no experiment sections")
    return experiments


def experiments_from_overrides(overrides: dict[str, str], name: str = "cli") -> list[Experiment]:
    """Build experiments from CLI flags alone (no config file)."""
    return _expand_section(name, dict(overrides))


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


@dataclass
class ResultRow:
    problem: str
    method: str
    variant: str
    relax: str
    levels: int
    cycle: str
    m: int
    m2: int
    nx: int
    nt: int
    k: int
    value: float
    theta_x: float | None = None
    theta_y: float | None = None
    omega0: float | None = None
    extra: dict[str, str] = field(default_factory=dict)

    def to_csv(self) -> str:
        extra = ";".join(f"{k}={v}" for k, v in sorted(self.extra.items()))
        cells = [
            self.problem,
            self.method,
            self.variant,
            self.relax,
            str(self.levels),
            self.cycle,
            str(self.m),
            str(self.m2),
            str(self.nx),
            str(self.nt),
            str(self.k),
            _fmt(self.value),
            _fmt(self.theta_x),
            _fmt(self.theta_y),
            _fmt(self.omega0),
            extra,
        ]
        return ",".join(cells)


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.17g}"


def _base_extra(exp: Experiment) -> dict[str, str]:
    extra = {"experiment": exp.name}
    for key, value in exp.study:
        extra[key] = value
    if exp.problem == "elasticity":
        extra["nu"] = _fmt(ElasticityParams(exp.rho, exp.mu, exp.dx, exp.dt).nu())
    return extra


def _row_factory(exp: Experiment):
    def make(k: int, value: float, freq: tuple | None, extra: dict[str, str]) -> ResultRow:
        theta_x = theta_y = omega0 = None
        if freq is not None:
            theta_x = freq[0]
            if exp.problem == "elasticity":
                theta_y = freq[1]
            if exp.method == "lfa":
                omega0 = freq[-1]
        return ResultRow(
            exp.problem,
            exp.method,
            exp.variant(),
            exp.relax,
            exp.levels,
            exp.cycle,
            exp.m,
            exp.m2 if exp.levels == 3 else 1,
            exp.nx,
            exp.nt,
            k,
            value,
            theta_x,
            theta_y,
            omega0,
            extra,
        )

    return make


def _series_rows(exp: Experiment, series: PredictionSeries) -> list[ResultRow]:
    make = _row_factory(exp)
    base = _base_extra(exp)
    for key in ("kappa_max", "simultaneity_residual", "excluded_frequencies", "coverage"):
        if key in series.annotations:
            base[key] = str(series.annotations[key])
    rows = [
        make(int(k), float(v), freq, dict(base))
        for k, v, freq in zip(series.k, series.values, series.argmax)
    ]
    if exp.average_window is not None:
        extra = dict(base, kind="average", window=f"{exp.average_window[0]}:{exp.average_window[1]}")
        try:
            avg = average_reduction(series.values, exp.average_window)
        except ConvergedWindowError:
            avg = 0.0
            extra["status"] = "converged"
        rows.append(make(exp.average_window[1], avg, None, extra))
    if exp.emit_argmax_map and "per_mode" in series.annotations:
        map_variant = exp.variant() + "+map"
        for theta, values in series.annotations["per_mode"]:
            for k, value in zip(series.k, values):
                row = make(int(k), float(value), None, dict(base))
                row.variant = map_variant
                row.theta_x = theta[0]
                if exp.problem == "elasticity":
                    row.theta_y = theta[1]
                rows.append(row)
    return rows


def _run_analysis(exp: Experiment) -> list[ResultRow]:
    symbols = exp.symbols()
    hierarchy = exp.hierarchy()
    method = exp.method_spec()
    h_theta = exp.theta_spacing()
    if exp.method == "lfa":
        h_omega = exp.homega if exp.homega is not None else math.pi / 32
        series = lfa.reduction_factors(
            symbols, hierarchy, method, exp.kmax, h_theta=h_theta, h_omega=h_omega
        )
    elif exp.method == "sama":
        series = sama.reduction_factors(
            symbols,
            hierarchy,
            method,
            sama.SamaVariant(exp.scope, exp.norm),
            exp.kmax,
            h_theta=h_theta,
            engine=exp.engine,
            allow_large_exact2=exp.allow_large_exact2,
            collect_map=exp.emit_argmax_map,
        )
    elif exp.method == "ra":
        series = reduction.reduction_factors(
            symbols, hierarchy, method, exp.scope, exp.kmax, h_theta=h_theta
        )
    else:
        raise ConfigError(f"method: {exp.method!r} is not an analysis method")
    return _series_rows(exp, series)


def _run_measured(exp: Experiment) -> list[ResultRow]:
    params = AdvectionParams(exp.c, exp.dx, exp.dt, exp.nx)
    spec = mgrit.ExperimentSpec(
        initial_condition=tuple(zip(exp.ic_amplitude, exp.ic_theta)),
        guess=exp.guess,
        seed=exp.seed,
        iters=exp.iters,
        error_scope=exp.error_scope,
    )
    series = mgrit.measured_factors(params, exp.hierarchy(), exp.method_spec(), spec)
    make = _row_factory(exp)
    base = _base_extra(exp)
    base["guess"] = exp.guess
    base["seed"] = str(exp.seed)
    base["ic"] = "+".join(
        f"{_fmt(a)}cos({_fmt(t)})" for a, t in zip(exp.ic_amplitude, exp.ic_theta)
    )
    if series.converged_at is not None:
        base["converged_at"] = str(series.converged_at)
    rows = [
        make(k + 1, float(f), None, dict(base)) for k, f in enumerate(series.factors)
    ]
    if exp.average_window is not None and rows:
        extra = dict(base, kind="average", window=f"{exp.average_window[0]}:{exp.average_window[1]}")
        try:
            avg = average_reduction(series.factors, exp.average_window)
        except (ConvergedWindowError, ValueError):
            avg = 0.0
            extra["status"] = "converged"
        rows.append(make(exp.average_window[1], avg, None, extra))
    return rows


def run_experiments(experiments: list[Experiment]) -> tuple[list[ResultRow], int]:
    """Execute experiments; returns (rows, exit_status).

    An engine failure contributes an error-marker row (value 0,
    extra error=...) and status 3 instead of aborting the batch.
    """
    rows: list[ResultRow] = []
    status = 0
    for exp in experiments:
        try:
            if exp.method == "measured":
                rows.extend(_run_measured(exp))
            else:
                rows.extend(_run_analysis(exp))
        except NumericalFailure as exc:
            make = _row_factory(exp)
            extra = dict(_base_extra(exp), error=str(exc).replace(",", ";"))
            rows.append(make(1, 0.0, None, extra))
            status = 3
    rows.sort(key=lambda r: (r.method, r.variant, r.k))
    return rows, status


def rows_to_csv(rows: list[ResultRow]) -> str:
    out = io.StringIO()
    out.write(SCHEMA_STAMP + "\n")
    out.write(HEADER + "\n")
    for row in rows:
        out.write(row.to_csv() + "\n")
    return out.getvalue()
