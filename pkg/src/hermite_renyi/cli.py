"""Command-line front end.

    hermite-renyi compute --n 0 --p 2
    hermite-renyi sweep --n 1,10,100 --p 1 --format csv
    hermite-renyi figure2 --output fig2.csv      # also writes fig2.svg
    hermite-renyi constants --p 0.5,1.5,3
    hermite-renyi validate --output report.txt

Exit codes: 0 ok, 1 validation failure, 2 bad job spec, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .asymptotics import PoleError, RegimeTag, c_constant, classify_regime, orthogonal_log_shift
from .entropy import DEFAULT_CROSSOVER, oscillator_moment
from .hermite import Normalization, Zone, ZoneMap
from .quadrature import ConvergenceError, DivergenceError, airy_constant, zone_integrals

__all__ = ["JobSpec", "SpecError", "parse_args", "run", "main", "CSV_HEADER", "TOL_ENV"]

COMMANDS = ("compute", "sweep", "figure2", "validate", "constants")
FORMATS = ("csv", "json", "svg")
BACKENDS = ("auto", "quadrature", "asymptotic")
CSV_HEADER = ("n", "p", "method", "log_W", "renyi", "spreading_log", "err_estimate", "caveat")
TOL_ENV = "HERMITE_RENYI_TOL"
DEFAULT_TOL = 1e-10
FIGURE2_P = (1.5, 2.0, 3.0)
FIGURE2_N = "log:2:12:60"

EXIT_OK, EXIT_FAIL, EXIT_SPEC, EXIT_NUMERIC = 0, 1, 2, 3


class SpecError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def expand_n(text: str) -> list[int]:
    """'1,10,100' or 'log:LO:HI:COUNT' (decades, rounded, deduplicated)."""
    text = text.strip()
    if text.startswith("log:"):
        try:
            lo, hi, count = text[4:].split(":")
            lo, hi, count = float(lo), float(hi), int(count)
        except ValueError as exc:
            raise SpecError(f"bad log range {text!r}; expected log:LO:HI:COUNT") from exc
        if count < 1 or hi < lo:
            raise SpecError(f"bad log range {text!r}")
        return sorted({int(round(10.0 ** e)) for e in np.linspace(lo, hi, count)})
    out = []
    for tok in text.split(","):
        try:
            v = int(tok)
        except ValueError as exc:
            raise SpecError(f"n must be an integer, got {tok!r}") from exc
        if v < 0:
            raise SpecError(f"n must be non-negative, got {v}")
        out.append(v)
    return out


def expand_p(text: str) -> list[float]:
    out = []
    for tok in text.split(","):
        try:
            v = float(tok)
        except ValueError as exc:
            raise SpecError(f"p must be a real number, got {tok!r}") from exc
        if not (math.isfinite(v) and v > 0):
            raise SpecError(f"p must be positive and finite, got {tok!r}")
        out.append(v)
    return out


@dataclass(frozen=True)
class JobSpec:
    command: str
    n_values: str = "0"
    p_values: str = "2"
    normalization: str = Normalization.ORTHONORMAL.value
    tol: float = DEFAULT_TOL
    output_format: str = "csv"
    output_path: str | None = None
    theta: float = 0.1
    m_cut: float = 2.0
    backend: str = "auto"
    constants: str = "default"
    crossover: int = DEFAULT_CROSSOVER
    workers: int = 1
    error_json: bool = False

    def ns(self) -> list[int]:
        return expand_n(self.n_values)

    def ps(self) -> list[float]:
        return expand_p(self.p_values)

    def to_argv(self) -> list[str]:
        """Canonical argument vector; parse_args(spec.to_argv()) == spec."""
        argv = [self.command, "--n", self.n_values, "--p", self.p_values,
                "--normalization", self.normalization, "--tol", repr(float(self.tol)),
                "--format", self.output_format, "--theta", repr(float(self.theta)),
                "--m-cut", repr(float(self.m_cut)), "--backend", self.backend,
                "--constants", self.constants, "--crossover", str(self.crossover),
                "--workers", str(self.workers)]
        if self.output_path is not None:
            argv += ["--output", self.output_path]
        if self.error_json:
            argv.append("--error-json")
        return argv

    def canonical(self) -> str:
        return shlex.join(self.to_argv())


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError as exc:
        raise SpecError(f"{TOL_ENV}={raw!r} is not a number") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SpecError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hermite-renyi", description="Renyi entropies of Hermite densities.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--n", dest="n_values", default=None,
                    help="comma list of levels or log:LO:HI:COUNT (decades)")
    ap.add_argument("--p", dest="p_values", default=None, help="comma list of orders")
    ap.add_argument("--normalization", choices=[m.value for m in Normalization],
                    default=Normalization.ORTHONORMAL.value)
    ap.add_argument("--tol", type=float, default=None, help=f"default from ${TOL_ENV} or 1e-10")
    ap.add_argument("--format", dest="output_format", choices=FORMATS, default="csv")
    ap.add_argument("--output", dest="output_path", default=None)
    ap.add_argument("--theta", type=float, default=0.1)
    ap.add_argument("--m-cut", dest="m_cut", type=float, default=2.0)
    ap.add_argument("--backend", choices=BACKENDS, default="auto")
    ap.add_argument("--constants", choices=("default", "rederived"), default="default")
    ap.add_argument("--crossover", type=int, default=DEFAULT_CROSSOVER)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--error-json", action="store_true", help="print errors as JSON on stderr")
    return ap


def parse_args(argv) -> JobSpec:
    a = build_parser().parse_args(argv)
    if a.n_values is None:
        a.n_values = FIGURE2_N if a.command == "figure2" else "0"
    if a.p_values is None:
        a.p_values = ",".join(_fmt(p) for p in FIGURE2_P) if a.command == "figure2" else "2"
    tol = _default_tol() if a.tol is None else a.tol
    spec = JobSpec(a.command, a.n_values.strip(), a.p_values.strip(), a.normalization, tol,
                   a.output_format, a.output_path, a.theta, a.m_cut, a.backend, a.constants,
                   a.crossover, a.workers, a.error_json)
    _check(spec)
    return spec


def _check(spec: JobSpec):
    ns, ps = spec.ns(), spec.ps()
    if not (0 < spec.tol < 1):
        raise SpecError(f"tol must lie in (0, 1), got {spec.tol}")
    if not (0 < spec.theta < 1.0 / 6.0):
        raise SpecError(f"theta must lie in (0, 1/6), got {spec.theta}")
    if not spec.m_cut > 0:
        raise SpecError(f"m-cut must be positive, got {spec.m_cut}")
    if spec.workers < 1:
        raise SpecError("workers must be >= 1")
    if spec.command == "compute" and (len(ns) != 1 or len(ps) != 1):
        raise SpecError("compute takes a single n and a single p; use sweep for grids")
    if spec.output_format == "svg" and spec.command in ("compute", "constants", "validate"):
        raise SpecError(f"svg output is not available for {spec.command}")
    if spec.output_format == "svg" and spec.output_path is None:
        raise SpecError("svg output needs --output")


# --- cells ----------------------------------------------------------------

def _cell(args) -> dict:
    """One grid point as a CSV-ready row.  log_W is reported in the requested
    normalization; renyi and spreading_log always refer to the normalized density."""
    n, p, spec = args

    backend = None if spec.backend == "auto" else spec.backend
    moment, method, caveat = oscillator_moment(n, p, spec.tol, backend, spec.crossover, spec.constants)
    log_w = moment.log_value
    if spec.normalization == Normalization.ORTHOGONAL.value:
        # orthogonal_log_shift takes the n+1 indexing of the asymptotic formulas
        log_w += orthogonal_log_shift(n + 1, p)
    if abs(p - 1.0) <= 1e-6:
        renyi = float("nan")
        err = moment.rel_error_estimate
    else:
        renyi = moment.log_value / (1.0 - p)
        err = moment.rel_error_estimate / abs(1.0 - p)
    return {"n": n, "p": p, "method": method.value, "log_W": log_w, "renyi": renyi,
            "spreading_log": renyi, "err_estimate": err, "caveat": caveat.value}


def _zones(n, p, spec) -> dict:
    try:
        zm = ZoneMap(n + 1, theta=spec.theta, m_cut=spec.m_cut)
    except ValueError as exc:
        return {"unavailable": str(exc)}
    zi = zone_integrals(n + 1, p, zm, Normalization(spec.normalization), spec.tol)
    return {z.value: zi[z].log_value for z in Zone}


def compute_rows(spec: JobSpec, grid) -> list[dict]:
    """Evaluate the grid; the pool only changes who computes, not the order."""
    jobs = [(n, p, spec) for n, p in grid]
    if spec.workers == 1 or len(jobs) == 1:
        return [_cell(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        return list(pool.map(_cell, jobs))


# --- emitters -------------------------------------------------------------

def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(r[k]) if isinstance(r[k], (int, float)) else r[k] for k in CSV_HEADER])
    return buf.getvalue()


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_json_safe(x) for x in v]
    return v


def rows_to_json(rows, extra=None) -> str:
    doc = {"columns": list(CSV_HEADER), "rows": _json_safe(list(rows))}
    if extra:
        doc.update(_json_safe(extra))
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_table(spec, rows, title):
    if spec.output_format == "svg":
        from .plotting import plot_renyi_series
        plot_renyi_series([r for r in rows if math.isfinite(r["renyi"])], spec.output_path, title)
        return
    text = rows_to_csv(rows) if spec.output_format == "csv" else rows_to_json(rows)
    _emit(text, spec.output_path)


# --- commands -------------------------------------------------------------

def _run_compute(spec):
    (n,), (p,) = spec.ns(), spec.ps()
    row = compute_rows(spec, [(n, p)])[0]
    if spec.output_format == "json":
        extra = {"zones": _zones(n, p, spec)} if row["method"] == "quadrature" and n > 0 else None
        _emit(rows_to_json([row], extra), spec.output_path)
    else:
        _emit(rows_to_csv([row]), spec.output_path)
    return EXIT_OK


def _run_sweep(spec):
    grid = [(n, p) for p in spec.ps() for n in spec.ns()]
    _emit_table(spec, compute_rows(spec, grid), "Renyi entropy sweep")
    return EXIT_OK


def _run_figure2(spec):
    """Data table plus an SVG next to it (same stem) unless svg alone was asked for."""
    if spec.backend == "auto":
        spec = JobSpec(**{**spec.__dict__, "backend": "asymptotic"})
    grid = [(n, p) for p in spec.ps() for n in spec.ns()]
    rows = compute_rows(spec, grid)
    title = "Renyi entropy, asymptotic leading terms"
    _emit_table(spec, rows, title)
    if spec.output_format != "svg" and spec.output_path is not None:
        from .plotting import plot_renyi_series
        stem, _ = os.path.splitext(spec.output_path)
        plot_renyi_series(rows, stem + ".svg", title)
    return EXIT_OK


def _run_constants(spec):
    rows = []
    for p in spec.ps():
        tag = classify_regime(p).tag
        if tag is RegimeTag.SUBCRITICAL:
            cv, name = c_constant(p), "c_p"
        elif tag is RegimeTag.SUPERCRITICAL:
            cv, name = airy_constant(p, spec.tol), "C_p"
        else:
            rows.append({"p": p, "constant": "none", "value": float("nan"), "abs_error_bound": float("nan")})
            continue
        rows.append({"p": p, "constant": name, "value": cv.value, "abs_error_bound": cv.abs_error_bound})
    if spec.output_format == "json":
        text = json.dumps({"rows": _json_safe(rows)}, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("p", "constant", "value", "abs_error_bound"))
        for r in rows:
            w.writerow((_fmt(r["p"]), r["constant"], _fmt(r["value"]), _fmt(r["abs_error_bound"])))
        text = buf.getvalue()
    _emit(text, spec.output_path)
    return EXIT_OK


def _run_validate(spec):
    from .validation import format_report, run_all

    results = run_all()
    if spec.output_format == "json":
        text = json.dumps([{"key": r.key, "title": r.title, "status": r.status(), "lines": r.lines}
                           for r in results], indent=2) + "\n"
    else:
        text = format_report(results)
    _emit(text, spec.output_path)
    failed = any(not r.passed for r in results if not r.informational)
    return EXIT_FAIL if failed else EXIT_OK


_COMMANDS = {"compute": _run_compute, "sweep": _run_sweep, "figure2": _run_figure2,
             "constants": _run_constants, "validate": _run_validate}


def run(spec: JobSpec) -> int:
    _check(spec)
    return _COMMANDS[spec.command](spec)


def _report_error(kind, exc, as_json):
    if as_json:
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"hermite-renyi: {kind}: {exc}\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    want_json = "--error-json" in argv
    try:
        spec = parse_args(argv)
        return run(spec)
    except SpecError as exc:
        _report_error("spec", exc, want_json)
        return EXIT_SPEC
    except (ConvergenceError, DivergenceError, PoleError, FloatingPointError) as exc:
        _report_error("numerical", exc, want_json)
        return EXIT_NUMERIC
    except ValueError as exc:
        # domain violations surfaced by the library are spec problems
        _report_error("spec", exc, want_json)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
