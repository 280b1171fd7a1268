"""Command-line front end: ``cvtele <command> [options]``.

Commands: fidelity, sweep, optimize, metrics, plan, figure. Parameters come
from flags, optionally seeded by ``--config`` (a JSON object whose keys are
flag names without dashes); flags win over the file.

Exit status: 0 success, 2 invalid configuration, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, ConvergenceError, CVTeleError, DegeneratePlanError, DomainError
from .figures import FIGURES, build_figure, fmt, sidecar, write_csv
from .fock import DEFAULT_CUTOFF, build_resource, overlap
from .genplanner import DEFAULT_GAIN, simulate_cascade, solve_pump_amplitudes
from .metrics import metric_report
from .optimizer import optimize_delta, sweep
from .params import (DEFAULT_BETA, DEFAULT_S, InputSpec, ResourceFamily, ResourceSpec,
                     input_family, resource_family)
from .teleport import fidelity, fidelity_quadrature

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_IO = 0, 2, 3, 4
COMMANDS = ("fidelity", "sweep", "optimize", "metrics", "plan", "figure")
_ANGLE = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_angle(text) -> float:
    """Float or a multiple of pi such as ``pi``, ``-pi/4``, ``3pi/4``."""
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(text)
    except ValueError:
        pass
    m = _ANGLE.match(str(text).lower())
    if not m:
        raise ConfigError(f"cannot parse angle {text!r}")
    coef = m.group(1)
    coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
    den = float(m.group(2)) if m.group(2) else 1.0
    return coef * math.pi / den


def parse_grid(text) -> list[float]:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    if isinstance(text, (list, tuple)):
        vals = [float(x) for x in text]
    elif ":" in str(text):
        try:
            lo, hi, step = (float(x) for x in str(text).split(":"))
        except ValueError as exc:
            raise ConfigError(f"grid must be start:stop:step, got {text!r}") from exc
        if step <= 0 or hi < lo:
            raise ConfigError("grid needs step > 0 and stop >= start")
        n = int(math.floor((hi - lo) / step + 1e-9))
        vals = list(np.round(lo + step * np.arange(n + 1), 12))
    else:
        try:
            vals = [float(x) for x in str(text).split(",") if x.strip()]
        except ValueError as exc:
            raise ConfigError(f"cannot parse grid {text!r}") from exc
    if not vals:
        raise ConfigError("grid is empty")
    return vals


def _names(value) -> list[str]:
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [v.strip() for v in str(value).split(",") if v.strip()]


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)

    def get(self, key, default=None):
        val = self.params.get(key)
        return default if val is None else val

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        fmt_ = self.get("format", "json")
        if fmt_ not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        tol = self.get("tol")
        if tol is not None and not float(tol) > 0:
            raise ConfigError("tolerance must be positive")
        cutoff = self.get("cutoff")
        if cutoff is not None and int(cutoff) < 2:
            raise ConfigError("cutoff must be at least 2")
        return self

    # -- parameter builders ----------------------------------------------

    def _input(self, name) -> InputSpec:
        try:
            fam = input_family(name)
        except ValueError as exc:
            raise ConfigError(f"unknown input {name!r}") from exc
        return InputSpec.make(fam, beta=complex(self.get("beta", DEFAULT_BETA)),
                              s=float(self.get("s", DEFAULT_S)),
                              varphi=parse_angle(self.get("varphi", 0.0)))

    def inputs(self) -> list[InputSpec]:
        return [self._input(n) for n in _names(self.get("input", "coherent"))]

    def _resource(self, name, r) -> ResourceSpec:
        try:
            fam = resource_family(name)
        except ValueError as exc:
            raise ConfigError(f"unknown resource {name!r}") from exc
        delta = theta = None
        if fam is ResourceFamily.SQUEEZED_BELL:
            delta = parse_angle(self.get("delta", "pi/4"))
            theta = parse_angle(self.get("theta", 0.0))
        return ResourceSpec.make(fam, r, parse_angle(self.get("phi", "pi")), delta, theta)

    def resources(self, r=None) -> list[ResourceSpec]:
        r = float(self.get("r", 0.0)) if r is None else r
        return [self._resource(n, r) for n in _names(self.get("resource", "twin_beam"))]


# ---------------------------------------------------------------------------
# commands

def _record(obj) -> dict:
    out = {}
    for k, v in obj.items():
        if isinstance(v, complex):
            out[k] = {"re": float(fmt(v.real)), "im": float(fmt(v.imag))}
        elif isinstance(v, (float, np.floating)):
            out[k] = float(fmt(v))
        elif hasattr(v, "value") and not isinstance(v, (int, str)):
            out[k] = v.value
        else:
            out[k] = v
    return out


def _cmd_fidelity(cfg: RunConfig):
    inp = cfg.inputs()[0]
    res = cfg.resources()[0]
    if cfg.get("method", "moment") == "quadrature":
        result = fidelity_quadrature(inp, res, float(cfg.get("tol", 1e-10)))
    else:
        result = fidelity(inp, res)
    return "record", _record({"input": inp.label(), "resource": res.label(),
                              "fidelity": result.value, "method": result.method,
                              "est_error": result.est_error})


def _cmd_sweep(cfg: RunConfig):
    grid = parse_grid(cfg.get("grid", "0:1.5:0.1"))
    table = sweep(cfg.inputs(), cfg.resources(0.0), grid)
    cols = ["input", "resource", "r", "fidelity", "error"]
    rows = [[row.input.label(), row.resource.label(), row.r,
             "" if row.fidelity is None else row.fidelity, row.error or ""]
            for row in table.rows]
    return "table", (cols, rows)


def _cmd_optimize(cfg: RunConfig):
    inp = cfg.inputs()[0]
    r = float(cfg.get("r", 0.0))
    res = optimize_delta(inp, r, parse_angle(cfg.get("phi", "pi")),
                         parse_angle(cfg.get("theta", 0.0)))
    return "record", _record({"input": inp.label(), "r": r, "delta_star": res.delta_star,
                              "fidelity_star": res.fidelity_star, "method": res.method,
                              "iterations": res.iterations})


def _cmd_metrics(cfg: RunConfig):
    res = cfg.resources()[0]
    rep = metric_report(res)
    return "record", _record({"resource": res.label(), "entropy": rep.entropy,
                              "non_gaussianity": rep.non_gaussianity,
                              "tb_relative_nG": rep.tb_relative_nG, "affinity": rep.affinity,
                              "affinity_argmax_s": rep.affinity_argmax_s})


def _cmd_plan(cfg: RunConfig):
    params = dict(cfg.params)
    params.setdefault("resource", "squeezed_bell")
    target = RunConfig("plan", params).resources()[0]
    plan = solve_pump_amplitudes(target, float(cfg.get("gain", DEFAULT_GAIN)))
    cutoff = cfg.get("cutoff")
    out = simulate_cascade(plan, None if cutoff is None else int(cutoff))
    ref = build_resource(target, int(cfg.get("cutoff", DEFAULT_CUTOFF)), tol=1e-13)
    return "record", _record({"target": target.label(), "kappa_a": plan.kappa_a,
                              "kappa_b": plan.kappa_b, "kappa_b_reduced": plan.kappa_b_reduced,
                              "predicted_success_weight": plan.predicted_success_weight,
                              "simulated_success_weight": out.success_weight,
                              "round_trip_overlap": abs(overlap(ref, out.state)) ** 2})


def _cmd_figure(cfg: RunConfig):
    fig_id = cfg.get("figure")
    if fig_id is None:
        raise ConfigError(f"figure id required; choose from {', '.join(FIGURES)}")
    extra = {}
    if cfg.get("beta") is not None:
        extra["beta"] = complex(cfg.get("beta"))
    if cfg.get("s") is not None:
        extra["s"] = float(cfg.get("s"))
    if cfg.get("grid") is not None:
        extra["rs"] = parse_grid(cfg.get("grid"))
    table = build_figure(fig_id, cfg.get("panel"), **extra)
    return "figure", table


_DISPATCH = {"fidelity": _cmd_fidelity, "sweep": _cmd_sweep, "optimize": _cmd_optimize,
             "metrics": _cmd_metrics, "plan": _cmd_plan, "figure": _cmd_figure}


def _render_table(cols, rows, fmt_: str) -> str:
    if fmt_ == "json":
        recs = [dict(zip(cols, [v if isinstance(v, str) else float(fmt(v)) for v in row]))
                for row in rows]
        return json.dumps(recs, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def run_config(cfg: RunConfig, stdout=None) -> int:
    """Execute a validated configuration; returns the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        cfg.validate()
        kind, payload = _DISPATCH[cfg.command](cfg)
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"cvtele: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, DegeneratePlanError, CVTeleError, ArithmeticError) as exc:
        print(f"cvtele: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    out = cfg.get("out")
    fmt_ = cfg.get("format", "csv" if kind in ("table", "figure") else "json")
    meta = {"command": cfg.command, "format": fmt_,
            "parameters": {k: v for k, v in sorted(cfg.params.items())
                           if k not in ("out", "config") and v is not None}}
    if kind == "record":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif kind == "table":
        text = _render_table(*payload, fmt_)
    else:
        meta.update(payload.meta)
        text = None if (out and fmt_ == "csv") else _render_table(payload.columns, payload.rows, fmt_)
    try:
        if out is None:
            stdout.write(text if text is not None else
                         _render_table(payload.columns, payload.rows, fmt_))
            return EXIT_OK
        path = Path(out)
        if text is None:
            write_csv(payload, path)
        else:
            path.write_text(text, encoding="utf-8")
        sidecar(path, meta)
    except OSError as exc:
        print(f"cvtele: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cvtele", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("figure", nargs="?", help="figure id (figure command only)")
    p.add_argument("--config", help="JSON file of default parameters")
    p.add_argument("--input", help="input family, or comma list for sweep "
                                   "(coh, sq, fock, pac, sqfock)")
    p.add_argument("--resource", help="resource family, or comma list (tb, sn, pas, pss, sb)")
    p.add_argument("--r", type=float, help="two-mode squeezing modulus")
    p.add_argument("--phi", help="two-mode squeezing phase (default pi)")
    p.add_argument("--delta", help="squeezed Bell angle")
    p.add_argument("--theta", help="squeezed Bell relative phase")
    p.add_argument("--beta", help="coherent amplitude of the input (complex allowed)")
    p.add_argument("--s", type=float, help="single-mode squeezing of the input")
    p.add_argument("--varphi", help="single-mode squeezing phase of the input")
    p.add_argument("--grid", help="r grid: start:stop:step or comma list")
    p.add_argument("--tol", type=float, help="quadrature tolerance")
    p.add_argument("--cutoff", type=int, help="starting Fock cutoff")
    p.add_argument("--method", choices=("moment", "quadrature"), help="fidelity evaluator")
    p.add_argument("--gain", type=float, help="largest pump gain for plan")
    p.add_argument("--panel", help="figure panel (I, II, III)")
    p.add_argument("--out", help="output file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def config_from_args(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    params: dict = {}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config must be a JSON object")
        params.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for k, v in vars(args).items():
        if k in ("command", "config") or v is None:
            continue
        params[k] = v
    return RunConfig(args.command, params)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        print(f"cvtele: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run_config(cfg)


if __name__ == "__main__":
    sys.exit(main())
