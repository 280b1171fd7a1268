"""Plot-ready data tables for the standard figure set.

Each figure is a function returning a :class:`Table` (column names plus rows);
:func:`run_figure` writes it as CSV with a JSON sidecar describing the
parameters. Output is deterministic: no timestamps, fixed row order, and
numbers rendered with 12 significant digits.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import __version__
from .errors import ConfigError
from .fock import MAX_CUTOFF, NORM_TOL
from .metrics import entanglement_entropy, non_gaussianity, vacuum_affinity
from .optimizer import delta_closed_form, optimize_delta, relative_fidelity
from .params import DEFAULT_BETA, DEFAULT_S, InputSpec, ResourceSpec, standard_inputs
from .teleport import fidelity

RESOURCE_LABELS = {
    "twin_beam": "squeezed state",
    "squeezed_number": "squeezed number",
    "photon_added": "photon-added",
    "photon_subtracted": "photon-subtracted",
    "squeezed_bell": "squeezed Bell",
}
INPUT_LABELS = {
    "coherent": "coherent",
    "squeezed_vacuum": "squeezed vacuum",
    "fock1": "Fock |1>",
    "photon_added_coherent": "photon-added coherent",
    "squeezed_fock1": "squeezed Fock",
}
CONVENTIONS = {
    "vacuum_covariance": "I/2",
    "squeezer": "S12(zeta) = exp(-zeta a1^dag a2^dag + conj(zeta) a1 a2)",
    "characteristic_function": "Tr[D(alpha) rho], symmetric order",
    "phi": "pi unless stated",
}
SIG_DIGITS = 12


@dataclass
class Table:
    columns: list[str]
    rows: list[list[float]]
    meta: dict = field(default_factory=dict)


def r_grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(round((hi - lo) / step))
    return np.round(lo + step * np.arange(n + 1), 12)


def _four_resources(r):
    return [ResourceSpec.twin_beam(r), ResourceSpec.squeezed_number(r),
            ResourceSpec.photon_added(r), ResourceSpec.photon_subtracted(r)]


def _fidelity_panel(inp: InputSpec, rs) -> Table:
    cols = ["r"] + [RESOURCE_LABELS[k] for k in
                    ("twin_beam", "squeezed_number", "photon_added", "photon_subtracted")]
    rows = [[r] + [fidelity(inp, res).value for res in _four_resources(r)] for r in rs]
    return Table(cols, rows, {"input": inp.label()})


def _opt_delta(kind, r):
    return delta_closed_form(kind, r, limit=True)


def fig1(rs=None, **_) -> Table:
    """Entanglement entropy of the squeezed number, photon-added/subtracted and twin-beam states."""
    rs = r_grid(0, 2, 0.01) if rs is None else rs
    cols = ["r", "squeezed number", "photon-added", "photon-subtracted", "squeezed state"]
    rows = []
    for r in rs:
        rows.append([r] + [entanglement_entropy(s) for s in
                           (ResourceSpec.squeezed_number(r), ResourceSpec.photon_added(r),
                            ResourceSpec.photon_subtracted(r), ResourceSpec.twin_beam(r))])
    return Table(cols, rows)


def fig2(panel="II", **_) -> Table:
    """Entropy of the squeezed Bell-like state versus delta (II) or on an (r, delta) grid (I)."""
    if panel == "I":
        rows = [[r, d, entanglement_entropy(ResourceSpec.squeezed_bell(r, d))]
                for r in r_grid(0, 1, 0.05) for d in np.linspace(0, math.pi, 61)]
        return Table(["r", "delta", "entropy"], rows)
    rs = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]
    rows = [[d] + [entanglement_entropy(ResourceSpec.squeezed_bell(r, d)) for r in rs]
            for d in np.linspace(0, math.pi, 181)]
    return Table(["delta"] + [f"r={r:g}" for r in rs], rows)


def fig3(panel="I", beta=DEFAULT_BETA, s=DEFAULT_S, rs=None, **_) -> Table:
    """Fidelity for coherent (I) and squeezed-vacuum (II) inputs, four resources."""
    rs = r_grid(0, 1.5, 0.01) if rs is None else rs
    inp = InputSpec.coherent(beta) if panel == "I" else InputSpec.squeezed_vacuum(s, 0.0)
    return _fidelity_panel(inp, rs)


def fig4(panel="I", beta=DEFAULT_BETA, s=DEFAULT_S, rs=None, **_) -> Table:
    """Fidelity for Fock (I), photon-added coherent (II) and squeezed Fock (III) inputs."""
    rs = r_grid(0, 1.5, 0.01) if rs is None else rs
    inp = {"I": InputSpec.fock1(), "II": InputSpec.photon_added_coherent(beta),
           "III": InputSpec.squeezed_fock1(s, 0.0)}[panel]
    return _fidelity_panel(inp, rs)


def _input_columns():
    return [INPUT_LABELS[i.family.value] for i in standard_inputs()]


def fig5(beta=DEFAULT_BETA, s=DEFAULT_S, rs=None, delta=math.pi / 4, theta=0.0, **_) -> Table:
    """Squeezed Bell resource at fixed (delta, theta) for all five inputs."""
    rs = r_grid(0, 1.5, 0.01) if rs is None else rs
    inputs = standard_inputs(beta, s)
    rows = [[r] + [fidelity(i, ResourceSpec.squeezed_bell(r, delta, theta)).value for i in inputs]
            for r in rs]
    return Table(["r"] + _input_columns(), rows, {"delta": delta, "theta": theta})


def fig6(beta=DEFAULT_BETA, s=DEFAULT_S, rs=None, **_) -> Table:
    """Fidelity optimized over delta for all five inputs."""
    rs = r_grid(0, 1.5, 0.01) if rs is None else rs
    inputs = standard_inputs(beta, s)
    rows = [[r] + [optimize_delta(i, r).fidelity_star for i in inputs] for r in rs]
    return Table(["r"] + _input_columns(), rows)


def fig7_deltaF(panel="I", beta=DEFAULT_BETA, s=DEFAULT_S, rs=None, **_) -> Table:
    """Relative gain of the optimized resource over the twin beam (I) or photon-subtracted state (II)."""
    rs = r_grid(0, 3, 0.01) if rs is None else rs
    ref = ResourceSpec.twin_beam(0.0) if panel == "I" else ResourceSpec.photon_subtracted(0.0)
    inputs = standard_inputs(beta, s)
    rows = [[r] + [relative_fidelity(i, r, ref) for i in inputs] for r in rs]
    return Table(["r"] + _input_columns(), rows, {"reference": ref.family.value})


def fig8(panel="I", rs=None, **_) -> Table:
    """Non-Gaussianity of the squeezed Bell-like state versus delta (I) or r (II)."""
    if panel == "I":
        rows = [[d, non_gaussianity(ResourceSpec.squeezed_bell(0.0, d))]
                for d in np.linspace(0, math.pi, 181)]
        return Table(["delta", "squeezed Bell"], rows, {"r": "arbitrary (evaluated at 0)"})
    rs = r_grid(0, 3, 0.02) if rs is None else rs
    rows = []
    for r in rs:
        specs = (ResourceSpec.squeezed_bell(r, _opt_delta("coherent", r)),
                 ResourceSpec.squeezed_bell(r, _opt_delta("fock1", r)),
                 ResourceSpec.photon_added(r), ResourceSpec.photon_subtracted(r))
        rows.append([r] + [non_gaussianity(x) for x in specs])
    return Table(["r", "squeezed Bell (coherent-optimal)", "squeezed Bell (Fock-optimal)",
                  "photon-added", "photon-subtracted"], rows)


def fig9_affinity(rs=None, **_) -> Table:
    """Maximal overlap with a real-parameter twin beam for the non-Gaussian resources."""
    rs = r_grid(0, 3, 0.02) if rs is None else rs
    rows = []
    for r in rs:
        specs = (ResourceSpec.squeezed_bell(r, _opt_delta("coherent", r)),
                 ResourceSpec.squeezed_bell(r, _opt_delta("fock1", r)),
                 ResourceSpec.photon_added(r), ResourceSpec.photon_subtracted(r),
                 ResourceSpec.squeezed_number(r))
        rows.append([r] + [vacuum_affinity(x)[0] for x in specs])
    return Table(["r", "squeezed Bell (coherent-optimal)", "squeezed Bell (Fock-optimal)",
                  "photon-added", "photon-subtracted", "squeezed number"], rows)


def fig_entropy_opt(rs=None, **_) -> Table:
    """Entropy of the optimized squeezed Bell resources against photon-added/subtracted states."""
    rs = r_grid(0, 2, 0.01) if rs is None else rs
    rows = []
    for r in rs:
        specs = (ResourceSpec.squeezed_bell(r, _opt_delta("coherent", r)),
                 ResourceSpec.squeezed_bell(r, _opt_delta("fock1", r)),
                 ResourceSpec.photon_subtracted(r))
        rows.append([r] + [entanglement_entropy(x) for x in specs])
    return Table(["r", "squeezed Bell (coherent-optimal)", "squeezed Bell (Fock-optimal)",
                  "photon-added/subtracted"], rows)


FIGURES: dict[str, tuple[Callable[..., Table], tuple[str, ...]]] = {
    "fig1": (fig1, ("",)),
    "fig2": (fig2, ("I", "II")),
    "fig3": (fig3, ("I", "II")),
    "fig4": (fig4, ("I", "II", "III")),
    "fig5": (fig5, ("",)),
    "fig6": (fig6, ("",)),
    "fig7_deltaF": (fig7_deltaF, ("I", "II")),
    "fig8": (fig8, ("I", "II")),
    "fig9_affinity": (fig9_affinity, ("",)),
    "fig_entropy_opt": (fig_entropy_opt, ("",)),
}


def build_figure(fig_id: str, panel: str | None = None, **params) -> Table:
    if fig_id not in FIGURES:
        raise ConfigError(f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURES)}")
    func, panels = FIGURES[fig_id]
    if panels != ("",):
        panel = panels[0] if panel is None else panel
        if panel not in panels:
            raise ConfigError(f"{fig_id} has panels {', '.join(panels)}")
        params["panel"] = panel
    elif panel not in (None, ""):
        raise ConfigError(f"{fig_id} has a single panel")
    table = func(**params)
    table.meta = {"figure": fig_id, "panel": panel or None, **table.meta}
    return table


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0:
        return "0"
    return f"{x:.{SIG_DIGITS}g}"


def write_csv(table: Table, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([fmt(v) for v in row])


def sidecar(path: Path, meta: dict) -> Path:
    side = path.with_name(path.name + ".meta.json")
    full = {"package": "cvtele", "version": __version__,
            "fock_tolerance": NORM_TOL, "max_cutoff": MAX_CUTOFF,
            "conventions": CONVENTIONS, **meta}
    side.write_text(json.dumps(full, indent=2, sort_keys=True, default=str) + "\n",
                    encoding="utf-8")
    return side


def run_figure(fig_id: str, out_path, panel: str | None = None, **params) -> Path:
    """Compute a figure table and write ``out_path`` (CSV) plus ``out_path.meta.json``."""
    table = build_figure(fig_id, panel, **params)
    out = Path(out_path)
    write_csv(table, out)
    sidecar(out, {**table.meta, "parameters": {k: v for k, v in params.items() if k != "rs"},
                  "columns": table.columns, "rows": len(table.rows)})
    return out
