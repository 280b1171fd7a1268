"""Optimization of the squeezed Bell-like resource over its superposition angle.

At fixed ``(r, phi, theta)`` the resource density matrix is quadratic in
``(cos d, sin d)`` and the fidelity is linear in the resource, so

    F(d) = p + q cos 2d + w sin 2d

exactly. Three fidelity evaluations (d = 0, pi/4, pi/2) fix the profile and
every later evaluation over ``d`` is free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import CVTeleError, DomainError
from .params import InputFamily, InputSpec, ResourceSpec, input_family
from .search import grid_then_refine
from .teleport import fidelity

GRID_POINTS = 64


class OptMethod(str, Enum):
    GRID_REFINE = "grid_refine"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class OptimizationResult:
    delta_star: float
    fidelity_star: float
    method: OptMethod
    iterations: int


@dataclass(frozen=True)
class DeltaProfile:
    """``F(d) = p + q cos 2d + w sin 2d`` for one input at fixed ``(r, phi, theta)``."""

    p: float
    q: float
    w: float

    def __call__(self, delta):
        return self.p + self.q * np.cos(2 * delta) + self.w * np.sin(2 * delta)

    @property
    def argmax(self) -> float:
        return (0.5 * math.atan2(self.w, self.q)) % math.pi

    @property
    def max(self) -> float:
        return self.p + math.hypot(self.q, self.w)


def delta_profile(input_spec: InputSpec, r: float, phi: float = math.pi,
                  theta: float = 0.0) -> DeltaProfile:
    def f(d):
        return fidelity(input_spec, ResourceSpec.squeezed_bell(r, d, theta, phi)).value

    f0, f45, f90 = f(0.0), f(math.pi / 4), f(math.pi / 2)
    p = 0.5 * (f0 + f90)
    return DeltaProfile(p, 0.5 * (f0 - f90), f45 - p)


def optimize_delta(input_spec: InputSpec, r: float, phi: float = math.pi,
                   theta: float = 0.0) -> OptimizationResult:
    """Maximize the fidelity over ``delta in [0, pi)``: 64-point grid, then refinement."""
    if r < 0:
        raise DomainError("r must be non-negative")
    prof = delta_profile(input_spec, r, phi, theta)
    grid = np.arange(GRID_POINTS + 1) * math.pi / GRID_POINTS
    best = grid_then_refine(lambda d: float(prof(d)), grid)
    delta = best.x % math.pi
    return OptimizationResult(delta, best.value, OptMethod.GRID_REFINE, best.iterations)


def delta_closed_form(kind: InputFamily | str, r: float, limit: bool = False) -> float:
    """Analytic optimal angle for coherent or single-photon input at ``phi = pi``.

    For Fock input the expression is 0/0 at ``r = 0``; pass ``limit=True`` to get
    the ``r -> 0+`` value ``pi/4``. The arctan argument behaves as ``1/(3 r^2)``
    near zero and ``expm1`` keeps small ``r`` accurate.
    """
    kind = input_family(kind)
    if r < 0:
        raise DomainError("r must be non-negative")
    if kind is InputFamily.COHERENT:
        return 0.5 * math.atan(1 + math.exp(-2 * r))
    if kind is not InputFamily.FOCK1:
        raise DomainError(f"no closed form for {kind.value} input")
    if r == 0:
        if not limit:
            raise DomainError("Fock closed form is 0/0 at r = 0; use limit=True")
        return math.pi / 4
    e = math.exp(2 * r)
    arg = (1 - e + e * e + 3 * e**3) / (e * 3 * math.expm1(2 * r) ** 2)
    return 0.5 * math.atan(arg)


def closed_form_result(kind: InputFamily | str, r: float) -> OptimizationResult:
    kind = input_family(kind)
    d = delta_closed_form(kind, r, limit=True)
    spec = InputSpec.coherent(0.0) if kind is InputFamily.COHERENT else InputSpec.fock1()
    f = fidelity(spec, ResourceSpec.squeezed_bell(r, d)).value
    return OptimizationResult(d, f, OptMethod.CLOSED_FORM, 0)


def optimized_resource(input_spec: InputSpec, r: float) -> ResourceSpec:
    return ResourceSpec.squeezed_bell(r, optimize_delta(input_spec, r).delta_star)


def relative_fidelity(input_spec: InputSpec, r: float, reference: ResourceSpec) -> float:
    """Relative gain ``(F_opt - F_ref) / F_ref`` of the optimized squeezed Bell resource.

    ``reference`` is re-squeezed to ``r`` with ``phi = pi``.
    """
    ref = reference.with_squeeze(r, math.pi)
    f_ref = fidelity(input_spec, ref).value
    assert f_ref > 0, "reference fidelity must be positive"
    f_opt = optimize_delta(input_spec, r).fidelity_star
    return (f_opt - f_ref) / f_ref


def pss_angle(r: float) -> float:
    """Angle at which the squeezed Bell state equals the photon-subtracted state (phi = pi)."""
    return math.atan(math.tanh(r))


def coincidence_points(input_spec: InputSpec, lo: float = 0.3, hi: float = 1.2,
                       step: float = 0.02) -> list[float]:
    """Squeezings where the optimized squeezed Bell state equals the photon-subtracted one.

    There the gain over the photon-subtracted resource vanishes, but it does so
    tangentially (the gain is never negative), so the scan brackets sign changes of
    ``delta*(r) - atan(tanh r)`` instead and refines them with Brent's method.
    """
    def gap(r):
        d = optimize_delta(input_spec, r).delta_star - pss_angle(r)
        return (d + math.pi / 2) % math.pi - math.pi / 2

    rs = np.arange(lo, hi + 0.5 * step, step)
    gaps = [gap(r) for r in rs]
    roots = []
    for a, b, ga, gb in zip(rs[:-1], rs[1:], gaps[:-1], gaps[1:]):
        if ga == 0:
            roots.append(float(a))
        elif ga * gb < 0:
            roots.append(float(brentq(gap, a, b, xtol=1e-12)))
    return roots


@dataclass(frozen=True)
class SweepRow:
    input: InputSpec
    resource: ResourceSpec
    r: float
    fidelity: float | None
    error: str | None = None


@dataclass
class SweepTable:
    rows: list[SweepRow] = field(default_factory=list)

    def values(self) -> np.ndarray:
        return np.array([np.nan if row.fidelity is None else row.fidelity for row in self.rows])


def sweep(inputs: Sequence[InputSpec], resources: Sequence[ResourceSpec],
          r_grid: Sequence[float]) -> SweepTable:
    """Fidelity table, input-major, then resource, then ``r`` ascending.

    Each resource keeps its own ``phi``, ``delta`` and ``theta``; only ``r`` is
    swept. Per-cell failures are recorded in the row.
    """
    if not inputs or not resources or len(r_grid) == 0:
        raise ValueError("sweep grids must be non-empty")
    table = SweepTable()
    for inp in inputs:
        for res in resources:
            for r in sorted(float(x) for x in r_grid):
                spec = res.with_squeeze(r)
                try:
                    table.rows.append(SweepRow(inp, spec, r, fidelity(inp, spec).value))
                except (CVTeleError, ArithmeticError) as exc:
                    table.rows.append(SweepRow(inp, spec, r, None, f"{type(exc).__name__}: {exc}"))
    return table
