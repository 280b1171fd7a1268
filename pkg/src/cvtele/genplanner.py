"""Pump settings for heralded generation of squeezed Bell-like states.

Two simultaneous first-order processes act on a twin beam ``|zeta>`` and an
idler mode 3,

    (1 + kA a1^dag a2^dag a3^dag + kB a1 a2 a3^dag) |zeta>_12 |0>_3,

and detecting one photon in mode 3 leaves ``kA a1^dag a2^dag|zeta> + kB a1 a2|zeta>``.
Pulling the ladder operators through the squeezer gives

    a1^dag a2^dag S|00> = cosh^2 r  S(|11> - e^{-i phi} t |00>)
    a1 a2 S|00>         = cosh^2 r  S(t)(-e^{i phi} |00> + e^{2i phi} t |11>)

with ``t = tanh r``. In the variables ``(kA, kB_red)`` with ``kB_red = t kB`` the
pair coefficients are ``c = M (kA, kB_red)`` for

    M = [[-e^{-i phi} t, -e^{i phi}], [1, e^{2i phi} t]],   det M = e^{i phi} / cosh^2 r.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DegeneratePlanError, DomainError
from .fock import (FockState, apply_two_mode_squeeze, build_resource, lower, overlap,
                   pair_state, raise_)
from .params import ResourceSpec

DEFAULT_GAIN = 0.01
GAIN_WARN = 0.1
CASCADE_TOL = 1e-12


@dataclass(frozen=True)
class PumpPlan:
    """Dimensionless gains of the two processes for a target resource.

    ``kappa_a`` and ``kappa_b`` multiply ``a1^dag a2^dag a3^dag`` and
    ``a1 a2 a3^dag``; ``kappa_b_reduced = tanh(r) kappa_b`` is the variable of
    the linear system.
    """

    kappa_a: complex
    kappa_b: complex
    target: ResourceSpec
    predicted_success_weight: float

    @property
    def kappa_b_reduced(self) -> complex:
        return math.tanh(self.target.r) * self.kappa_b


@dataclass(frozen=True)
class CascadeOutcome:
    state: FockState
    success_weight: float


def pump_matrix(r: float, phi: float) -> np.ndarray:
    t = math.tanh(r)
    e = cmath.exp(1j * phi)
    return np.array([[-t / e, -e], [1.0, e * e * t]])


def condition_bound(r: float) -> float:
    """Spectral condition number of :func:`pump_matrix`; it does not depend on ``phi``."""
    return math.cosh(r) ** 2 * (1 + math.tanh(r)) ** 2


def solve_pump_amplitudes(target: ResourceSpec, gain: float = DEFAULT_GAIN) -> PumpPlan:
    """Gains that herald ``target``, scaled so the larger one has modulus ``gain``."""
    if gain <= 0:
        raise DomainError("gain must be positive")
    if gain > GAIN_WARN:
        warnings.warn(f"gain {gain} is outside the weak-coupling regime", stacklevel=2)
    r, phi = target.r, target.phi
    c = np.array(target.pair_coefficients(), dtype=complex)
    ka, kb_red = np.linalg.solve(pump_matrix(r, phi), c)
    t = math.tanh(r)
    if t == 0:
        if abs(kb_red) > 1e-15:
            raise DomainError("without squeezing the subtraction process cannot reach |0,0>")
        kb = 0j
    else:
        kb = kb_red / t
    scale = gain / max(abs(ka), abs(kb))
    ka, kb = ka * scale, kb * scale
    # |M (ka, t kb)|^2 times the cosh^4 prefactor pulled out of both processes
    weight = math.cosh(r) ** 4 * float(np.sum(np.abs(pump_matrix(r, phi) @ [ka, t * kb]) ** 2))
    return PumpPlan(complex(ka), complex(kb), target, weight)


def _twin_beam_tensor(target: ResourceSpec, cutoff: int | None, tol: float) -> np.ndarray:
    n = 32 if cutoff is None else cutoff
    while True:
        tb = apply_two_mode_squeeze(pair_state([1.0]), target.zeta, n, method="expm")
        # photon addition scales amplitude k by up to k; the upper half of the
        # geometric tail bounds what lies beyond the cutoff (1 - norm is
        # rounding noise at this level)
        k = np.arange(n // 2, n)
        tail = float(np.sum(k * k * np.abs(tb.data[n // 2:]) ** 2))
        if tail < tol:
            return tb.amplitudes
        if cutoff is not None or n >= 1024:
            raise ConvergenceError(f"twin beam truncated at cutoff {n}", norm_deficit=tb.norm_deficit)
        n *= 2


def simulate_cascade(plan: PumpPlan, cutoff: int | None = None,
                     tol: float = CASCADE_TOL) -> CascadeOutcome:
    """First-order cascade, then projection of mode 3 onto ``|1>``.

    The twin beam comes from exponentiating the truncated squeezing generator
    (not from the closed-form builder used for targets); with ``cutoff=None`` the cutoff is
    doubled until the ``k^2``-weighted weight of the upper half of the pair amplitudes is
    below ``tol``.
    """
    if plan.kappa_a == 0 and plan.kappa_b == 0:
        raise DegeneratePlanError("both gains vanish; nothing is heralded")
    tb = _twin_beam_tensor(plan.target, cutoff, tol)
    n = tb.shape[0]
    psi = np.zeros((n, n, 2), dtype=complex)
    psi[:, :, 0] = tb
    added = raise_(raise_(raise_(psi, 0), 1), 2)
    subtracted = raise_(lower(lower(psi, 0), 1), 2)
    heralded = plan.kappa_a * added[:, :, 1]
    heralded[:n, :n] += plan.kappa_b * subtracted[:, :, 1]
    weight = float(np.vdot(heralded, heralded).real)
    if weight == 0:
        raise DegeneratePlanError("post-selected component has zero weight")
    state = FockState(heralded / math.sqrt(weight), 2)
    return CascadeOutcome(state, weight)


def round_trip_overlap(target: ResourceSpec, gain: float = DEFAULT_GAIN,
                       cutoff: int | None = None) -> float:
    """``|<target|heralded>|^2`` for the plan solved from ``target``."""
    out = simulate_cascade(solve_pump_amplitudes(target, gain), cutoff)
    ref = build_resource(target, tol=1e-13)
    return abs(overlap(ref, out.state)) ** 2
