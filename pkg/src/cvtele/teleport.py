"""Continuous-variable teleportation in the characteristic-function picture.

The teleported state has ``chi_out(a) = chi_in(a) chi_12(a*, a)`` and the
fidelity is ``F = (1/pi) int d^2 l chi_in(l) chi_out(-l)``. For every input
and resource in the package the integrand is polynomial x Gaussian, so
:func:`fidelity` evaluates it exactly with the moment engine.
:func:`fidelity_quadrature` integrates the same expression on a tensor grid
and serves as the independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import gaussint
from .charfunc import GaussPolyCF, cf_input, cf_resource, zmap_from
from .errors import ConvergenceError, DomainError
from .params import InputSpec, ResourceSpec

# (a1, a2) -> (a*, a)
OUTPUT_MAP = zmap_from([[0.0], [1.0]], [[1.0], [0.0]])
# same map on real coordinates (x, y) -> (x, -y, x, y)
_OUTPUT_REAL = np.array([[1.0, 0.0], [0.0, -1.0], [1.0, 0.0], [0.0, 1.0]])

UNRELIABLE_EIG = 0.02
_EPS = np.finfo(float).eps


class FidelityMethod(str, Enum):
    GAUSSIAN_MOMENT = "gaussian_moment"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class FidelityResult:
    value: float
    method: FidelityMethod
    est_error: float

    def __float__(self):
        return self.value


def output_cf(input_cf: GaussPolyCF, resource_cf: GaussPolyCF) -> GaussPolyCF:
    """Characteristic function of the teleported state."""
    if input_cf.num_modes != 1 or resource_cf.num_modes != 2:
        raise ValueError("output_cf takes a one-mode input and a two-mode resource")
    out = resource_cf.pullback(OUTPUT_MAP) * input_cf
    gaussint.check_integrable(out.quad)
    return out


def fidelity_cf(input_cf: GaussPolyCF, resource_cf: GaussPolyCF) -> FidelityResult:
    integrand = input_cf * output_cf(input_cf, resource_cf).reflect()
    try:
        gaussint.check_integrable(integrand.quad)
    except DomainError as exc:
        raise DomainError(f"fidelity integrand not integrable: {exc}") from exc
    preal = integrand.real_poly()
    val = gaussint.integrate(preal, integrand.quad, integrand.lin) / math.pi
    # rounding estimate: cancellation among monomial contributions
    scale = gaussint.integrate(_abs_poly(preal), integrand.quad.real, np.zeros(2)).real / math.pi
    est = abs(val.imag) + 64 * _EPS * max(abs(scale), abs(val.real))
    return FidelityResult(float(val.real), FidelityMethod.GAUSSIAN_MOMENT, float(est))


def _abs_poly(p):
    out = p.copy()
    out.terms = {e: abs(c) for e, c in p.terms.items()}
    return out


def fidelity(input_spec: InputSpec, resource: ResourceSpec) -> FidelityResult:
    """Exact teleportation fidelity by Gaussian-moment reduction."""
    return fidelity_cf(cf_input(input_spec), cf_resource(resource))


def combined_quadratic_form(input_cf: GaussPolyCF, resource_cf: GaussPolyCF) -> np.ndarray:
    """Real-coordinate quadratic form of ``chi_in(l) chi_in(-l) chi_12(-l*, -l)``."""
    return 2 * input_cf.quad + _OUTPUT_REAL.T @ resource_cf.quad @ _OUTPUT_REAL


def _trapezoid(f, half_width, n):
    x = np.linspace(-half_width, half_width, n + 1)
    w = np.full(n + 1, 2 * half_width / n)
    w[0] = w[-1] = half_width / n
    X, Y = np.meshgrid(x, x, indexing="ij")
    vals = f(X + 1j * Y)
    return complex(np.einsum("i,ij,j->", w, vals, w))


def _edge_max(f, half_width, n=257):
    x = np.linspace(-half_width, half_width, n)
    edge = np.concatenate([x + 1j * half_width, x - 1j * half_width,
                           half_width + 1j * x, -half_width + 1j * x])
    return float(np.abs(f(edge)).max())


def _halve_until(f, half_width, tol, max_points):
    n = 64
    cur = _trapezoid(f, half_width, n)
    change = math.inf
    while n < max_points:
        n *= 2
        nxt = _trapezoid(f, half_width, n)
        change = abs(nxt - cur) / max(abs(nxt), 1e-300)
        cur = nxt
        if change < tol:
            return cur, change, n
    raise ConvergenceError("quadrature did not converge in the step size",
                           best_estimate=cur.real)


def fidelity_quadrature(input_spec: InputSpec, resource: ResourceSpec, tol: float = 1e-10,
                        max_points: int = 2048, max_widenings: int = 12) -> FidelityResult:
    """Fidelity by tensor-grid trapezoid quadrature of the phase-space integral.

    The square ``[-L, L]^2`` starts at six standard deviations of the widest
    direction of the combined Gaussian and is widened by half until the
    integrand on its edge is negligible; polynomial prefactors push mass
    beyond ``6 sigma``. The step is then halved until the relative change is
    below ``tol``, and a final widening confirms the domain.
    """
    if tol < 1e-10:
        raise ValueError("quadrature tolerance must be >= 1e-10")
    cin = cf_input(input_spec)
    cres = cf_resource(resource)

    def integrand(lam):
        neg = -lam
        return cin(lam) * cin(neg) * cres(neg.conj(), neg) / math.pi

    q = combined_quadratic_form(cin, cres).real
    lam_min = float(np.linalg.eigvalsh(0.5 * (q + q.T)).min())
    if lam_min <= 0:
        raise DomainError("fidelity integrand is not integrable")
    half = 6.0 / math.sqrt(lam_min)
    for _ in range(max_widenings):
        if _edge_max(integrand, half) < 1e-3 * tol:
            break
        half *= 1.5
    else:
        raise ConvergenceError("quadrature domain did not converge")

    val, step_change, n = _halve_until(integrand, half, tol, max_points)
    wider = _trapezoid(integrand, 1.5 * half, int(1.5 * n))
    dom_change = abs(wider - val) / max(abs(wider), 1e-300)
    if dom_change >= tol:
        raise ConvergenceError("quadrature domain did not converge", best_estimate=wider.real)
    est = max(step_change, dom_change) * abs(val) + abs(val.imag)
    if lam_min < UNRELIABLE_EIG:
        est *= 1e3
    return FidelityResult(float(val.real), FidelityMethod.QUADRATURE, float(est))
