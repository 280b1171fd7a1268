"""Resource diagnostics: entanglement entropy, non-Gaussianity and twin-beam affinity.

Conventions: vacuum covariance ``I/2``, so a two-mode Gaussian state with
covariance ``sigma`` has purity ``1 / (4 sqrt(det sigma))``. All Hilbert-Schmidt
overlaps against Gaussian states come from characteristic functions through
the moment engine; no Gaussian density matrix is built in Fock space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charfunc import cf_moments, cf_overlap, cf_resource, gaussian_cf
from .fock import build_resource, reduced_entropy, twin_beam_amplitudes
from .params import ResourceSpec, SqueezeParam
from .search import grid_then_refine, maximize_bounded

AFFINITY_S_MAX = 5.0
_S_GRID = 51
_PHI_GRID = 16


@dataclass(frozen=True)
class MetricReport:
    entropy: float
    non_gaussianity: float
    tb_relative_nG: float
    affinity: float
    affinity_argmax_s: float


def entanglement_entropy(spec: ResourceSpec, cutoff: int | None = None) -> float:
    """Von Neumann entropy (nats) of one mode of the resource."""
    state = build_resource(spec) if cutoff is None else build_resource(spec, cutoff)
    return reduced_entropy(state)


def gaussian_purity(sigma: np.ndarray) -> float:
    n = sigma.shape[0] // 2
    return 1.0 / (2**n * math.sqrt(np.linalg.det(sigma)))


def non_gaussianity(spec: ResourceSpec) -> float:
    """Hilbert-Schmidt distance to the Gaussian state with the same first and second moments.

    For a pure state this is ``(1 + mu_G - 2 Tr[rho rho_G]) / 2``.
    """
    cf = cf_resource(spec)
    sigma, mean = cf_moments(cf)
    mu_g = gaussian_purity(sigma)
    overlap = cf_overlap(cf, gaussian_cf(sigma, mean)).real
    d = 0.5 * (1.0 + mu_g - 2.0 * overlap)
    # rounding can leave Gaussian states a hair below zero
    return 0.0 if -1e-9 < d < 0 else d


def _tb_fidelity(amps: np.ndarray, r: float, phi: float) -> float:
    tb = twin_beam_amplitudes(SqueezeParam(r, phi), len(amps))
    return abs(np.vdot(tb, amps)) ** 2


def tb_relative_non_gaussianity(spec: ResourceSpec) -> tuple[float, float, float]:
    """``1 - max |<TB(r', phi')|psi>|^2`` and the maximizing ``(r', phi')``.

    ``phi'`` is scanned on a coarse grid, ``r'`` maximized for each, then ``phi'``
    is refined around the best grid cell.
    """
    amps = build_resource(spec).data
    r_max = max(AFFINITY_S_MAX, 2 * spec.r + 1)
    r_grid = np.linspace(0.0, r_max, _S_GRID)

    def best_r(phi):
        return grid_then_refine(lambda r: _tb_fidelity(amps, r, phi), r_grid)

    phis = np.arange(_PHI_GRID) * 2 * math.pi / _PHI_GRID
    vals = [best_r(p).value for p in phis]
    k = int(np.argmax(vals))
    step = 2 * math.pi / _PHI_GRID
    ref = maximize_bounded(lambda p: best_r(p).value, phis[k] - step, phis[k] + step)
    if vals[k] > ref.value:
        phi_star = float(phis[k])
    else:
        phi_star = ref.x % (2 * math.pi)
    inner = best_r(phi_star)
    return max(0.0, 1.0 - inner.value), inner.x, phi_star


def vacuum_affinity(spec: ResourceSpec, s_max: float = AFFINITY_S_MAX) -> tuple[float, float]:
    """``max_s |<TB(-s)|psi>|^2`` over ``s in [0, s_max]`` and the maximizer.

    ``TB(-s)`` is the twin beam with real negative squeeze parameter, i.e. ``phi = pi``.
    """
    amps = build_resource(spec).data
    best = grid_then_refine(lambda s: _tb_fidelity(amps, s, math.pi),
                            np.linspace(0.0, s_max, _S_GRID))
    return min(best.value, 1.0), best.x


def metric_report(spec: ResourceSpec) -> MetricReport:
    g, s = vacuum_affinity(spec)
    return MetricReport(entropy=entanglement_entropy(spec),
                        non_gaussianity=non_gaussianity(spec),
                        tb_relative_nG=tb_relative_non_gaussianity(spec)[0],
                        affinity=g, affinity_argmax_s=s)
