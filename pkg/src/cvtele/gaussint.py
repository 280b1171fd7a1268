"""Exact integrals of polynomial x Gaussian integrands.

``integrate(p, Q, l)`` returns ``int d^d v p(v) exp(-v.Q.v/2 + l.v)`` for a
complex symmetric ``Q`` whose real part is positive definite. The Gaussian
normalization is closed form; monomial averages come from the recurrence

    E[v^k] = mu_i E[v^(k - e_i)] + sum_j Sigma_ij (k - e_i)_j E[v^(k - e_i - e_j)]

with ``mu = Q^-1 l`` and ``Sigma = Q^-1`` (Gaussian integration by parts),
continued analytically to complex ``Q`` and ``l``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .poly import Poly


def complex_to_real(poly: Poly) -> Poly:
    """Rewrite a polynomial in ``(a1, a1*, ...)`` as one in ``(x1, y1, ...)``."""
    n = poly.nvars
    forms = []
    for k in range(n // 2):
        fwd = [0j] * n
        fwd[2 * k], fwd[2 * k + 1] = 1.0, 1j
        bwd = [0j] * n
        bwd[2 * k], bwd[2 * k + 1] = 1.0, -1j
        forms += [Poly.linear(fwd), Poly.linear(bwd)]
    return poly.substitute(forms)


def check_integrable(Q: np.ndarray, tol: float = 0.0) -> float:
    """Smallest eigenvalue of the symmetric real part of ``Q``; raises if not > tol."""
    re = np.real(Q)
    lam = float(np.linalg.eigvalsh(0.5 * (re + re.T)).min())
    if not lam > tol:
        raise DomainError(f"Gaussian exponent is not integrable (min eigenvalue {lam:.3e})")
    return lam


def gaussian_moments(mean: np.ndarray, cov: np.ndarray, multi_indices) -> dict[tuple, complex]:
    """``E[prod v_j^k_j]`` for each requested multi-index."""
    mean = np.asarray(mean, dtype=complex)
    cov = np.asarray(cov, dtype=complex)
    d = len(mean)
    memo: dict[tuple, complex] = {(0,) * d: 1.0 + 0j}

    def m(k):
        if k in memo:
            return memo[k]
        if min(k) < 0:
            return 0j
        i = next(j for j, kj in enumerate(k) if kj)
        km = list(k)
        km[i] -= 1
        km = tuple(km)
        val = mean[i] * m(km)
        for j, kj in enumerate(km):
            if kj and cov[i, j] != 0:
                kk = list(km)
                kk[j] -= 1
                val += cov[i, j] * kj * m(tuple(kk))
        memo[k] = val
        return val

    return {tuple(k): m(tuple(k)) for k in multi_indices}


def gaussian_normalization(Q: np.ndarray, l: np.ndarray) -> complex:
    """``int d^d v exp(-v.Q.v/2 + l.v)`` on the principal branch."""
    d = Q.shape[0]
    lam = np.linalg.eigvals(Q)
    sqrt_det = np.prod(np.sqrt(lam.astype(complex)))
    quad = 0.5 * l @ np.linalg.solve(Q, l)
    return (2 * math.pi) ** (d / 2) / sqrt_det * np.exp(quad)


def integrate(poly_real: Poly, Q: np.ndarray, l: np.ndarray | None = None) -> complex:
    """Exact ``int d^d v poly(v) exp(-v.Q.v/2 + l.v)``."""
    Q = np.asarray(Q, dtype=complex)
    d = Q.shape[0]
    if poly_real.nvars != d:
        raise ValueError("polynomial and quadratic form disagree on dimension")
    l = np.zeros(d, dtype=complex) if l is None else np.asarray(l, dtype=complex)
    check_integrable(Q)
    cov = np.linalg.inv(Q)
    cov = 0.5 * (cov + cov.T)
    mean = cov @ l
    moments = gaussian_moments(mean, cov, poly_real.terms.keys())
    avg = sum(c * moments[e] for e, c in poly_real.terms.items())
    return complex(gaussian_normalization(Q, l) * avg)
