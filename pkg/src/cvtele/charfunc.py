"""Symmetric-order characteristic functions as polynomial x Gaussian objects.

Every state handled by the package has a characteristic function

    chi(a) = P(a, a*) * exp(-v.Q.v/2 + l.v),    v = (Re a1, Im a1, Re a2, ...)

and that form is closed under products, reflections ``a -> -a`` and the
linear substitutions used by squeezing and by the teleportation map. Closed
forms are built here from the Bogoliubov substitution
``a_k -> xi_k = cosh(r) a_k + e^{i phi} sinh(r) a_l*``; :func:`cf_from_fock`
computes the same quantity from Fock amplitudes and displacement matrix
elements and is the independent check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gaussint
from .fock import FockState, displacement_matrix
from .params import InputFamily, InputSpec, ResourceSpec
from .poly import Poly

CF_TAIL_WARN = 1e-8


def _u_block(num_modes):
    # z = U v with z = (a1, a1*, ...), v = (x1, y1, ...)
    return np.kron(np.eye(num_modes), np.array([[1.0, 1j], [1.0, -1j]]))


@dataclass(frozen=True, eq=False)
class GaussPolyCF:
    """``poly(a, a*) * exp(-v.quad.v/2 + lin.v)`` over ``num_modes`` modes."""

    num_modes: int
    quad: np.ndarray
    lin: np.ndarray
    poly: Poly

    def __post_init__(self):
        d = 2 * self.num_modes
        quad = np.asarray(self.quad, dtype=complex).reshape(d, d)
        object.__setattr__(self, "quad", 0.5 * (quad + quad.T))
        object.__setattr__(self, "lin", np.asarray(self.lin, dtype=complex).reshape(d))
        if self.poly.nvars != d:
            raise ValueError("polynomial variable count does not match the mode count")

    @classmethod
    def gaussian(cls, num_modes, quad=None, lin=None, poly=None):
        d = 2 * num_modes
        return cls(num_modes,
                   np.eye(d) if quad is None else quad,
                   np.zeros(d) if lin is None else lin,
                   Poly.const(d) if poly is None else poly)

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other: "GaussPolyCF") -> "GaussPolyCF":
        if other.num_modes != self.num_modes:
            raise ValueError("cannot multiply characteristic functions of different mode counts")
        return GaussPolyCF(self.num_modes, self.quad + other.quad, self.lin + other.lin,
                           self.poly * other.poly)

    def reflect(self) -> "GaussPolyCF":
        """``a -> -a``."""
        return GaussPolyCF(self.num_modes, self.quad, -self.lin,
                           self.poly.scale_variables([-1.0] * (2 * self.num_modes)))

    def pullback(self, zmap: np.ndarray) -> "GaussPolyCF":
        """Substitute ``z = zmap @ z'`` where ``z = (a1, a1*, ...)``.

        ``zmap`` has shape ``(2 * num_modes, 2 * new_modes)`` and must map
        conjugate pairs to conjugate pairs (a real-linear map of phase space).
        """
        zmap = np.asarray(zmap, dtype=complex)
        new_modes = zmap.shape[1] // 2
        tmat = np.linalg.solve(_u_block(self.num_modes), zmap @ _u_block(new_modes))
        if np.abs(tmat.imag).max() > 1e-12:
            raise ValueError("substitution is not a real-linear phase-space map")
        tmat = tmat.real
        forms = [Poly.linear(row) for row in zmap]
        return GaussPolyCF(new_modes, tmat.T @ self.quad @ tmat, tmat.T @ self.lin,
                           self.poly.substitute(forms))

    # -- evaluation -------------------------------------------------------

    def exponent(self, alphas) -> np.ndarray:
        alphas = [np.asarray(a, dtype=complex) for a in alphas]
        v = []
        for a in alphas:
            v += [a.real, a.imag]
        v = np.broadcast_arrays(*v)
        v = np.stack(v)
        q = np.einsum("i...,ij,j...->...", v, self.quad, v)
        return -0.5 * q + np.einsum("i,i...->...", self.lin, v)

    def __call__(self, *alphas):
        return evaluate(self, alphas)

    def real_poly(self) -> Poly:
        return gaussint.complex_to_real(self.poly)


def evaluate(cf: GaussPolyCF, point) -> complex | np.ndarray:
    """``chi(point)``; ``point`` holds one complex number (or array) per mode."""
    point = list(point) if np.ndim(point) else [point]
    if len(point) != cf.num_modes:
        raise ValueError(f"expected {cf.num_modes} coordinates, got {len(point)}")
    alphas = [np.asarray(a, dtype=complex) for a in point]
    zs = []
    for a in alphas:
        zs += [a, a.conj()]
    val = cf.poly.evaluate(zs) * np.exp(cf.exponent(alphas))
    return complex(val) if np.ndim(val) == 0 else val


# ---------------------------------------------------------------------------
# linear maps in z = (a1, a1*, a2, a2*, ...) coordinates

def zmap_from(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """z-coordinate matrix of ``a_out = A a + B a*``."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    n_out, n_in = A.shape
    M = np.zeros((2 * n_out, 2 * n_in), dtype=complex)
    for k in range(n_out):
        for j in range(n_in):
            M[2 * k, 2 * j] = A[k, j]
            M[2 * k, 2 * j + 1] = B[k, j]
            M[2 * k + 1, 2 * j] = B[k, j].conjugate()
            M[2 * k + 1, 2 * j + 1] = A[k, j].conjugate()
    return M


def two_mode_bogoliubov(r: float, phi: float) -> np.ndarray:
    """``xi_k = cosh(r) a_k + e^{i phi} sinh(r) a_l*``."""
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    return zmap_from(math.cosh(r) * np.eye(2), np.exp(1j * phi) * math.sinh(r) * swap)


def single_mode_bogoliubov(s: float, varphi: float) -> np.ndarray:
    """``xi = cosh(s) a + e^{i varphi} sinh(s) a*``."""
    return zmap_from([[math.cosh(s)]], [[np.exp(1j * varphi) * math.sinh(s)]])


# ---------------------------------------------------------------------------
# closed forms

def pair_polynomial(c00: complex, c11: complex) -> Poly:
    """Polynomial part of the CF of ``c00|0,0> + c11|1,1>`` (vacuum Gaussian factored out).

    ``|c00|^2 + 2 Re[c00 conj(c11) a1 a2] + |c11|^2 (1 - |a1|^2)(1 - |a2|^2)``.
    """
    a1, a1c, a2, a2c = (Poly.var(4, i) for i in range(4))
    fock11 = (1 - a1 * a1c) * (1 - a2 * a2c)
    cross = c00 * np.conj(c11) * (a1 * a2) + np.conj(c00) * c11 * (a1c * a2c)
    return abs(c00) ** 2 + cross + abs(c11) ** 2 * fock11


@lru_cache(maxsize=4096)
def cf_resource(spec: ResourceSpec) -> GaussPolyCF:
    """Closed-form two-mode CF of a resource."""
    c00, c11 = spec.pair_coefficients()
    base = GaussPolyCF.gaussian(2, poly=pair_polynomial(c00, c11))
    return base.pullback(two_mode_bogoliubov(spec.zeta.r, spec.zeta.phi))


def twin_beam_gaussian(r: float, phi: float) -> GaussPolyCF:
    """``exp(-(|xi1|^2 + |xi2|^2)/2)``, the twin-beam CF."""
    return GaussPolyCF.gaussian(2).pullback(two_mode_bogoliubov(r, phi))


def _coherent_lin(beta: complex) -> np.ndarray:
    # 2i Im[a conj(beta)] = 2i (y Re beta - x Im beta)
    return 2j * np.array([-beta.imag, beta.real])


@lru_cache(maxsize=1024)
def cf_input(spec: InputSpec) -> GaussPolyCF:
    """Closed-form single-mode CF of an input state."""
    f = spec.family
    a, ac = Poly.var(2, 0), Poly.var(2, 1)
    if f is InputFamily.COHERENT:
        return GaussPolyCF.gaussian(1, lin=_coherent_lin(spec.beta))
    if f is InputFamily.FOCK1:
        return GaussPolyCF.gaussian(1, poly=1 - a * ac)
    if f is InputFamily.PHOTON_ADDED_COHERENT:
        beta = spec.beta
        nb = 1.0 + abs(beta) ** 2
        # phase factor is 2i Im[a conj(beta)], as for the coherent state;
        # the prefactor's 2i Im[...] term is conj(beta) a - beta a*
        poly = (nb - a * ac + np.conj(beta) * a - beta * ac) * (1.0 / nb)
        return GaussPolyCF.gaussian(1, lin=_coherent_lin(beta), poly=poly)
    zmap = single_mode_bogoliubov(spec.s, spec.varphi)
    if f is InputFamily.SQUEEZED_VACUUM:
        return GaussPolyCF.gaussian(1).pullback(zmap)
    return GaussPolyCF.gaussian(1, poly=1 - a * ac).pullback(zmap)


# ---------------------------------------------------------------------------
# Fock oracle

def cf_from_fock(state: FockState, point, cutoff: int | None = None) -> complex:
    """``Tr[D1(a1) D2(a2) rho]`` summed over Fock amplitudes.

    ``cutoff`` limits the sum (defaults to the state's own cutoff).
    """
    if state.norm_deficit > CF_TAIL_WARN:
        warnings.warn(f"state truncation deficit {state.norm_deficit:.2e} limits CF accuracy",
                      RuntimeWarning, stacklevel=2)
    point = list(point) if np.ndim(point) else [point]
    if len(point) != state.num_modes:
        raise ValueError("point length must equal the number of modes")
    n = state.cutoff if cutoff is None else min(cutoff, state.cutoff)
    if state.num_modes == 1:
        psi = state.data[:n]
        d = displacement_matrix(point[0], len(psi))
        return complex(np.vdot(psi, d @ psi))
    if state.num_modes != 2:
        raise ValueError("cf_from_fock handles one- and two-mode states")
    d1 = displacement_matrix(point[0], n)
    d2 = displacement_matrix(point[1], n)
    if state.pair_diagonal:
        c = state.data[:n]
        return complex(np.vdot(c, (d1 * d2) @ c))
    psi = state.data[:n, :n]
    return complex(np.vdot(psi, d1 @ psi @ d2.T))


# ---------------------------------------------------------------------------
# moments and overlaps

def _quadrature_map(num_modes):
    # D(a) = exp(i eta.R) with eta = J v, R = (x1, p1, ...)
    return np.kron(np.eye(num_modes), math.sqrt(2.0) * np.array([[0.0, 1.0], [-1.0, 0.0]]))


def cf_moments(cf: GaussPolyCF) -> tuple[np.ndarray, np.ndarray]:
    """Covariance matrix (vacuum I/2) and first moments read off a CF's Taylor expansion."""
    d = 2 * cf.num_modes
    p = cf.real_poly()
    p0 = p.terms.get((0,) * d, 0j)
    if abs(p0) < 1e-14:
        raise ValueError("characteristic function vanishes at the origin")
    p1 = np.zeros(d, dtype=complex)
    p2 = np.zeros((d, d), dtype=complex)
    for e, c in p.terms.items():
        deg = sum(e)
        if deg == 1:
            p1[e.index(1)] = c / p0
        elif deg == 2:
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                p2[i, i] = 2 * c / p0
            else:
                p2[i, j] = p2[j, i] = c / p0
    hess = p2 - np.outer(p1, p1) - cf.quad
    jinv = np.linalg.inv(_quadrature_map(cf.num_modes))
    sigma = -(jinv.T @ hess @ jinv)
    mean = -1j * (jinv.T @ (cf.lin + p1))
    return 0.5 * (sigma + sigma.T).real, mean.real


def gaussian_cf(sigma: np.ndarray, mean: np.ndarray | None = None) -> GaussPolyCF:
    """CF of the Gaussian state with covariance ``sigma`` and first moments ``mean``."""
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0] // 2
    jmat = _quadrature_map(n)
    mean = np.zeros(2 * n) if mean is None else np.asarray(mean, dtype=float)
    return GaussPolyCF.gaussian(n, quad=jmat.T @ sigma @ jmat, lin=1j * (jmat.T @ mean))


def cf_overlap(cf1: GaussPolyCF, cf2: GaussPolyCF) -> complex:
    """``Tr[rho1 rho2] = pi^-n int d^2n a chi1(a) chi2(-a)``, evaluated exactly."""
    prod = cf1 * cf2.reflect()
    val = gaussint.integrate(prod.real_poly(), prod.quad, prod.lin)
    return val / math.pi ** cf1.num_modes
