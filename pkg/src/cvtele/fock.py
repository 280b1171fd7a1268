"""Truncated Fock-space states and operators.

This is the brute-force side of every check in the package: resources and
inputs are built as explicit amplitude tensors, and entropies, overlaps,
covariance matrices and (in :mod:`cvtele.charfunc`) characteristic functions
are computed from those tensors without any of the closed-form algebra.

Two-mode resources are superpositions of ``|n,n>`` pairs, so they are stored
in a compact *pair-diagonal* form (one amplitude per ``n``) which keeps large
cutoffs cheap. General tensors are used for everything else.

Squeezer convention: ``S12(zeta) = exp(-zeta a1^dag a2^dag + conj(zeta) a1 a2)``,
which gives ``S^dag a_i S = cosh(r) a_i - e^{i phi} sinh(r) a_j^dag``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln
from scipy.sparse.linalg import expm_multiply

from .errors import ConvergenceError, DomainError
from .params import InputFamily, InputSpec, ResourceSpec, SqueezeParam

DEFAULT_CUTOFF = 30
MAX_CUTOFF = 8192
NORM_TOL = 1e-10
EIG_DROP = 1e-14


@dataclass(frozen=True, eq=False)
class FockState:
    """Amplitudes of a pure state of 1-3 bosonic modes in a truncated basis.

    For ``pair_diagonal`` states ``data[n]`` is the amplitude of ``|n,n>``;
    otherwise ``data`` is the full tensor indexed by photon numbers.
    ``norm_deficit`` is ``1 - sum|amp|^2`` recorded before renormalization.
    """

    data: np.ndarray
    num_modes: int
    norm_deficit: float = 0.0
    pair_diagonal: bool = False

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        if not 1 <= self.num_modes <= 3:
            raise ValueError("FockState supports 1 to 3 modes")
        if self.pair_diagonal:
            if self.num_modes != 2 or data.ndim != 1:
                raise ValueError("pair-diagonal storage is for two-mode states only")
        elif data.ndim != self.num_modes:
            raise ValueError(f"amplitude tensor has {data.ndim} axes for {self.num_modes} modes")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def cutoffs(self) -> tuple[int, ...]:
        if self.pair_diagonal:
            return (self.data.shape[0],) * 2
        return self.data.shape

    @property
    def cutoff(self) -> int:
        return max(self.cutoffs)

    @property
    def amplitudes(self) -> np.ndarray:
        """Full amplitude tensor (expanded from pair-diagonal storage if needed)."""
        if self.pair_diagonal:
            return np.diag(self.data)
        return self.data

    def norm2(self) -> float:
        return float(np.vdot(self.data, self.data).real)

    def normalized(self) -> "FockState":
        nrm = math.sqrt(self.norm2())
        if nrm == 0:
            raise DomainError("cannot normalize the zero vector")
        return FockState(self.data / nrm, self.num_modes, self.norm_deficit, self.pair_diagonal)

    def to_full(self) -> "FockState":
        if not self.pair_diagonal:
            return self
        return FockState(self.amplitudes, 2, self.norm_deficit)

    def padded(self, cutoffs) -> "FockState":
        """Zero-pad (never truncate) to at least the given per-mode cutoffs."""
        if self.pair_diagonal:
            n = max(cutoffs) if np.ndim(cutoffs) else int(cutoffs)
            return FockState(_pad(self.data, (max(n, self.data.shape[0]),)), 2,
                             self.norm_deficit, True)
        shape = tuple(max(a, b) for a, b in zip(self.data.shape, cutoffs))
        return FockState(_pad(self.data, shape), self.num_modes, self.norm_deficit)


def _pad(arr, shape):
    if arr.shape == tuple(shape):
        return arr
    out = np.zeros(shape, dtype=complex)
    out[tuple(slice(0, s) for s in arr.shape)] = arr
    return out


def fock_state(ns, cutoff) -> FockState:
    """Number state ``|n1, n2, ...>``."""
    ns = (ns,) if np.isscalar(ns) else tuple(ns)
    if any(n >= cutoff for n in ns):
        raise ValueError("photon number must be below the cutoff")
    data = np.zeros((cutoff,) * len(ns), dtype=complex)
    data[ns] = 1.0
    return FockState(data, len(ns))


def pair_state(coeffs, cutoff=None) -> FockState:
    """Pair-diagonal state ``sum_n coeffs[n] |n,n>`` (not renormalized)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    cutoff = len(coeffs) if cutoff is None else cutoff
    return FockState(_pad(coeffs, (cutoff,)), 2, 0.0, True)


# ---------------------------------------------------------------------------
# operators

def annihilation(cutoff) -> sp.csr_matrix:
    return sp.diags(np.sqrt(np.arange(1, cutoff, dtype=float)), 1, format="csr")


def creation(cutoff) -> sp.csr_matrix:
    return annihilation(cutoff).T.tocsr()


def apply_on_mode(tensor: np.ndarray, op, mode: int) -> np.ndarray:
    """Apply a single-mode operator matrix along one axis of an amplitude tensor."""
    moved = np.moveaxis(tensor, mode, 0)
    shape = moved.shape
    out = op @ moved.reshape(shape[0], -1)
    return np.moveaxis(np.asarray(out).reshape((op.shape[0],) + shape[1:]), 0, mode)


def lower(tensor, mode):
    """``a_mode`` applied to an amplitude tensor; exact on the truncated space."""
    return apply_on_mode(tensor, annihilation(tensor.shape[mode]), mode)


def raise_(tensor, mode):
    """``a_mode^dag`` applied to a tensor, growing that axis by one."""
    n = tensor.shape[mode]
    op = sp.diags(np.sqrt(np.arange(1, n + 1, dtype=float)), -1, shape=(n + 1, n), format="csr")
    return apply_on_mode(tensor, op, mode)


def assoc_laguerre_table(nmax: int, k: int, x: float) -> tuple[np.ndarray, np.ndarray]:
    """``L_n^{(k)}(x)`` for n = 0..nmax by upward recurrence.

    Values are returned as ``(mantissa, log_scale)`` with ``L = mantissa *
    exp(log_scale)`` so that high orders never overflow.
    """
    mant = np.zeros(nmax + 1)
    logs = np.zeros(nmax + 1)
    prev, cur, scale = 0.0, 1.0, 0.0
    mant[0] = 1.0
    for n in range(nmax):
        # (n+1) L_{n+1} = (2n+1+k-x) L_n - (n+k) L_{n-1}
        nxt = ((2 * n + 1 + k - x) * cur - (n + k) * prev) / (n + 1)
        prev, cur = cur, nxt
        big = max(abs(prev), abs(cur))
        if big > 1e100:
            prev /= big
            cur /= big
            scale += math.log(big)
        mant[n + 1] = cur
        logs[n + 1] = scale
    return mant, logs


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """``<m|D(alpha)|n>`` for m, n < cutoff from associated Laguerre polynomials."""
    alpha = complex(alpha)
    x = abs(alpha) ** 2
    out = np.zeros((cutoff, cutoff), dtype=complex)
    if x == 0:
        np.fill_diagonal(out, 1.0)
        return out
    logabs = math.log(abs(alpha))
    ph = alpha / abs(alpha)
    lf = gammaln(np.arange(cutoff + 1) + 1.0)
    for k in range(cutoff):
        mant, logs = assoc_laguerre_table(cutoff - 1 - k, k, x)
        n = np.arange(cutoff - k)
        m = n + k
        logpref = 0.5 * (lf[n] - lf[m]) + k * logabs - 0.5 * x + logs
        vals = mant * np.exp(logpref)
        # lower triangle carries alpha^k, upper triangle (-conj(alpha))^k
        out[m, n] = vals * ph ** k
        if k:
            out[n, m] = vals * (-ph.conjugate()) ** k
    return out


# ---------------------------------------------------------------------------
# squeezing

def twin_beam_amplitudes(zeta: SqueezeParam, cutoff: int) -> np.ndarray:
    """Closed-form ``|n,n>`` amplitudes of ``S12(zeta)|0,0>``."""
    n = np.arange(cutoff)
    c = -cmath.exp(1j * zeta.phi) * math.tanh(zeta.r)
    return c ** n / math.cosh(zeta.r)


def _squeeze_pairs_factorized(coeffs, zeta: SqueezeParam, cutoff: int) -> np.ndarray:
    """Exact ``|n,n>`` amplitudes (n < cutoff) of ``S12(zeta) sum_k coeffs[k]|k,k>``.

    Uses the normal-ordered factorization
    ``S12 = exp(-tau a1^dag a2^dag) cosh(r)^-(N1+N2+1) exp(conj(tau) a1 a2)``
    with ``tau = e^{i phi} tanh r``; every sum is finite, so the only error is
    the truncation of the output.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    kmax = len(coeffs)
    if zeta.r == 0:
        return _pad(coeffs[:cutoff], (cutoff,))
    t = math.tanh(zeta.r)
    ch = math.cosh(zeta.r)
    tau = cmath.exp(1j * zeta.phi) * t
    # lowering stage: e_m = sum_k coeffs[k] C(k, m) conj(tau)^(k-m)
    e = np.zeros(kmax, dtype=complex)
    for m in range(kmax):
        k = np.arange(m, kmax)
        binom = np.exp(gammaln(k + 1.0) - gammaln(m + 1.0) - gammaln(k - m + 1.0))
        e[m] = np.sum(coeffs[m:] * binom * tau.conjugate() ** (k - m))
    # diagonal stage then raising stage
    n = np.arange(cutoff)
    out = np.zeros(cutoff, dtype=complex)
    logt = math.log(t)
    ph = -cmath.exp(1j * zeta.phi)
    for m in range(min(kmax, cutoff)):
        if e[m] == 0:
            continue
        j = n[m:] - m
        logmag = (gammaln(n[m:] + 1.0) - gammaln(m + 1.0) - gammaln(j + 1.0)
                  + j * logt - (2 * m + 1) * math.log(ch))
        out[m:] += e[m] * np.exp(logmag) * ph ** j
    return out


def _two_mode_generator(zeta: SqueezeParam, shape) -> sp.csr_matrix:
    z = zeta.zeta
    a1, a2 = annihilation(shape[0]), annihilation(shape[1])
    up = sp.kron(a1.T, a2.T, format="csr")
    down = sp.kron(a1, a2, format="csr")
    return (-z * up + z.conjugate() * down).tocsr()


def _pair_generator(zeta: SqueezeParam, size: int) -> sp.csr_matrix:
    z = zeta.zeta
    n = np.arange(1, size, dtype=float)
    return sp.diags([-z * n, z.conjugate() * n], [-1, 1], format="csr")


def _workspace(cutoff):
    return 2 * cutoff + 16


def apply_two_mode_squeeze(state: FockState, zeta: SqueezeParam, cutoff: int | None = None,
                           method: str = "auto", tol: float | None = None) -> FockState:
    """Apply ``S12(zeta)`` and truncate to ``cutoff`` photons per mode.

    ``method="expm"`` exponentiates the generator on an enlarged truncated
    space (tridiagonal for pair-diagonal states, full two-mode otherwise);
    ``"factorized"`` uses the exact normal-ordered form and needs a
    pair-diagonal input. ``"auto"`` picks the factorized route when possible.
    The returned state is *not* renormalized; its ``norm_deficit`` is the
    weight lost to truncation (plus the input's own deficit). If ``tol`` is
    given and the deficit exceeds it, :class:`ConvergenceError` is raised.
    """
    if state.num_modes != 2:
        raise ValueError("two-mode squeezing needs a two-mode state")
    cutoff = state.cutoff if cutoff is None else int(cutoff)
    if method == "auto":
        method = "factorized" if state.pair_diagonal else "expm"
    norm_in = state.norm2()
    if zeta.r == 0:
        if state.pair_diagonal:
            data = _pad(state.data[:cutoff], (cutoff,))
        else:
            data = _pad(state.data[:cutoff, :cutoff], (cutoff, cutoff))
        out = FockState(data, 2, 0.0, state.pair_diagonal)
    elif method == "factorized":
        if not state.pair_diagonal:
            raise ValueError("factorized squeezing needs a pair-diagonal state")
        out = FockState(_squeeze_pairs_factorized(state.data, zeta, cutoff), 2, 0.0, True)
    elif method == "expm":
        w = max(_workspace(cutoff), state.cutoff + 16)
        if state.pair_diagonal:
            vec = expm_multiply(_pair_generator(zeta, w), _pad(state.data, (w,)))
            out = FockState(vec[:cutoff], 2, 0.0, True)
        else:
            big = _pad(state.data, (w, w)).reshape(-1)
            vec = expm_multiply(_two_mode_generator(zeta, (w, w)), big).reshape(w, w)
            out = FockState(vec[:cutoff, :cutoff], 2, 0.0)
    else:
        raise ValueError(f"unknown squeeze method {method!r}")
    deficit = max(norm_in - out.norm2(), 0.0) + state.norm_deficit
    out = FockState(out.data, 2, deficit, out.pair_diagonal)
    if tol is not None and deficit > tol:
        raise ConvergenceError(f"squeezed state lost {deficit:.3e} of its norm at cutoff {cutoff}",
                               norm_deficit=deficit)
    return out


def squeeze_single(state: FockState, s: float, varphi: float, cutoff: int | None = None) -> FockState:
    """Apply ``S(eps) = exp(-eps a^dag^2 / 2 + conj(eps) a^2 / 2)``, ``eps = s e^{i varphi}``."""
    if state.num_modes != 1:
        raise ValueError("single-mode squeezing needs a one-mode state")
    cutoff = state.cutoff if cutoff is None else int(cutoff)
    norm_in = state.norm2()
    if s == 0:
        out = _pad(state.data[:cutoff], (cutoff,))
    else:
        eps = cmath.rect(s, varphi)
        w = max(_workspace(cutoff), state.cutoff + 16)
        a = annihilation(w)
        gen = (-0.5 * eps * (a.T @ a.T) + 0.5 * eps.conjugate() * (a @ a)).tocsr()
        out = expm_multiply(gen, _pad(state.data, (w,)))[:cutoff]
    st = FockState(out, 1)
    return FockState(out, 1, max(norm_in - st.norm2(), 0.0) + state.norm_deficit)


# ---------------------------------------------------------------------------
# builders

def _converge(build, cutoff, tol, adaptive, max_cutoff, what):
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    while True:
        state = build(cutoff)
        if state.norm_deficit < tol:
            return state.normalized()
        if not adaptive or cutoff >= max_cutoff:
            raise ConvergenceError(
                f"{what}: norm deficit {state.norm_deficit:.3e} at cutoff {cutoff} "
                f"exceeds {tol:.1e}", norm_deficit=state.norm_deficit)
        cutoff = min(2 * cutoff, max_cutoff)


def build_resource(spec: ResourceSpec, cutoff: int = DEFAULT_CUTOFF, *, tol: float = NORM_TOL,
                   adaptive: bool = True, max_cutoff: int = MAX_CUTOFF,
                   method: str = "auto") -> FockState:
    """Normalized pair-diagonal Fock state of a two-mode resource.

    Starts from ``cutoff`` and doubles it until the truncation deficit is
    below ``tol`` (or raises :class:`ConvergenceError` once ``max_cutoff`` is
    reached, or immediately when ``adaptive`` is false).
    """
    c00, c11 = spec.pair_coefficients()
    seed = pair_state([c00, c11])

    def build(n):
        return apply_two_mode_squeeze(seed, spec.zeta, n, method=method)

    return _converge(build, cutoff, tol, adaptive, max_cutoff, spec.family.value)


def _coherent_amplitudes(beta: complex, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff)
    if beta == 0:
        out = np.zeros(cutoff, dtype=complex)
        out[0] = 1.0
        return out
    logmag = -0.5 * abs(beta) ** 2 + n * math.log(abs(beta)) - 0.5 * gammaln(n + 1.0)
    return np.exp(logmag) * (beta / abs(beta)) ** n


def build_input(spec: InputSpec, cutoff: int = DEFAULT_CUTOFF, *, tol: float = NORM_TOL,
                adaptive: bool = True, max_cutoff: int = MAX_CUTOFF) -> FockState:
    """Normalized single-mode Fock state of an input."""
    f = spec.family

    def build(n):
        if f is InputFamily.COHERENT:
            amp = _coherent_amplitudes(spec.beta, n)
        elif f is InputFamily.FOCK1:
            amp = np.zeros(n, dtype=complex)
            amp[1] = 1.0
        elif f is InputFamily.PHOTON_ADDED_COHERENT:
            coh = _coherent_amplitudes(spec.beta, n)
            amp = np.zeros(n, dtype=complex)
            amp[1:] = np.sqrt(np.arange(1, n)) * coh[:-1]
            amp /= math.sqrt(1.0 + abs(spec.beta) ** 2)
        else:
            seed = np.zeros(n, dtype=complex)
            seed[0 if f is InputFamily.SQUEEZED_VACUUM else 1] = 1.0
            return squeeze_single(FockState(seed, 1), spec.s, spec.varphi, n)
        st = FockState(amp, 1)
        return FockState(amp, 1, max(1.0 - st.norm2(), 0.0))

    return _converge(build, cutoff, tol, adaptive, max_cutoff, f.value)


# ---------------------------------------------------------------------------
# measurements

def overlap(a: FockState, b: FockState) -> complex:
    """``<a|b>`` with cutoffs reconciled by zero padding."""
    if a.num_modes != b.num_modes:
        raise ValueError(f"mode-count mismatch: {a.num_modes} vs {b.num_modes}")
    if a.pair_diagonal and b.pair_diagonal:
        n = min(len(a.data), len(b.data))
        return complex(np.vdot(a.data[:n], b.data[:n]))
    if a.pair_diagonal or b.pair_diagonal:
        pd, full = (a, b) if a.pair_diagonal else (b, a)
        n = min(len(pd.data), *full.data.shape)
        diag = np.diagonal(full.data)[:n]
        val = np.vdot(pd.data[:n], diag)
        return complex(val if a.pair_diagonal else val.conjugate())
    shape = tuple(min(x, y) for x, y in zip(a.data.shape, b.data.shape))
    sl = tuple(slice(0, s) for s in shape)
    return complex(np.vdot(a.data[sl], b.data[sl]))


def reduced_density_matrix(state: FockState, keep: int = 0) -> np.ndarray:
    """Reduced density matrix of one mode of a two-mode pure state."""
    if state.num_modes != 2:
        raise ValueError("reduced density matrix is defined here for two-mode states")
    if state.pair_diagonal:
        return np.diag(np.abs(state.data) ** 2).astype(complex)
    m = state.data if keep == 0 else state.data.T
    return m @ m.conj().T


def _entropy_from_eigs(p):
    p = p[p > EIG_DROP]
    return float(-np.sum(p * np.log(p)))


def reduced_entropy(state: FockState) -> float:
    """Entanglement entropy (nats) of a normalized two-mode pure state."""
    if state.num_modes != 2:
        raise ValueError("entanglement entropy needs a two-mode state")
    if state.pair_diagonal:
        # the reduced matrix is already diagonal in the number basis
        p = np.abs(state.data) ** 2
    else:
        rho = reduced_density_matrix(state)
        try:
            p = np.linalg.eigvalsh(rho)
        except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
            raise ConvergenceError(f"eigensolve failed: {exc}") from exc
    return max(_entropy_from_eigs(np.asarray(p)), 0.0)


_SYMPLECTIC = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(num_modes: int) -> np.ndarray:
    return np.kron(np.eye(num_modes), _SYMPLECTIC)


def _ladder_moments(state: FockState):
    """Means <a_i> and second moments <a_i a_j>, <a_i^dag a_j> of a normalized state."""
    nm = state.num_modes
    if state.pair_diagonal:
        c = state.data
        n = np.arange(len(c))
        occ = float(np.sum(n * np.abs(c) ** 2))
        pair = complex(np.sum(n[1:] * c[:-1].conj() * c[1:]))
        mean = np.zeros(2, dtype=complex)
        aa = np.array([[0, pair], [pair, 0]], dtype=complex)
        ada = np.diag([occ, occ]).astype(complex)
        return mean, aa, ada
    psi = state.data
    low = [lower(psi, i) for i in range(nm)]
    mean = np.array([np.vdot(psi, low[i]) for i in range(nm)])
    aa = np.array([[np.vdot(psi, lower(low[j], i)) for j in range(nm)] for i in range(nm)])
    ada = np.array([[np.vdot(low[i], low[j]) for j in range(nm)] for i in range(nm)])
    return mean, aa, ada


def covariance_matrix(state: FockState, tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature covariance matrix and first moments, vacuum = I/2.

    Quadratures are ordered ``(x1, p1, x2, p2, ...)`` with
    ``x = (a + a^dag)/sqrt2`` and ``p = (a - a^dag)/(i sqrt2)``.
    """
    nm = state.num_modes
    mean, aa, ada = _ladder_moments(state)
    # symmetrized moments of b = (a1, a1^dag, a2, a2^dag, ...)
    sym = np.zeros((2 * nm, 2 * nm), dtype=complex)
    bmean = np.zeros(2 * nm, dtype=complex)
    for i in range(nm):
        bmean[2 * i] = mean[i]
        bmean[2 * i + 1] = mean[i].conjugate()
        for j in range(nm):
            delta = 1.0 if i == j else 0.0
            sym[2 * i, 2 * j] = aa[i, j]
            sym[2 * i + 1, 2 * j + 1] = aa[j, i].conjugate()
            # (a_i a_j^dag + a_j^dag a_i)/2 = a_j^dag a_i + delta/2
            sym[2 * i, 2 * j + 1] = ada[j, i] + 0.5 * delta
            sym[2 * i + 1, 2 * j] = ada[i, j] + 0.5 * delta
    w1 = np.array([[1.0, 1.0], [-1j, 1j]]) / math.sqrt(2.0)
    w = np.kron(np.eye(nm), w1)
    second = w @ sym @ w.T
    means = (w @ bmean).real
    sigma = second.real - np.outer(means, means)
    sigma = 0.5 * (sigma + sigma.T)
    check = np.linalg.eigvalsh(sigma + 0.5j * symplectic_form(nm))
    if check.min() < -tol:
        raise ConvergenceError(f"covariance violates the uncertainty bound by {-check.min():.3e}")
    return sigma, means


def project_mode(state: FockState, mode: int, n: int) -> FockState:
    """Unnormalized state of the remaining modes after projecting ``mode`` on ``|n>``."""
    if state.pair_diagonal:
        state = state.to_full()
    data = np.take(state.data, n, axis=mode)
    out = FockState(data, state.num_modes - 1)
    return out
