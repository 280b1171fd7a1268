import math

import numpy as np
import pytest
from scipy.linalg import expm

from cvtele.errors import ConvergenceError, DomainError
from cvtele.fock import (FockState, annihilation, apply_two_mode_squeeze, build_input,
                         build_resource, covariance_matrix, creation, displacement_matrix,
                         fock_state, lower, overlap, pair_state, raise_, reduced_density_matrix,
                         reduced_entropy, twin_beam_amplitudes)
from cvtele.params import InputSpec, ResourceSpec, SqueezeParam


def tb_entropy(r):
    c, s = math.cosh(r) ** 2, math.sinh(r) ** 2
    return c * math.log(c) - (s * math.log(s) if s > 0 else 0.0)


def full_generator(zeta: SqueezeParam, n):
    """Dense ``-zeta a1^dag a2^dag + conj(zeta) a1 a2`` on an n x n truncation."""
    a = annihilation(n).toarray()
    ad = creation(n).toarray()
    return -zeta.zeta * np.kron(ad, ad) + zeta.zeta.conjugate() * np.kron(a, a)


# -- builders ---------------------------------------------------------------

def test_twin_beam_r0_is_vacuum():
    st = build_resource(ResourceSpec.twin_beam(0.0))
    assert st.data[0] == 1.0
    assert np.all(st.data[1:] == 0)


@pytest.mark.parametrize("r", [1e-6, 1e-4])
def test_photon_added_small_r_is_pair_state(r):
    st = build_resource(ResourceSpec.photon_added(r))
    assert abs(abs(st.data[1]) - 1) < 1e-7


@pytest.mark.parametrize("r", [1e-6, 1e-4])
def test_photon_subtracted_small_r_is_vacuum(r):
    st = build_resource(ResourceSpec.photon_subtracted(r))
    assert abs(abs(st.data[0]) - 1) < 1e-7


@pytest.mark.parametrize("r,phi", [(0.0, math.pi), (0.4, math.pi), (1.1, 0.7)])
def test_squeezed_bell_half_pi_is_squeezed_number(r, phi):
    sb = build_resource(ResourceSpec.squeezed_bell(r, math.pi / 2, 0.0, phi))
    sn = build_resource(ResourceSpec.squeezed_number(r, phi))
    assert abs(abs(overlap(sb, sn)) - 1) < 1e-12


def test_inputs_trivial_cases():
    assert np.allclose(build_input(InputSpec.coherent(0.0)).data[:2], [1, 0])
    f1 = build_input(InputSpec.fock1(), cutoff=2)
    assert np.array_equal(f1.data, [0, 1])
    pac = build_input(InputSpec.photon_added_coherent(0.0))
    assert abs(pac.data[1] - 1) < 1e-15


@pytest.mark.parametrize("spec", [ResourceSpec.twin_beam(1.2), ResourceSpec.squeezed_number(1.5),
                                  ResourceSpec.photon_added(1.0),
                                  ResourceSpec.squeezed_bell(0.9, 1.1, 0.4)])
def test_builders_are_normalized(spec):
    st = build_resource(spec)
    assert abs(st.norm2() - 1) < 1e-10
    assert st.norm_deficit < 1e-10


def test_cutoff_too_small_raises_with_deficit():
    with pytest.raises(ConvergenceError) as err:
        build_resource(ResourceSpec.twin_beam(2.0), cutoff=10, adaptive=False)
    assert err.value.norm_deficit > 1e-10


def test_input_cutoff_too_small_raises():
    with pytest.raises(ConvergenceError):
        build_input(InputSpec.coherent(3.0), cutoff=5, adaptive=False)


# -- squeezing --------------------------------------------------------------

def test_zero_squeeze_is_identity(rng):
    psi = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    st = FockState(psi, 2)
    out = apply_two_mode_squeeze(st, SqueezeParam(0.0), 6)
    assert np.array_equal(out.data, st.data)


@pytest.mark.parametrize("r,phi", [(0.3, math.pi), (0.8, math.pi), (0.8, 1.3)])
def test_twin_beam_amplitudes_match_matrix_exponential(r, phi):
    n = 40
    zeta = SqueezeParam(r, phi)
    vac = np.zeros(n * n, dtype=complex)
    vac[0] = 1.0
    ref = (expm(full_generator(zeta, n)) @ vac).reshape(n, n)
    amps = twin_beam_amplitudes(zeta, n)
    # the truncated exponential is exact well below the cutoff
    k = 15
    assert np.max(np.abs(np.diagonal(ref)[:k] - amps[:k])) < 1e-8
    assert np.max(np.abs(ref[:k, :k] - np.diag(np.diagonal(ref[:k, :k])))) < 1e-12
    if phi == math.pi:
        t = math.tanh(r)
        assert np.allclose(amps[:k], t ** np.arange(k) / math.cosh(r), atol=1e-14)


def test_factorized_and_expm_routes_agree():
    seed = pair_state([0.6, 0.8j])
    zeta = SqueezeParam(0.9, 2.1)
    a = apply_two_mode_squeeze(seed, zeta, 60, method="factorized")
    b = apply_two_mode_squeeze(seed, zeta, 60, method="expm")
    assert np.max(np.abs(a.data - b.data)) < 1e-10


def _test_states():
    n = 6
    out = []
    psi = np.zeros((n, n), dtype=complex)
    psi[0, 0], psi[1, 0], psi[0, 1], psi[1, 1] = 1.0, 0.5j, 0.3, -0.4
    out.append(psi / np.linalg.norm(psi))
    psi = np.zeros((n, n), dtype=complex)
    psi[2, 1], psi[1, 0], psi[3, 2] = 0.7, 0.2 - 0.1j, 0.5
    out.append(psi / np.linalg.norm(psi))
    return out


@pytest.mark.parametrize("r,phi", [(0.5, math.pi), (0.7, 0.9)])
def test_bogoliubov_relation(r, phi):
    zeta = SqueezeParam(r, phi)
    n = 60
    for psi in _test_states():
        st = FockState(psi, 2)
        sq = apply_two_mode_squeeze(st, zeta, n, method="expm").data
        lhs1 = np.vdot(sq, lower(sq, 0))
        lhs2 = np.vdot(sq, lower(sq, 1))
        big = np.zeros((n, n), dtype=complex)
        big[:6, :6] = psi
        e = np.exp(1j * phi)
        a1 = np.vdot(big, lower(big, 0))
        a2 = np.vdot(big, lower(big, 1))
        a1d = np.vdot(big, raise_(big, 0)[:n, :n])
        a2d = np.vdot(big, raise_(big, 1)[:n, :n])
        assert abs(lhs1 - (math.cosh(r) * a1 - e * math.sinh(r) * a2d)) < 1e-8
        assert abs(lhs2 - (math.cosh(r) * a2 - e * math.sinh(r) * a1d)) < 1e-8


# -- overlap ----------------------------------------------------------------

def test_overlap_basics():
    a = build_resource(ResourceSpec.photon_added(0.6))
    assert abs(overlap(a, a) - 1) < 1e-12
    assert overlap(fock_state((0, 0), 4), fock_state((1, 1), 4)) == 0
    with pytest.raises(ValueError):
        overlap(fock_state(0, 3), fock_state((0, 0), 3))


@pytest.mark.parametrize("r,s", [(0.3, 0.5), (1.0, 0.2), (0.7, 0.7)])
def test_twin_beam_overlap_formula(r, s):
    a = build_resource(ResourceSpec.twin_beam(s))
    b = build_resource(ResourceSpec.twin_beam(r))
    expect = 1 / (math.cosh(r) * math.cosh(s) * (1 - math.tanh(r) * math.tanh(s)))
    brute = sum((math.tanh(r) * math.tanh(s)) ** n for n in range(400)) / (
        math.cosh(r) * math.cosh(s))
    assert abs(overlap(a, b) - expect) < 1e-10
    assert abs(brute - expect) < 1e-12


def test_overlap_pair_diagonal_vs_full():
    a = build_resource(ResourceSpec.squeezed_bell(0.5, 0.7, 0.3))
    b = build_resource(ResourceSpec.photon_subtracted(0.4, 1.0))
    assert abs(overlap(a, b) - overlap(a.to_full(), b)) < 1e-14
    assert abs(overlap(a, b) - overlap(a, b.to_full())) < 1e-14
    assert abs(overlap(a, b) - overlap(a.to_full(), b.to_full())) < 1e-14


# -- entropy ----------------------------------------------------------------

def test_entropy_examples():
    assert reduced_entropy(fock_state((0, 0), 3)) == 0
    bell = pair_state([1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert abs(reduced_entropy(bell) - math.log(2)) < 1e-14
    assert abs(reduced_entropy(bell.to_full()) - math.log(2)) < 1e-12
    tb = build_resource(ResourceSpec.twin_beam(1.0))
    assert abs(reduced_entropy(tb) - tb_entropy(1.0)) < 1e-9
    assert abs(tb_entropy(1.0) - 1.6199) < 1e-4


def test_entropy_partial_trace_route_at_60():
    tb = build_resource(ResourceSpec.twin_beam(1.0), cutoff=60, adaptive=False).to_full()
    assert abs(reduced_entropy(tb) - tb_entropy(1.0)) < 1e-8


@pytest.mark.parametrize("r", np.linspace(0, 1.5, 7))
def test_added_and_subtracted_have_equal_entropy(r):
    for phi in (math.pi, 0.4):
        pa = reduced_entropy(build_resource(ResourceSpec.photon_added(r, phi)))
        ps = reduced_entropy(build_resource(ResourceSpec.photon_subtracted(r, phi)))
        assert abs(pa - ps) < 1e-8


@pytest.mark.parametrize("r", np.linspace(0.1, 1.0, 10))
def test_entropy_ordering(r):
    sn = reduced_entropy(build_resource(ResourceSpec.squeezed_number(r)))
    pa = reduced_entropy(build_resource(ResourceSpec.photon_added(r)))
    tb = reduced_entropy(build_resource(ResourceSpec.twin_beam(r)))
    assert sn > pa > tb


def test_reduced_density_matrix_is_hermitian_psd():
    st = build_resource(ResourceSpec.squeezed_bell(0.8, 1.0, 0.5, 0.3)).to_full()
    for keep in (0, 1):
        rho = reduced_density_matrix(st, keep)
        assert np.allclose(rho, rho.conj().T)
        assert np.linalg.eigvalsh(rho).min() > -1e-12


# -- cutoff convergence -----------------------------------------------------

@pytest.mark.parametrize("spec", [ResourceSpec.twin_beam(1.5), ResourceSpec.photon_added(1.0),
                                  ResourceSpec.squeezed_number(1.5),
                                  ResourceSpec.squeezed_bell(0.7, 0.5)])
def test_cutoff_30_to_40_is_stable(spec):
    # the cutoff is the starting point of the adaptive builder
    a = build_resource(spec, cutoff=30)
    b = build_resource(spec, cutoff=40)
    assert abs(reduced_entropy(a) - reduced_entropy(b)) < 1e-8
    assert abs(abs(overlap(a, b)) - 1) < 1e-8
    sa, _ = covariance_matrix(a)
    sb, _ = covariance_matrix(b)
    assert np.max(np.abs(sa - sb)) < 1e-8


# -- covariance -------------------------------------------------------------

def test_vacuum_covariance():
    sigma, mean = covariance_matrix(fock_state((0, 0), 4))
    assert np.allclose(sigma, 0.5 * np.eye(4), atol=1e-15)
    assert np.allclose(mean, 0)


@pytest.mark.parametrize("r", [0.3, 1.0])
def test_twin_beam_covariance(r):
    st = build_resource(ResourceSpec.twin_beam(r))
    sigma, mean = covariance_matrix(st)
    c, s = math.cosh(2 * r) / 2, math.sinh(2 * r) / 2
    # phi = pi: <x1 x2> = +s, <p1 p2> = -s
    expect = np.array([[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0], [0, -s, 0, c]])
    assert np.allclose(sigma, expect, atol=1e-9)
    assert np.allclose(mean, 0)
    full, _ = covariance_matrix(st.to_full())
    assert np.allclose(full, sigma, atol=1e-12)


def test_all_resources_have_zero_means():
    for spec in (ResourceSpec.twin_beam(0.5), ResourceSpec.squeezed_number(0.5),
                 ResourceSpec.photon_added(0.5), ResourceSpec.photon_subtracted(0.5),
                 ResourceSpec.squeezed_bell(0.5, 0.9, 1.2)):
        _, mean = covariance_matrix(build_resource(spec).to_full())
        assert np.allclose(mean, 0, atol=1e-14)


def test_displacement_matrix_vacuum_column():
    alpha = 0.7 - 0.4j
    d = displacement_matrix(alpha, 30)
    n = np.arange(30)
    from scipy.special import gammaln
    coh = np.exp(-abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1)) * \
        np.exp(1j * n * np.angle(alpha))
    assert np.allclose(d[:, 0], coh, atol=1e-14)
    big = displacement_matrix(alpha, 60)
    assert np.allclose((big @ big.conj().T)[:10, :10], np.eye(10), atol=1e-12)


def test_normalizing_zero_state_raises():
    with pytest.raises(DomainError):
        FockState(np.zeros(3), 1).normalized()
