import cmath
import math

import numpy as np
import pytest

from cvtele.errors import DegeneratePlanError, DomainError
from cvtele.fock import build_resource, overlap
from cvtele.genplanner import (PumpPlan, condition_bound, pump_matrix, round_trip_overlap,
                               simulate_cascade, solve_pump_amplitudes)
from cvtele.params import ResourceSpec


def pss_as_bell(r, phi):
    return ResourceSpec.squeezed_bell(r, math.pi - math.atan(math.tanh(r)), phi, phi)


def pas_as_bell(r, phi):
    # c00 = -N tanh r, c11 = N e^{i phi}
    return ResourceSpec.squeezed_bell(r, math.pi / 2 + math.atan(math.tanh(r)), phi, phi)


def fidelity_to(spec, state):
    return abs(overlap(build_resource(spec, tol=1e-13), state)) ** 2


@pytest.mark.parametrize("r,phi", [(0.5, math.pi), (0.9, 0.0), (0.7, 2.2)])
def test_subtracted_target_needs_only_subtraction(r, phi):
    plan = solve_pump_amplitudes(pss_as_bell(r, phi))
    assert abs(plan.kappa_a) < 1e-15
    assert abs(abs(plan.kappa_b) - 0.01) < 1e-15


@pytest.mark.parametrize("r,phi", [(0.5, math.pi), (0.9, 0.0), (0.7, 2.2)])
def test_added_target_needs_only_addition(r, phi):
    plan = solve_pump_amplitudes(pas_as_bell(r, phi))
    assert abs(plan.kappa_b) < 1e-15
    assert abs(abs(plan.kappa_a) - 0.01) < 1e-15


def test_determinant_and_conditioning():
    assert abs(abs(np.linalg.det(pump_matrix(1.0, 0.0))) - 1 / math.cosh(1.0) ** 2) < 1e-15
    assert abs(1 / math.cosh(1.0) ** 2 - 0.41997) < 1e-5
    for r in np.linspace(0, 2, 9):
        for phi in np.linspace(0, 2 * math.pi, 7):
            m = pump_matrix(r, phi)
            assert abs(abs(np.linalg.det(m)) - 1 / math.cosh(r) ** 2) < 1e-12
            assert np.linalg.cond(m) <= condition_bound(r) * (1 + 1e-12)


@pytest.mark.parametrize("r,phi", [(0.4, math.pi), (1.0, 0.0), (0.8, 1.1)])
def test_single_process_cascades(r, phi):
    g = 0.02
    tb = ResourceSpec.twin_beam(r, phi)
    added = simulate_cascade(PumpPlan(g, 0, tb, 0.0))
    assert abs(fidelity_to(ResourceSpec.photon_added(r, phi), added.state) - 1) < 1e-10
    subtracted = simulate_cascade(PumpPlan(0, g, tb, 0.0))
    assert abs(fidelity_to(ResourceSpec.photon_subtracted(r, phi), subtracted.state) - 1) < 1e-10


def test_bell_target_round_trip():
    for spec in (ResourceSpec.squeezed_bell(0.7, 0.5, 1.0), ResourceSpec.squeezed_bell(1.2, 2.0, 4.0, 0.0),
                 ResourceSpec.squeezed_bell(0.3, math.pi / 4)):
        assert round_trip_overlap(spec) > 1 - 1e-9


def test_scale_invariance():
    target = ResourceSpec.squeezed_bell(0.6, 1.1, 0.7, 0.4)
    plan = solve_pump_amplitudes(target)
    base = simulate_cascade(plan).state
    c = 0.3 * cmath.exp(0.9j)
    scaled = simulate_cascade(PumpPlan(c * plan.kappa_a, c * plan.kappa_b, target, 0.0)).state
    assert abs(abs(overlap(base, scaled)) ** 2 - 1) < 1e-10


def test_predicted_success_weight():
    target = ResourceSpec.squeezed_bell(0.8, 0.9, 0.2)
    plan = solve_pump_amplitudes(target, gain=0.01)
    out = simulate_cascade(plan)
    assert abs(out.success_weight - plan.predicted_success_weight) < 1e-9 * plan.predicted_success_weight
    assert abs(plan.kappa_b_reduced - math.tanh(0.8) * plan.kappa_b) < 1e-18


def test_degenerate_plan_raises():
    with pytest.raises(DegeneratePlanError):
        simulate_cascade(PumpPlan(0, 0, ResourceSpec.twin_beam(0.5), 0.0))


def test_unsqueezed_vacuum_target_is_unreachable():
    with pytest.raises(DomainError):
        solve_pump_amplitudes(ResourceSpec.squeezed_bell(0.0, 0.3))
    plan = solve_pump_amplitudes(ResourceSpec.squeezed_bell(0.0, math.pi / 2))
    assert plan.kappa_b == 0


def test_gain_checks():
    target = ResourceSpec.squeezed_bell(0.5, 0.4)
    with pytest.raises(DomainError):
        solve_pump_amplitudes(target, gain=0.0)
    with pytest.warns(UserWarning):
        solve_pump_amplitudes(target, gain=0.5)
