import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from cvtele.charfunc import cf_input, cf_resource
from cvtele.fock import build_resource, overlap
from cvtele.optimizer import delta_profile
from cvtele.params import InputSpec, ResourceSpec, SqueezeParam
from cvtele.teleport import fidelity

FAST = settings(max_examples=40, deadline=None)

r_st = st.floats(0.0, 2.0)
angle = st.floats(0.0, 2 * math.pi)
amp = st.complex_numbers(max_magnitude=2.0)


@st.composite
def resources(draw):
    fam = draw(st.sampled_from(["twin_beam", "squeezed_number", "photon_added",
                                "photon_subtracted", "squeezed_bell"]))
    r, phi = draw(r_st), draw(angle)
    if fam == "squeezed_bell":
        return ResourceSpec.squeezed_bell(r, draw(st.floats(0, math.pi)), draw(angle), phi)
    return ResourceSpec.make(fam, r, phi)


@st.composite
def inputs(draw):
    fam = draw(st.sampled_from(["coherent", "fock1", "photon_added_coherent",
                                "squeezed_vacuum", "squeezed_fock1"]))
    return InputSpec.make(fam, beta=draw(amp), s=draw(st.floats(0, 1.2)), varphi=draw(angle))


@FAST
@given(inputs(), resources())
def test_fidelity_in_unit_interval(inp, res):
    f = fidelity(inp, res)
    assert -1e-9 <= f.value <= 1 + 1e-9
    assert f.est_error >= 0


@FAST
@given(resources(), amp, amp)
def test_resource_cf_bounds(res, a1, a2):
    cf = cf_resource(res)
    assert abs(cf(0, 0) - 1) < 1e-12
    assert abs(cf(a1, a2)) <= 1 + 1e-10
    assert abs(cf(-a1, -a2) - cf(a1, a2).conjugate()) < 1e-12


@FAST
@given(inputs(), amp)
def test_input_cf_bounds(inp, a):
    cf = cf_input(inp)
    assert abs(cf(0) - 1) < 1e-12
    assert abs(cf(a)) <= 1 + 1e-10


@FAST
@given(inputs(), st.floats(0.0, 2.0), st.floats(0, math.pi))
def test_delta_profile_is_sinusoidal(inp, r, delta):
    prof = delta_profile(inp, r)
    direct = fidelity(inp, ResourceSpec.squeezed_bell(r, delta)).value
    assert abs(prof(delta) - direct) < 1e-11


@settings(max_examples=25, deadline=None)
@given(resources(), resources())
def test_overlap_bounded(a, b):
    ov = overlap(build_resource(a), build_resource(b))
    assert abs(ov) <= 1 + 1e-12


@given(st.floats(0, 10), st.floats(-50, 50))
def test_squeeze_phase_is_reduced(r, phi):
    z = SqueezeParam(r, phi)
    assert 0 <= z.phi < 2 * math.pi
    assert abs(np.exp(1j * z.phi) - np.exp(1j * phi)) < 1e-9
