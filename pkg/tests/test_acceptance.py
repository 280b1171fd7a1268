"""Acceptance criteria, one test each.

Every test records a one-line verdict that the pytest terminal summary prints
(see conftest.py); running this file directly prints the same lines.
"""

import math
import time

import numpy as np

from conftest import ACCEPTANCE
from cvtele.fock import build_resource, overlap
from cvtele.genplanner import pump_matrix, round_trip_overlap
from cvtele.metrics import entanglement_entropy, non_gaussianity, vacuum_affinity
from cvtele.optimizer import (coincidence_points, delta_closed_form, optimize_delta,
                              optimized_resource, relative_fidelity)
from cvtele.params import ResourceSpec, standard_inputs, standard_resources
from cvtele.teleport import fidelity, fidelity_quadrature

INPUTS = standard_inputs()
FOUR = ("twin_beam", "squeezed_number", "photon_added", "photon_subtracted")


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def grid(lo, hi, step):
    return np.round(np.arange(lo, hi + step / 2, step), 10)


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    worst, cells = 0.0, 0
    for r in (0.0, 0.3, 0.8):
        for res in standard_resources(r):
            for inp in INPUTS:
                a = fidelity(inp, res).value
                b = fidelity_quadrature(inp, res).value
                worst = max(worst, abs(a - b))
                cells += 1
    elapsed = time.perf_counter() - t0
    record(1, cells == 75 and worst < 1e-6 and elapsed < 60,
           f"oracle equivalence: {cells} cells, max |moment - quadrature| = {worst:.2e}, "
           f"{elapsed:.1f} s")


def test_criterion_2_twin_beam_analytics():
    f_err = e_err = 0.0
    for r in (0.0, 0.5, 1.0, 2.0):
        f = fidelity(INPUTS[0], ResourceSpec.twin_beam(r)).value
        f_err = max(f_err, abs(f - 1 / (1 + math.exp(-2 * r))))
        c, s = math.cosh(r) ** 2, math.sinh(r) ** 2
        exact = c * math.log(c) - (s * math.log(s) if s else 0.0)
        e_err = max(e_err, abs(entanglement_entropy(ResourceSpec.twin_beam(r)) - exact))
    record(2, f_err < 1e-8 and e_err < 1e-6,
           f"twin-beam analytics: fidelity error {f_err:.1e}, entropy error {e_err:.1e}")


def test_criterion_3_closed_form_optima():
    worst = {}
    for kind, inp in (("coherent", INPUTS[0]), ("fock1", INPUTS[2])):
        worst[kind] = max(abs(optimize_delta(inp, r).delta_star - delta_closed_form(kind, r))
                          for r in np.linspace(0.05, 3, 30))
    record(3, max(worst.values()) < 1e-5,
           "closed-form optima on 30 points: max deviation coherent "
           f"{worst['coherent']:.1e}, Fock {worst['fock1']:.1e}")


def test_criterion_4_figure_orderings():
    coh = INPUTS[0]
    bad_a = []
    for r in grid(0.1, 1.0, 0.1):
        tb = fidelity(coh, ResourceSpec.twin_beam(r)).value
        if not fidelity(coh, ResourceSpec.photon_subtracted(r)).value > tb:
            bad_a.append(("pss<=tb", r))
        if not fidelity(coh, ResourceSpec.squeezed_number(r)).value < tb:
            bad_a.append(("sn>=tb", r))
    bad_b = []
    for inp in INPUTS:
        for r in grid(0.0, 1.5, 0.1):
            sb = fidelity(inp, ResourceSpec.squeezed_bell(r, math.pi / 4)).value
            for fam in FOUR:
                if not sb > fidelity(inp, ResourceSpec.make(fam, r)).value:
                    bad_b.append((inp.family.value, fam, float(r)))
    ent_err = max(abs(entanglement_entropy(ResourceSpec.photon_added(r))
                      - entanglement_entropy(ResourceSpec.photon_subtracted(r)))
                  for r in grid(0.0, 2.0, 0.1))
    first = f", first {bad_b[0]}" if bad_b else ""
    record(4, not bad_a and not bad_b and ent_err < 1e-8,
           f"orderings: coherent PSS>TB>SN violations {len(bad_a)}; "
           f"SB(pi/4) beats four resources violations {len(bad_b)}/{5 * 16 * 4}{first}; "
           f"PAS/PSS entropy gap {ent_err:.1e}")


def test_criterion_5_relative_gain_structure():
    rbars, worst_ov = {}, 0.0
    for inp in INPUTS:
        roots = coincidence_points(inp)
        rbars[inp.family.value] = roots
        for rb in roots:
            sb = build_resource(optimized_resource(inp, rb))
            ps = build_resource(ResourceSpec.photon_subtracted(rb))
            worst_ov = max(worst_ov, abs(abs(overlap(sb, ps)) ** 2 - 1))
    in_window = all(any(0.5 <= x <= 0.9 for x in v) for v in rbars.values())
    peak = max(max(relative_fidelity(inp, r, ResourceSpec.twin_beam(0.0))
                   for r in grid(0.0, 3.0, 0.05)) for inp in INPUTS)
    shown = ", ".join(f"{k}={v[0]:.4f}" if v else f"{k}=none" for k, v in rbars.items())
    record(5, in_window and worst_ov < 1e-6 and peak > 0.5,
           f"gain structure: zeros vs PSS {shown}; overlap error {worst_ov:.1e}; "
           f"max gain vs TB {peak:.3f}")


def test_criterion_6_metric_properties():
    tb = max(abs(non_gaussianity(ResourceSpec.twin_beam(r))) for r in (0.0, 0.5, 1.0, 2.0))
    deltas = np.linspace(0, math.pi, 181)
    ref = np.array([non_gaussianity(ResourceSpec.squeezed_bell(0.0, d)) for d in deltas])
    drift = max(np.max(np.abs(ref - [non_gaussianity(ResourceSpec.squeezed_bell(r, d))
                                     for d in deltas])) for r in (0.5, 1.0, 2.0))
    argmax = deltas[int(np.argmax(ref))]
    sn = max(abs(vacuum_affinity(ResourceSpec.squeezed_number(r))[0] - 0.25)
             for r in (0.0, 0.5, 1.0, 1.5, 2.0))
    aff = min(vacuum_affinity(ResourceSpec.squeezed_bell(2.0, delta_closed_form(k, 2.0)))[0]
              for k in ("coherent", "fock1"))
    ok = (tb < 1e-9 and drift < 1e-6 and abs(argmax - math.pi / 2) <= deltas[1] - deltas[0]
          and sn < 1e-6 and aff > 0.95)
    record(6, ok, f"metrics: TB d_nG {tb:.1e}; SB drift in r {drift:.1e}; argmax {argmax:.4f}; "
                  f"SN affinity error {sn:.1e}; optimized SB affinity at r=2 {aff:.3f}")


def test_criterion_7_generation_round_trip():
    rng = np.random.default_rng(12345)
    worst_ov = worst_det = 0.0
    for _ in range(50):
        r = rng.uniform(0, 1.2)
        phi = float(rng.choice([0.0, math.pi]))
        spec = ResourceSpec.squeezed_bell(r, rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi),
                                          phi)
        worst_ov = max(worst_ov, 1 - round_trip_overlap(spec))
        worst_det = max(worst_det, abs(abs(np.linalg.det(pump_matrix(r, phi)))
                                       - 1 / math.cosh(r) ** 2))
    record(7, worst_ov <= 1e-8 and worst_det < 1e-10,
           f"generation: 50 targets, worst 1 - overlap {worst_ov:.1e}, "
           f"determinant error {worst_det:.1e}")


def test_criterion_8_monotonicity():
    rs = grid(0.0, 2.0, 0.05)
    bad = []
    for inp in INPUTS:
        for res in standard_resources():
            f = np.array([fidelity(inp, res.with_squeeze(r, math.pi)).value for r in rs])
            drop = np.diff(f)
            if drop.min() < 0:
                k = int(np.argmin(drop))
                bad.append(f"{inp.family.value}/{res.family.value} drops {-drop[k]:.1e} "
                           f"at r={rs[k + 1]:.2f}")
    record(8, not bad, f"monotonicity: {25 - len(bad)}/25 curves non-decreasing"
                       + (f"; {'; '.join(bad)}" if bad else ""))


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
