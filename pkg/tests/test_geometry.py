"""Frames, invariants, striction, singular locus, frontal data, canonical jets.

Expected invariant values are derived independently:
  helicoid r=(0,0,ps), e=(cos s, sin s, 0): the determinant formulas give
  kappa1 = det(e,e',r') = p, tau0 = det(e,e',e'') = 0 (e'' = -e), and the
  striction curve is the axis so tau1 = sigma'.e = 0.
  helix tangent developable (radius a, pitch h): the striction curve is
  the helix, whose curvature a/(a^2+h^2) and torsion h/(a^2+h^2) invert
  to tau1 = (a^2+h^2)/a and tau0 = h/a.
  cone: sigma is the apex, so sigma' = 0 forces kappa1 = tau1 = 0.
"""

import numpy as np
import pytest

from conftest import random_motion
from ruledkit.classify import Label, classify_ruled
from ruledkit.curves import helicoid
from ruledkit.errors import InvariantMismatch, NotDevelopable, NotSingular
from ruledkit.geometry import (
    DualFrame,
    DualInvariants,
    canonical_frame_at,
    canonical_jet,
    frenet_at,
    frenet_residual,
    frontal_data,
    invariant_jet,
    invariant_jet_paths,
    is_developable,
    kappa1_value,
    singular_locus,
    striction,
    surface,
)
from ruledkit.reconstruct import truncated_polynomial_surface


class TestFrenet:
    def test_helicoid_invariants(self, helicoid_curve):
        frame, inv = frenet_at(helicoid_curve, 0.4)
        assert abs(inv.kappa1[0] - 0.7) < 1e-12
        assert abs(inv.tau0[0]) < 1e-12 and abs(inv.tau1[0]) < 1e-12
        assert frame.orthonormality_defect() < 1e-12

    def test_helicoid_invariant_jet_constant(self, helicoid_curve):
        jet = invariant_jet(helicoid_curve, -0.8, 4)
        assert np.allclose(jet.kappa1, [0.7, 0, 0, 0, 0], atol=1e-10)
        assert np.allclose(jet.kappa0, [1, 0, 0, 0, 0], atol=1e-12)

    def test_helix_dev_invariants(self, helix_dev):
        a, h = 1.0, 0.5
        jet = invariant_jet(helix_dev, 2.0, 3)
        assert abs(jet.kappa1[0]) < 1e-10
        assert abs(jet.tau0[0] - h / a) < 1e-10
        assert abs(jet.tau1[0] - (a * a + h * h) / a) < 1e-10

    def test_cone_invariants(self, cone_curve):
        jet = invariant_jet(cone_curve, 1.3, 3)
        assert abs(jet.kappa1[0]) < 1e-10 and abs(jet.tau1[0]) < 1e-10
        assert abs(jet.tau0[0] - 1.0 / np.tan(np.pi / 6)) < 1e-10

    def test_frenet_residual_small(self, helicoid_curve, helix_dev, cone_curve):
        for c in (helicoid_curve, helix_dev, cone_curve):
            for s in np.linspace(c.interval[0] + 0.01, c.interval[1] - 0.01, 9):
                assert frenet_residual(c, s) < 1e-12

    def test_kappa_consistency_sqrt_form(self, helix_dev):
        # sqrt(v'.v') = 1 + eps(v0'.v1') after arc-length normalization
        from ruledkit.curves import arclength_dual_jets

        v0, v1 = arclength_dual_jets(helix_dev, 1.0, 3)
        k1_direct = float(v0.deriv().value @ v1.deriv().value)
        jet = invariant_jet(helix_dev, 1.0, 1)
        assert abs(jet.kappa1[0] - k1_direct) < 1e-10

    def test_cross_path_agreement(self, helicoid_curve, helix_dev, cone_curve):
        for c in (helicoid_curve, helix_dev, cone_curve):
            a, b = invariant_jet_paths(c, 0.9, 4)
            for name in ("kappa1", "tau0", "tau1"):
                x, y = getattr(a, name), getattr(b, name)
                assert np.allclose(x, y, atol=1e-8, rtol=1e-8), name

    def test_cross_check_can_be_disabled_or_raises(self, helicoid_curve, monkeypatch):
        jet = invariant_jet(helicoid_curve, 0.0, 3, check=True)
        assert jet.kappa1[0] == pytest.approx(0.7)

    def test_motion_invariance(self, helix_dev, rng):
        base = invariant_jet(helix_dev, 1.5, 4)
        for _ in range(5):
            moved = helix_dev.transformed(random_motion(rng))
            jet = invariant_jet(moved, 1.5, 4, check=False)
            for name in ("kappa1", "tau0", "tau1"):
                assert np.allclose(
                    getattr(jet, name), getattr(base, name), atol=1e-8, rtol=1e-8
                )

    def test_dual_invariants_view(self, helicoid_curve):
        inv = DualInvariants(helicoid_curve, order=3)
        assert inv.kappa1(0.2) == pytest.approx(0.7)
        assert inv.tau0(0.2) == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(inv.kappa1.jet(0.2), [0.7, 0, 0, 0], atol=1e-10)


class TestStriction:
    def test_helicoid_striction_is_axis(self, helicoid_curve):
        sig = striction(helicoid_curve)
        for s in (-1.0, 0.3, 2.0):
            assert np.allclose(sig(s), [0, 0, 0.7 * s], atol=1e-12)

    def test_cone_striction_is_apex(self):
        from ruledkit.curves import cone

        c = cone(half_angle=0.5, apex=(2.0, 1.0, -3.0))
        sig = striction(c)
        for s in (0.2, 1.0, 4.0):
            assert np.allclose(sig(s), [2.0, 1.0, -3.0], atol=1e-10)

    def test_tangent_developable_striction_is_generating_curve(self, helix_dev):
        sig = striction(helix_dev)
        for u in (1.0, 2.5):
            assert np.allclose(sig(u), [np.cos(u), np.sin(u), 0.5 * u], atol=1e-10)

    def test_striction_identities(self, helicoid_curve, helix_dev):
        # sigma x v0 = v1 and sigma' = tau1 v0 + kappa1 t0 (arc-length)
        for c in (helicoid_curve, helix_dev):
            sig = striction(c)
            for s in np.linspace(c.interval[0] + 0.1, c.interval[1] - 0.1, 7):
                v0, v1 = c.dual_jets(s, 0)
                p = sig(s)
                assert np.allclose(np.cross(p, v0.value), v1.value, atol=1e-9)
                frame, inv = frenet_at(c, s)
                jet = sig.jet(s, 1)
                want = inv.tau1[0] * frame.v.direction + inv.kappa1[0] * frame.t.direction
                assert np.allclose(jet[1], want, atol=1e-9)

    def test_frame_moments_are_striction_crosses(self, helix_dev):
        # sigma x n0 = n1 and sigma x t0 = t1
        frame, _ = frenet_at(helix_dev, 1.7)
        p = striction(helix_dev)(1.7)
        assert np.allclose(np.cross(p, frame.n.direction), frame.n.moment, atol=1e-9)
        assert np.allclose(np.cross(p, frame.t.direction), frame.t.moment, atol=1e-9)


class TestSingularLocus:
    def test_helicoid_empty(self, helicoid_curve):
        locus = singular_locus(helicoid_curve)
        assert locus.kind == "empty" and len(locus) == 0

    def test_simple_zero_surface(self):
        c = truncated_polynomial_surface([0, 1], [0], [0])
        locus = singular_locus(c)
        assert locus.kind == "points" and len(locus) == 1
        s0, t0 = locus.points[0]
        assert abs(s0) < 1e-9 and abs(t0) < 1e-9

    def test_double_zero_found_without_sign_change(self):
        c = truncated_polynomial_surface([0, 0, 2], [0], [1])
        locus = singular_locus(c)
        assert locus.kind == "points" and len(locus) == 1
        assert abs(locus.points[0][0]) < 1e-7

    def test_developable_flagged_as_curve(self, helix_dev):
        locus = singular_locus(helix_dev)
        assert locus.kind == "curve"
        # singular curve image is the striction curve: offset recovers it
        sig = striction(helix_dev)
        for u in (1.0, 2.0):
            t0 = locus.offset(u)
            p = helix_dev.base_point(u) + t0 * helix_dev.director(u)
            assert np.allclose(p, sig(u), atol=1e-9)

    def test_rank_drop_at_singular_points(self):
        c = truncated_polynomial_surface([0, 1], [1], [1])
        locus = singular_locus(c)
        sp = surface(c)
        for s0, t0 in locus:
            d = sp.dF(s0, t0)
            sv = np.linalg.svd(d, compute_uv=False)
            assert sv[-1] <= 1e-7 * sv[0]
        # regular points have healthy rank
        for s in (0.25, -0.3):
            sv = np.linalg.svd(sp.dF(s, 0.5), compute_uv=False)
            assert sv[-1] >= 1e-3 * sv[0]


class TestDevelopabilityAndFrontal:
    def test_is_developable(self, helicoid_curve, helix_dev):
        assert not is_developable(helicoid_curve)
        assert is_developable(helix_dev)

    def test_kappa1_identically_zero_by_construction(self):
        from ruledkit.reconstruct import InvariantPrescription, integrate_frenet

        p = InvariantPrescription.from_polynomials([1], [0], [0, 1], [1], (-0.5, 0.5))
        c = integrate_frenet(p)
        assert is_developable(c)

    def test_frontal_data_rejects_ruled(self, helicoid_curve):
        with pytest.raises(NotDevelopable):
            frontal_data(helicoid_curve)

    def test_nu_constant_along_rulings_and_tangent(self, helix_dev):
        fd = frontal_data(helix_dev)
        sp = fd.surface
        for s in (0.8, 2.0):
            nu = fd.nu(s)
            assert abs(np.linalg.norm(nu) - 1.0) < 1e-12
            for t in (-1.0, 0.0, 2.0):
                d = sp.dF(s, t)
                assert np.max(np.abs(nu @ d)) < 1e-9

    def test_lambda_vanishes_exactly_on_locus(self, helix_dev):
        fd = frontal_data(helix_dev)
        locus = singular_locus(helix_dev)
        for s in (1.0, 1.7, 2.4):
            t0 = locus.offset(s)
            assert abs(fd.lambda_raw(s, t0)) < 1e-10
            assert abs(fd.lambda_raw(s, t0 + 0.5)) > 1e-4

    def test_eta_spans_kernel_on_locus(self, helix_dev):
        fd = frontal_data(helix_dev)
        locus = singular_locus(helix_dev)
        for s in (1.1, 2.2):
            t0 = locus.offset(s)
            d = fd.surface.dF(s, t0)
            assert np.linalg.norm(d @ fd.eta(s)) < 1e-9


class TestCanonical:
    def test_canonical_frame_is_identity_for_canonical_curve(self):
        c = truncated_polynomial_surface([0, 1], [0], [0])
        q = canonical_frame_at(c, 0.0)
        r, t = q.to_rotation_translation()
        assert np.allclose(r, np.eye(3), atol=1e-9)
        assert np.allclose(t, 0, atol=1e-9)

    def test_translation_inverts(self):
        from ruledkit.dual import DualQuaternion

        base = truncated_polynomial_surface([0, 1], [0], [0])
        shift = DualQuaternion.from_rotation_translation(np.eye(3), [1.0, -2.0, 0.5])
        moved = base.transformed(shift)
        q = canonical_frame_at(moved, 0.0)
        r, t = q.to_rotation_translation()
        assert np.allclose(r, np.eye(3), atol=1e-9)
        assert np.allclose(t, [-1.0, 2.0, -0.5], atol=1e-9)

    def test_random_motion_inverts(self, rng):
        base = truncated_polynomial_surface([0, 0, 1], [1], [1])
        for _ in range(5):
            g = random_motion(rng)
            moved = base.transformed(g)
            q = canonical_frame_at(moved, 0.0)
            # q == g^{-1} up to dual quaternion sign: compare motions
            r1, t1 = q.to_rotation_translation()
            r2, t2 = g.conjugate().to_rotation_translation()
            assert np.allclose(r1, r2, atol=1e-9)
            assert np.allclose(t1, t2, atol=1e-8)

    def test_frame_lines_map_to_axes(self, helix_dev):
        q = canonical_frame_at(helix_dev, 1.5)
        moved = helix_dev.transformed(q)
        frame, _ = frenet_at(moved, 1.5)
        ident = DualFrame.identity()
        for got, want in [(frame.v, ident.v), (frame.n, ident.n), (frame.t, ident.t)]:
            assert np.allclose(got.direction, want.direction, atol=1e-9)
            assert np.allclose(got.moment, want.moment, atol=1e-9)

    def test_canonical_jet_closed_forms(self):
        # kappa1'(0)=1, everything else zero: z-coefficient of s^2 is 1/2
        c = truncated_polynomial_surface([0, 1], [0], [0])
        cj = canonical_jet(c, 0.0, order=3)
        assert abs(cj.base[2, 2] - 0.5) < 1e-10
        # tau1(0)=2: x gains s^3 coefficient tau1/2 = 1, y gains s^2 coefficient -1
        c2 = truncated_polynomial_surface([0], [0], [2])
        cj2 = canonical_jet(c2, 0.0, order=3)
        assert abs(cj2.base[0, 3] - 1.0) < 1e-10
        assert abs(cj2.base[1, 2] + 1.0) < 1e-10
        # all invariants zero: jet is (t - t s^2/2, t s, 0) + o(3); the
        # closed forms pin base coefficients to s^3 and ruling ones to
        # s^2 (t s^3 terms are total degree 4)
        c3 = truncated_polynomial_surface([0], [0], [0])
        cj3 = canonical_jet(c3, 0.0, order=3)
        assert np.allclose(cj3.base, 0, atol=1e-12)
        assert np.allclose(cj3.ruling[0, :3], [1, 0, -0.5], atol=1e-12)
        assert np.allclose(cj3.ruling[1, :3], [0, 1, 0], atol=1e-10)
        assert np.allclose(cj3.ruling[2, :3], 0, atol=1e-12)

    def test_canonical_jet_requires_singular_point(self, helicoid_curve):
        with pytest.raises(NotSingular):
            canonical_jet(helicoid_curve, 0.0, order=3)
