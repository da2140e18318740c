"""Curve classes: unit constraints, jets, reparameterization, builtins."""

import numpy as np
import pytest

from conftest import random_motion
from ruledkit import jets
from ruledkit.curves import (
    AnalyticCurve,
    SampledCurve,
    arclength_reparam,
    cone,
    helicoid,
    helix_tangent_developable,
)
from ruledkit.errors import CylindricalPoint, NotUnit, OrderUnavailable
from ruledkit.jets import Jet, JetVec


def doubled_circle(interval=(0.0, 3.0)):
    """Director runs around a great circle at speed 2; v1 = 0."""

    def gen(s):
        sn, cs = jets.sincos(2 * s)
        z = Jet.constant(0.0, s.order)
        return JetVec.from_jets(cs, sn, z), JetVec.from_jets(z, z, z)

    return AnalyticCurve(gen, interval)


class TestCurveBasics:
    def test_unit_validation_catches_bad_generator(self):
        def gen(s):
            one = Jet.constant(1.1, s.order)
            z = Jet.constant(0.0, s.order)
            return JetVec.from_jets(one, z, z), JetVec.from_jets(z, z, z)

        with pytest.raises(NotUnit):
            AnalyticCurve(gen, (0, 1))

    def test_order_contract(self, helicoid_curve):
        with pytest.raises(OrderUnavailable):
            helicoid_curve.dual_jets(0.0, helicoid_curve.k_max + 1)

    def test_line_at_and_base_point(self, helicoid_curve):
        line = helicoid_curve.line_at(0.0)
        assert np.allclose(line.direction, [1, 0, 0])
        # ruling passes through the base point r = v0 x v1
        r = helicoid_curve.base_point(0.4)
        e = helicoid_curve.director(0.4)
        assert abs(r @ e) < 1e-12

    def test_transformed_curve_moves_lines(self, helicoid_curve, rng):
        q = random_motion(rng)
        moved = helicoid_curve.transformed(q)
        for s in (0.0, 0.7):
            want = q.act_line(helicoid_curve.line_at(s))
            got = moved.line_at(s)
            assert np.allclose(got.direction, want.direction, atol=1e-12)
            assert np.allclose(got.moment, want.moment, atol=1e-12)


class TestArclength:
    def test_identity_for_arclength_curve(self, helicoid_curve):
        ac = arclength_reparam(helicoid_curve)
        assert np.allclose(ac.interval, helicoid_curve.interval, atol=1e-9)
        for s in (-1.0, 0.25, 2.0):
            assert abs(ac.u_of_s(s) - s) < 1e-9
            v0, _ = ac.dual_jets(s, 1)
            assert abs(np.linalg.norm(v0.deriv().value) - 1.0) < 1e-12

    def test_doubled_circle_halves_parameter(self):
        c = doubled_circle()
        ac = arclength_reparam(c)
        # s(u) = 2u anchored at 0: interval (0, 6), u(s) = s/2
        assert np.allclose(ac.interval, (0.0, 6.0), atol=1e-10)
        for s in (0.5, 2.0, 5.5):
            assert abs(ac.u_of_s(s) - s / 2.0) < 1e-10
        v0, _ = ac.dual_jets(1.2, 2)
        assert abs(np.linalg.norm(v0.deriv().value) - 1.0) < 1e-12

    def test_cylindrical_point_refused(self):
        # director stalls at u = 0: |v0'| = 0 there
        def gen(s):
            sn, cs = jets.sincos(s * s)
            z = Jet.constant(0.0, s.order)
            return JetVec.from_jets(cs, sn, z), JetVec.from_jets(z, z, z)

        c = AnalyticCurve(gen, (-1.0, 1.0))
        with pytest.raises(CylindricalPoint):
            arclength_reparam(c)


class TestBuiltins:
    def test_helicoid_is_arclength_unit(self, helicoid_curve):
        helicoid_curve.check_unit()
        for s in np.linspace(*helicoid_curve.interval, 7):
            assert abs(helicoid_curve.speed(s) - 1.0) < 1e-12

    def test_helix_dev_unit_and_speed(self, helix_dev):
        helix_dev.check_unit()
        # |T'(u)| = a/sqrt(a^2+h^2) is constant
        want = 1.0 / np.sqrt(1.0 + 0.25)
        for s in np.linspace(*helix_dev.interval, 5):
            assert abs(helix_dev.speed(s) - want) < 1e-12

    def test_cone_rulings_pass_through_apex(self):
        c = cone(half_angle=0.6, apex=(1.0, -2.0, 0.5))
        from ruledkit.dual import point_on_line

        for s in np.linspace(*c.interval, 9):
            assert point_on_line([1.0, -2.0, 0.5], c.line_at(s))


class TestSampledCurve:
    def test_fd_jets_match_analytic(self, helicoid_curve):
        sampled = SampledCurve(
            lambda s: (helicoid_curve.director(s), helicoid_curve.dual_jets(s, 0)[1].value),
            helicoid_curve.interval,
        )
        a0, a1 = helicoid_curve.dual_jets(0.3, 3)
        b0, b1 = sampled.dual_jets(0.3, 3)
        assert np.allclose(a0.c, b0.c, atol=1e-7)
        assert np.allclose(a1.c, b1.c, atol=1e-7)
        assert not sampled.analytic
