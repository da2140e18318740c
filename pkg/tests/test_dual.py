"""Dual numbers, quaternions, dual quaternions, and the line model."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruledkit.dual import (
    DualNumber,
    DualQuaternion,
    DualVector,
    Quaternion,
    UnitDualVector,
    dq_act,
    dual_cross,
    dual_dot,
    dual_mul,
    dual_sqrt,
    line_from_point_dir,
    lines_meet_perpendicular,
    point_on_line,
)
from ruledkit.errors import NonPositiveReal, NotUnit, ZeroDirection

from conftest import random_motion

E1, E2, E3 = np.eye(3)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
duals = st.builds(DualNumber, finite, finite)


class TestDualNumber:
    def test_identity(self):
        assert dual_mul(DualNumber(1, 0), DualNumber(3.5, -2)) == DualNumber(3.5, -2)

    def test_eps_squared_is_zero(self):
        assert dual_mul(DualNumber(0, 1), DualNumber(0, 1)) == DualNumber(0, 0)

    def test_product_by_hand(self):
        # (2+3e)(4+5e) = 8 + (10+12)e
        assert dual_mul(DualNumber(2, 3), DualNumber(4, 5)) == DualNumber(8, 22)

    @given(duals, duals, duals)
    @settings(max_examples=200)
    def test_associative_distributive(self, a, b, c):
        lhs = dual_mul(dual_mul(a, b), c)
        rhs = dual_mul(a, dual_mul(b, c))
        assert lhs.is_close(rhs, tol=1e-9 * (1 + abs(lhs.real) + abs(lhs.dual)))
        d1 = dual_mul(a, b + c)
        d2 = dual_mul(a, b) + dual_mul(a, c)
        assert d1.is_close(d2, tol=1e-9 * (1 + abs(d1.real) + abs(d1.dual)))

    def test_sqrt_values(self):
        assert dual_sqrt(DualNumber(1, 0)) == DualNumber(1, 0)
        # (2+e)^2 = 4+4e
        assert dual_sqrt(DualNumber(4, 4)) == DualNumber(2, 1)
        for t in (-3.0, 0.25, 7.0):
            # (1+te)^2 = 1+2te
            r = dual_sqrt(DualNumber(1, 2 * t))
            assert r.is_close(DualNumber(1, t))

    @given(st.floats(min_value=0.01, max_value=100.0), finite)
    def test_sqrt_squares_back(self, a0, a1):
        a = DualNumber(a0, a1)
        r = dual_sqrt(a)
        sq = dual_mul(r, r)
        assert abs(sq.real - a.real) <= 1e-12 * (1 + abs(a.real))
        assert abs(sq.dual - a.dual) <= 1e-12 * (1 + abs(a.dual))

    def test_sqrt_requires_positive_real(self):
        with pytest.raises(NonPositiveReal):
            dual_sqrt(DualNumber(0.0, 1.0))
        with pytest.raises(NonPositiveReal):
            dual_sqrt(DualNumber(-4.0, 0.0))

    def test_inverse(self):
        a = DualNumber(2.0, -3.0)
        assert dual_mul(a, a.inverse()).is_close(DualNumber(1, 0))
        with pytest.raises(ZeroDivisionError):
            DualNumber(0.0, 1.0).inverse()


class TestDualVectors:
    def test_dot_trivial_and_bilinear(self):
        assert dual_dot(DualVector(E1), DualVector(E1)) == DualNumber(1, 0)
        assert dual_dot(DualVector(E1, E2), DualVector(E2, E1)) == DualNumber(0, 2)

    def test_unit_dual_vector_self_dot(self):
        line = line_from_point_dir([0.3, -1.0, 2.0], [3.0, 4.0, 0.0])
        d = line.dot(line)
        assert abs(d.real - 1.0) < 1e-12 and abs(d.dual) < 1e-12

    def test_cross_values(self):
        c = dual_cross(DualVector(E1), DualVector(E2))
        assert np.allclose(c.v0, E3) and np.allclose(c.v1, 0)
        v = DualVector(E1, E2)
        z = dual_cross(v, v)
        assert np.allclose(z.v0, 0) and np.allclose(z.v1, 0)
        # e3 x e2 = -e1
        c2 = dual_cross(DualVector(E1, E3), DualVector(E2))
        assert np.allclose(c2.v0, E3) and np.allclose(c2.v1, -E1)

    def test_symmetry_antisymmetry(self, rng):
        for _ in range(50):
            u = DualVector(rng.standard_normal(3), rng.standard_normal(3))
            v = DualVector(rng.standard_normal(3), rng.standard_normal(3))
            assert dual_dot(u, v) == dual_dot(v, u)
            c1, c2 = dual_cross(u, v), dual_cross(v, u)
            assert np.allclose(c1.v0, -c2.v0) and np.allclose(c1.v1, -c2.v1)

    def test_lagrange_identity(self, rng):
        # (u x v).(u x v) + (u.v)^2 = (u.u)(v.v) over the dual numbers
        for _ in range(200):
            u = DualVector(rng.standard_normal(3), rng.standard_normal(3))
            v = DualVector(rng.standard_normal(3), rng.standard_normal(3))
            c = dual_cross(u, v)
            lhs = dual_dot(c, c) + dual_mul(dual_dot(u, v), dual_dot(u, v))
            rhs = dual_mul(dual_dot(u, u), dual_dot(v, v))
            scale = 1 + abs(rhs.real) + abs(rhs.dual)
            assert abs(lhs.real - rhs.real) < 1e-12 * scale
            assert abs(lhs.dual - rhs.dual) < 1e-12 * scale


class TestDualQuaternion:
    def test_identity_motion(self):
        q = DualQuaternion.identity()
        x = np.array([0.3, -2.0, 5.0])
        assert np.allclose(dq_act(q, x), x)

    def test_translation(self):
        # q0 = 1, q1 = t/2 translates by t
        t = np.array([1.0, 2.0, 3.0])
        q = DualQuaternion(Quaternion(1.0), Quaternion.from_vector(t) * 0.5)
        assert np.allclose(dq_act(q, [1, 0, 0]), [2, 2, 3])

    def test_rotation_pi_about_k(self):
        r = Quaternion.from_axis_angle([0, 0, 1], np.pi).to_rotation_matrix()
        q = DualQuaternion.from_rotation_translation(r, [0, 0, 0])
        assert np.allclose(dq_act(q, [1, 0, 0]), [-1, 0, 0], atol=1e-12)

    def test_requires_unit(self):
        q = DualQuaternion(Quaternion(2.0), Quaternion(0.0))
        with pytest.raises(NotUnit):
            dq_act(q, [1, 0, 0])

    def test_isometry(self, rng):
        for _ in range(100):
            q = random_motion(rng)
            x, y = rng.standard_normal(3), rng.standard_normal(3)
            d1 = np.linalg.norm(dq_act(q, x) - dq_act(q, y))
            d0 = np.linalg.norm(x - y)
            assert abs(d1 - d0) <= 1e-12 * (1 + d0)

    def test_round_trip_rotation_translation(self, rng):
        for _ in range(20):
            q = random_motion(rng)
            r, c = q.to_rotation_translation()
            q2 = DualQuaternion.from_rotation_translation(r, c)
            x = rng.standard_normal(3)
            assert np.allclose(dq_act(q, x), dq_act(q2, x), atol=1e-12)

    def test_normalized_projects_to_unit(self, rng):
        q = random_motion(rng)
        noisy = DualQuaternion(q.q0 * 1.37, q.q1 + q.q0 * 0.21)
        assert not noisy.is_unit()
        assert noisy.normalized().is_unit(tol=1e-12)

    def test_line_action_matches_point_action(self, rng):
        for _ in range(30):
            q = random_motion(rng)
            a = rng.standard_normal(3)
            d = rng.standard_normal(3)
            line = line_from_point_dir(a, d)
            moved = q.act_line(line)
            # the moved base point must lie on the moved line, direction rotates
            assert point_on_line(dq_act(q, a), moved)
            r, _ = q.to_rotation_translation()
            assert np.allclose(moved.direction, r @ line.direction, atol=1e-12)


class TestLineModel:
    def test_line_through_origin(self):
        line = line_from_point_dir([0, 0, 0], E1)
        assert np.allclose(line.direction, E1) and np.allclose(line.moment, 0)

    def test_moment_is_cross_product(self):
        line = line_from_point_dir(E2, E1)
        assert np.allclose(line.moment, np.cross(E2, E1))  # -e3

    def test_base_point_on_axis_gives_same_line(self):
        l1 = line_from_point_dir(E1, E1)
        assert np.allclose(l1.moment, 0)

    def test_zero_direction_rejected(self):
        with pytest.raises(ZeroDirection):
            line_from_point_dir([1, 2, 3], [0, 0, 0])

    def test_point_on_line(self):
        x_axis = line_from_point_dir([0, 0, 0], E1)
        assert point_on_line([0, 0, 0], x_axis)
        assert not point_on_line([0, 1, 0], x_axis)
        for t in (-7.0, 0.5, 3000.0):
            assert point_on_line([t, 0, 0], x_axis)

    def test_roundtrip_and_translation_along_direction(self, rng):
        for _ in range(100):
            a = rng.standard_normal(3) * 3
            d = rng.standard_normal(3)
            if np.linalg.norm(d) < 1e-3:
                continue
            line = line_from_point_dir(a, d)
            assert point_on_line(a, line)
            shifted = line_from_point_dir(a + 2.7 * line.direction, line.direction)
            assert np.allclose(shifted.direction, line.direction, atol=1e-12)
            assert np.allclose(shifted.moment, line.moment, atol=1e-11)

    def test_perpendicular_intersection(self):
        x_axis = line_from_point_dir([0, 0, 0], E1)
        y_axis = line_from_point_dir([0, 0, 0], E2)
        skew = line_from_point_dir([0, 0, 1], E2)
        assert lines_meet_perpendicular(x_axis, y_axis)
        assert not lines_meet_perpendicular(x_axis, x_axis)
        assert not lines_meet_perpendicular(x_axis, skew)

    def test_unit_validation(self):
        with pytest.raises(NotUnit):
            UnitDualVector(DualVector([1.1, 0, 0], [0, 0, 0]))
        with pytest.raises(NotUnit):
            UnitDualVector(DualVector(E1, E1))
