"""Dual numbers, quaternions, dual quaternions, and oriented lines.

The classical line-geometry toolkit: dual numbers a + eps*b with
eps^2 = 0, quaternions for rotations, dual quaternions for rigid
motions, and unit dual vectors as Pluecker coordinates of oriented
lines (direction v0, moment v1, with |v0| = 1 and v0.v1 = 0).

All values are immutable and all operations are pure functions, so
everything here is safe to share across threads.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveReal, NotUnit, ZeroDirection
from .tolerances import TOL_UNIT, tol_geo


@dataclass(frozen=True)
class DualNumber:
    """Dual number real + eps*dual with eps^2 = 0."""

    real: float
    dual: float = 0.0

    def __add__(self, other):
        o = _as_dual(other)
        return DualNumber(self.real + o.real, self.dual + o.dual)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_dual(other)
        return DualNumber(self.real - o.real, self.dual - o.dual)

    def __rsub__(self, other):
        o = _as_dual(other)
        return DualNumber(o.real - self.real, o.dual - self.dual)

    def __neg__(self):
        return DualNumber(-self.real, -self.dual)

    def __mul__(self, other):
        o = _as_dual(other)
        return dual_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_dual(other)
        return self * o.inverse()

    def inverse(self):
        """Multiplicative inverse; defined iff the real part is nonzero."""
        if self.real == 0.0:
            raise ZeroDivisionError("dual number with zero real part is not invertible")
        return DualNumber(1.0 / self.real, -self.dual / self.real**2)

    def sqrt(self):
        return dual_sqrt(self)

    def is_close(self, other, tol=TOL_UNIT):
        o = _as_dual(other)
        return abs(self.real - o.real) <= tol and abs(self.dual - o.dual) <= tol


def _as_dual(x):
    if isinstance(x, DualNumber):
        return x
    return DualNumber(float(x), 0.0)


def dual_mul(a: DualNumber, b: DualNumber) -> DualNumber:
    """Product in the dual-number algebra: eps^2 = 0 kills the cross term."""
    return DualNumber(a.real * b.real, a.real * b.dual + a.dual * b.real)


def dual_sqrt(a: DualNumber) -> DualNumber:
    """Square root (sqrt(a0), a1 / (2 sqrt(a0))); requires a0 > 0."""
    if a.real <= 0.0:
        raise NonPositiveReal(f"dual sqrt needs a positive real part, got {a.real}")
    r = math.sqrt(a.real)
    return DualNumber(r, a.dual / (2.0 * r))


class Quaternion:
    """Quaternion w + xi + yj + zk; unit quaternions act as rotations."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w, x=0.0, y=0.0, z=0.0):
        object.__setattr__(self, "w", float(w))
        object.__setattr__(self, "x", float(x))
        object.__setattr__(self, "y", float(y))
        object.__setattr__(self, "z", float(z))

    def __setattr__(self, *_):
        raise AttributeError("Quaternion is immutable")

    @staticmethod
    def from_vector(v):
        v = np.asarray(v, dtype=float)
        return Quaternion(0.0, v[0], v[1], v[2])

    @staticmethod
    def from_axis_angle(axis, angle):
        axis = np.asarray(axis, dtype=float)
        n = np.linalg.norm(axis)
        if n == 0.0:
            raise ZeroDirection("rotation axis must be nonzero")
        h = 0.5 * angle
        s = math.sin(h) / n
        return Quaternion(math.cos(h), axis[0] * s, axis[1] * s, axis[2] * s)

    @staticmethod
    def from_rotation_matrix(m):
        """Shepperd's method: pick the best diagonal pivot for stability."""
        m = np.asarray(m, dtype=float)
        tr = m[0, 0] + m[1, 1] + m[2, 2]
        choices = [tr, m[0, 0], m[1, 1], m[2, 2]]
        i = int(np.argmax(choices))
        if i == 0:
            r = math.sqrt(1.0 + tr)
            w = 0.5 * r
            s = 0.5 / r
            return Quaternion(w, (m[2, 1] - m[1, 2]) * s, (m[0, 2] - m[2, 0]) * s, (m[1, 0] - m[0, 1]) * s)
        j, k = (i % 3), ((i + 1) % 3)
        i -= 1
        r = math.sqrt(1.0 + m[i, i] - m[j, j] - m[k, k])
        q = [0.0, 0.0, 0.0, 0.0]
        q[0] = (m[k, j] - m[j, k]) * 0.5 / r
        q[1 + i] = 0.5 * r
        q[1 + j] = (m[j, i] + m[i, j]) * 0.5 / r
        q[1 + k] = (m[k, i] + m[i, k]) * 0.5 / r
        return Quaternion(*q)

    @property
    def vec(self):
        return np.array([self.x, self.y, self.z])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        a, b = self, other
        return Quaternion(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )

    __rmul__ = __mul__

    def __add__(self, other):
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def conjugate(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_squared(self):
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def norm(self):
        return math.sqrt(self.norm_squared())

    def normalized(self):
        n = self.norm()
        if n == 0.0:
            raise ZeroDivisionError("cannot normalize the zero quaternion")
        return self * (1.0 / n)

    def rotate(self, v):
        """Rotate a 3-vector by the sandwich q v q^-1 (q assumed unit)."""
        p = self * Quaternion.from_vector(v) * self.conjugate()
        return p.vec

    def to_rotation_matrix(self):
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
                [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
                [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
            ]
        )

    def __repr__(self):
        return f"Quaternion({self.w}, {self.x}, {self.y}, {self.z})"


class DualQuaternion:
    """Dual quaternion q0 + eps*q1; unit ones double-cover rigid motions."""

    __slots__ = ("q0", "q1")

    def __init__(self, q0: Quaternion, q1: Quaternion | None = None):
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "q1", q1 if q1 is not None else Quaternion(0.0))

    def __setattr__(self, *_):
        raise AttributeError("DualQuaternion is immutable")

    @staticmethod
    def identity():
        return DualQuaternion(Quaternion(1.0), Quaternion(0.0))

    @staticmethod
    def from_rotation_translation(rotation, translation):
        """Motion x -> R x + c as a unit dual quaternion."""
        q0 = Quaternion.from_rotation_matrix(rotation)
        q1 = Quaternion.from_vector(translation) * q0 * 0.5
        return DualQuaternion(q0, q1)

    def to_rotation_translation(self):
        rot = self.q0.to_rotation_matrix()
        trans = (self.q1 * self.q0.conjugate() * 2.0).vec
        return rot, trans

    def __mul__(self, other):
        if isinstance(other, DualQuaternion):
            return DualQuaternion(
                self.q0 * other.q0,
                self.q0 * other.q1 + self.q1 * other.q0,
            )
        return DualQuaternion(self.q0 * other, self.q1 * other)

    def conjugate(self):
        """Quaternion conjugate on both parts (the * involution)."""
        return DualQuaternion(self.q0.conjugate(), self.q1.conjugate())

    def norm_squared(self) -> DualNumber:
        """q qbar as a dual number (|q0|^2, 2 Re[q1 conj(q0)])."""
        re = (
            self.q1.w * self.q0.w
            + self.q1.x * self.q0.x
            + self.q1.y * self.q0.y
            + self.q1.z * self.q0.z
        )
        return DualNumber(self.q0.norm_squared(), 2.0 * re)

    def is_unit(self, tol=TOL_UNIT):
        n = self.norm_squared()
        return abs(n.real - 1.0) <= tol and abs(n.dual) <= tol

    def normalized(self):
        """Project onto the unit dual quaternions: q0 to the unit sphere,
        the Re[q1 conj(q0)] component removed.  Used for drift control."""
        n0 = self.q0.norm()
        if n0 == 0.0:
            raise ZeroDivisionError("cannot normalize with zero rotation part")
        q0 = self.q0 * (1.0 / n0)
        q1 = self.q1 * (1.0 / n0)
        re = q1.w * q0.w + q1.x * q0.x + q1.y * q0.y + q1.z * q0.z
        q1 = q1 - q0 * re
        return DualQuaternion(q0, q1)

    def act(self, x):
        """Rigid motion of a point: rotation by q0, translation 2 q1 conj(q0)."""
        return dq_act(self, x)

    def act_line(self, line: "UnitDualVector") -> "UnitDualVector":
        """Rigid motion of an oriented line via the sandwich q L q*."""
        v = line.as_dual_vector()
        p = Quaternion.from_vector(v.v0)
        m = Quaternion.from_vector(v.v1)
        r0 = self.q0 * p * self.q0.conjugate()
        r1 = (
            self.q0 * m * self.q0.conjugate()
            + self.q0 * p * self.q1.conjugate()
            + self.q1 * p * self.q0.conjugate()
        )
        return UnitDualVector(DualVector(r0.vec, r1.vec))

    def inverse(self):
        """Inverse of a unit dual quaternion (conjugate)."""
        return self.conjugate()

    def __repr__(self):
        return f"DualQuaternion({self.q0!r}, {self.q1!r})"


def dq_act(q: DualQuaternion, x) -> np.ndarray:
    """Apply the rigid motion of a unit dual quaternion to a point."""
    if not q.is_unit():
        raise NotUnit("dq_act requires a unit dual quaternion")
    x = np.asarray(x, dtype=float)
    rotated = q.q0.rotate(x)
    translation = (q.q1 * q.q0.conjugate() * 2.0).vec
    return rotated + translation


class DualVector:
    """Dual 3-vector v0 + eps*v1; the Lie-algebra home of line geometry."""

    __slots__ = ("v0", "v1")

    def __init__(self, v0, v1=None):
        object.__setattr__(self, "v0", np.array(v0, dtype=float))
        object.__setattr__(self, "v1", np.array(v1 if v1 is not None else (0.0, 0.0, 0.0), dtype=float))
        self.v0.setflags(write=False)
        self.v1.setflags(write=False)

    def __setattr__(self, *_):
        raise AttributeError("DualVector is immutable")

    def __add__(self, other):
        return DualVector(self.v0 + other.v0, self.v1 + other.v1)

    def __sub__(self, other):
        return DualVector(self.v0 - other.v0, self.v1 - other.v1)

    def __neg__(self):
        return DualVector(-self.v0, -self.v1)

    def scale(self, a):
        """Multiply by a dual number or a real scalar (D-module action)."""
        a = _as_dual(a)
        return DualVector(a.real * self.v0, a.real * self.v1 + a.dual * self.v0)

    def dot(self, other) -> DualNumber:
        return dual_dot(self, other)

    def cross(self, other) -> "DualVector":
        return dual_cross(self, other)

    def __repr__(self):
        return f"DualVector({self.v0.tolist()}, {self.v1.tolist()})"


def dual_dot(u: DualVector, v: DualVector) -> DualNumber:
    """D-bilinear inner product: (u0.v0, u0.v1 + u1.v0)."""
    return DualNumber(float(u.v0 @ v.v0), float(u.v0 @ v.v1 + u.v1 @ v.v0))


def dual_cross(u: DualVector, v: DualVector) -> DualVector:
    """D-bilinear exterior product: (u0 x v0, u0 x v1 + u1 x v0)."""
    return DualVector(np.cross(u.v0, v.v0), np.cross(u.v0, v.v1) + np.cross(u.v1, v.v0))


class UnitDualVector:
    """An oriented line in R^3: direction v0, moment v1 = a x v0.

    The checked invariants |v0| = 1 and v0.v1 = 0 are exactly the unit
    condition v.v = 1 in the dual sense; the corresponding line is
    {v0 x v1 + t v0}.
    """

    __slots__ = ("_dv",)

    def __init__(self, dv: DualVector, tol=TOL_UNIT):
        n = np.linalg.norm(dv.v0)
        if abs(n - 1.0) > tol:
            raise NotUnit(f"|v0| = {n} is not 1 within {tol}")
        p = float(dv.v0 @ dv.v1)
        if abs(p) > tol:
            raise NotUnit(f"v0.v1 = {p} is not 0 within {tol}")
        object.__setattr__(self, "_dv", dv)

    def __setattr__(self, *_):
        raise AttributeError("UnitDualVector is immutable")

    @property
    def direction(self):
        return self._dv.v0

    @property
    def moment(self):
        return self._dv.v1

    def as_dual_vector(self) -> DualVector:
        return self._dv

    def point_closest_to_origin(self):
        return np.cross(self.direction, self.moment)

    def dot(self, other: "UnitDualVector") -> DualNumber:
        return dual_dot(self._dv, other._dv)

    def __repr__(self):
        return f"UnitDualVector(dir={self.direction.tolist()}, mom={self.moment.tolist()})"


def line_from_point_dir(a, d) -> UnitDualVector:
    """Oriented line through point a with unit direction d."""
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    n = np.linalg.norm(d)
    if n < 1e-12:
        raise ZeroDirection("line direction must be nonzero")
    d = d / n
    return UnitDualVector(DualVector(d, np.cross(a, d)))


def point_on_line(a, line: UnitDualVector) -> bool:
    """True iff a x v0 = v1 within the scale-relative geometric tolerance."""
    a = np.asarray(a, dtype=float)
    residual = np.cross(a, line.direction) - line.moment
    return bool(np.linalg.norm(residual) <= tol_geo(np.linalg.norm(a)))


def lines_meet_perpendicular(l1: UnitDualVector, l2: UnitDualVector) -> bool:
    """True iff the lines intersect at a right angle (dual dot vanishes)."""
    d = l1.dot(l2)
    scale = max(np.linalg.norm(l1.moment), np.linalg.norm(l2.moment))
    return abs(d.real) <= tol_geo(0.0) and abs(d.dual) <= tol_geo(scale)
