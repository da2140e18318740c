import numpy as np
import pytest

from ruledkit.curves import cone, helicoid, helix_tangent_developable
from ruledkit.dual import DualQuaternion, Quaternion


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def helicoid_curve():
    return helicoid(pitch=0.7)


@pytest.fixture
def helix_dev():
    # radius 1, pitch 0.5: kappa1 = 0, tau0 = h/a = 0.5, tau1 = (a^2+h^2)/a = 1.25
    return helix_tangent_developable(radius=1.0, pitch=0.5)


@pytest.fixture
def cone_curve():
    return cone(half_angle=np.pi / 6)


def random_motion(rng, translation_scale=2.0):
    """Uniformly random rigid motion as a unit dual quaternion."""
    axis = rng.standard_normal(3)
    angle = rng.uniform(0.0, np.pi)
    q0 = Quaternion.from_axis_angle(axis, angle)
    c = translation_scale * rng.standard_normal(3)
    return DualQuaternion.from_rotation_translation(q0.to_rotation_matrix(), c)
