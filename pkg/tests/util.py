# -*- coding: utf8 -*-

import math

import numpy as np
from hypothesis import settings
from hypothesis import strategies as st

from syncline.exceptions import ValidationError
from syncline.fields import Field
from syncline.kinematics import euler_to_rotation, skew
from syncline.sensors import RigidState

#: Size of the seeded random sweeps backing the invariant suites.
RANDOM_CASES = 10000

#: Hypothesis settings for the invariant suites: as many cases as the
#: seeded sweeps, with no per-example deadline.
thorough = settings(max_examples=RANDOM_CASES, deadline=None)


class NopeField(Field):
    """
    A field which always raises a validation error.
    """
    def clean(self, value):
        raise ValidationError(["Nope"])


def finite(low, high):
    return st.floats(min_value=low, max_value=high, allow_nan=False,
                     allow_infinity=False)


def vectors(scale=10.0):
    component = finite(-scale, scale)
    return st.tuples(component, component, component).map(np.array)


euler_angles = st.tuples(finite(-math.pi, math.pi),
                         finite(-math.pi / 2, math.pi / 2),
                         finite(-math.pi, math.pi))


def random_euler(rng):
    return (rng.uniform(-math.pi, math.pi),
            rng.uniform(-math.pi / 2, math.pi / 2),
            rng.uniform(-math.pi, math.pi))


def random_rotation(rng):
    return euler_to_rotation(random_euler(rng))


def random_state(rng, speed=5.0, rate=0.5, extent=100.0):
    return RigidState(rng.normal(size=3) * extent, random_rotation(rng),
                      rng.normal(size=3) * speed, rng.normal(size=3) * rate)


def rotation_about(vector):
    """
    The rotation by ``|vector|`` radians about ``vector`` (Rodrigues).
    """
    vector = np.asarray(vector, dtype=float)
    angle = np.linalg.norm(vector)
    if angle == 0:
        return np.eye(3)
    K = skew(vector / angle)
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * K @ K


def elementary(axis, angle):
    c, s = math.cos(angle), math.sin(angle)
    if axis == 'x':
        return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])
    if axis == 'y':
        return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])
    return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
