# -*- coding: utf8 -*-

import math
from unittest import TestCase

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from syncline.exceptions import DomainError
from syncline.kinematics import (BearingRange, apply_attitude_error,
                                 bearing_rotation, bearing_to_vector,
                                 ecef_ned_rotation, euler_to_rotation,
                                 is_rotation, normalize_bearing,
                                 orthonormalize, rotation_to_euler, skew,
                                 vec3, vector_to_bearing)
from tests.util import (RANDOM_CASES, elementary, euler_angles, finite,
                        random_euler, random_rotation, thorough, vectors)


class EulerTests(TestCase):

    def test_zero_angles_are_identity(self):
        assert_allclose(euler_to_rotation((0, 0, 0)), np.eye(3))

    def test_pure_yaw(self):
        expected = [[0, -1, 0], [1, 0, 0], [0, 0, 1]]
        assert_allclose(euler_to_rotation((0, 0, math.pi / 2)), expected,
                        atol=1e-15)

    def test_composition_order_is_zyx(self):
        roll, pitch, yaw = 0.1, 0.2, 0.3
        expected = (elementary('z', yaw) @ elementary('y', pitch) @
                    elementary('x', roll))
        assert_allclose(euler_to_rotation((roll, pitch, yaw)), expected,
                        atol=1e-15)

    def test_random_angles_give_rotations(self):
        rng = np.random.default_rng(1)
        for _ in range(RANDOM_CASES):
            assert is_rotation(euler_to_rotation(random_euler(rng)))

    @thorough
    @given(st.tuples(finite(-math.pi, math.pi),
                     finite(-math.pi / 2 + 1e-3, math.pi / 2 - 1e-3),
                     finite(-math.pi, math.pi)))
    def test_round_trip(self, euler):
        R = euler_to_rotation(euler)
        assert_allclose(euler_to_rotation(rotation_to_euler(R)), R,
                        atol=1e-9)

    def test_canonical_angles_come_back(self):
        angles = rotation_to_euler(euler_to_rotation((0.3, -0.4, 2.5)))
        assert_allclose(angles, (0.3, -0.4, 2.5), atol=1e-12)

    def test_gimbal_lock(self):
        R = euler_to_rotation((0.3, math.pi / 2, 0.5))
        angles = rotation_to_euler(R)
        assert angles.roll == 0.0
        assert abs(angles.pitch - math.pi / 2) < 1e-6
        assert_allclose(euler_to_rotation(angles), R, atol=1e-7)

    def test_non_finite_angles(self):
        with self.assertRaises(DomainError):
            euler_to_rotation((0, float('nan'), 0))


class SkewTests(TestCase):

    def test_zero(self):
        assert_allclose(skew((0, 0, 0)), np.zeros((3, 3)))

    def test_unit_cross_product(self):
        assert_allclose(skew((1, 0, 0)) @ np.array([0, 1, 0]), [0, 0, 1])

    @thorough
    @given(vectors(), vectors())
    def test_matches_cross_product(self, v, w):
        S = skew(v)
        assert_allclose(S, -S.T)
        scale = max(1.0, np.linalg.norm(v) * np.linalg.norm(w))
        assert_allclose(S @ w, np.cross(v, w), atol=1e-12 * scale)

    def test_vec3_checks_shape_and_finiteness(self):
        with self.assertRaises(DomainError):
            vec3((1, 2))
        with self.assertRaises(DomainError):
            vec3((1, 2, float('inf')))


class OrthonormalizeTests(TestCase):

    def test_rotation_is_a_fixed_point(self):
        rng = np.random.default_rng(2)
        R = random_rotation(rng)
        assert_allclose(orthonormalize(R), R, atol=1e-12)

    def test_perturbed_matrix_becomes_rotation(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            M = random_rotation(rng) + rng.normal(scale=0.05, size=(3, 3))
            assert is_rotation(orthonormalize(M))

    def test_is_rotation_rejects(self):
        assert not is_rotation(np.diag([1.0, 1.0, -1.0]))
        assert not is_rotation(2 * np.eye(3))
        assert not is_rotation(np.eye(2))


class AttitudeErrorTests(TestCase):

    def test_zero_error_returns_input(self):
        R = euler_to_rotation((0.1, 0.2, 0.3))
        assert_allclose(apply_attitude_error(R, (0, 0, 0)), R)

    def test_small_yaw(self):
        R = apply_attitude_error(np.eye(3), (0, 0, 1e-3))
        assert abs(rotation_to_euler(R).yaw - 1e-3) < 1e-6

    def test_realised_angle_is_atan(self):
        R = apply_attitude_error(np.eye(3), (0.3, 0, 0))
        assert abs(rotation_to_euler(R).roll - math.atan(0.3)) < 1e-12

    def test_large_errors_are_refused(self):
        with self.assertRaises(DomainError):
            apply_attitude_error(np.eye(3), (0, 0, math.pi / 2))

    @thorough
    @given(euler_angles, vectors(1e-2))
    def test_opposite_errors_cancel(self, euler, epsilon):
        R = euler_to_rotation(euler)
        there = apply_attitude_error(R, epsilon)
        assert is_rotation(there)
        assert_allclose(apply_attitude_error(there, -epsilon), R, atol=1e-6)

    @thorough
    @given(euler_angles, vectors(1e-2))
    def test_first_order_agrees_with_euler(self, euler, epsilon):
        R = euler_to_rotation(euler)
        perturbed = apply_attitude_error(R, epsilon)
        reference = R @ euler_to_rotation(epsilon)
        gap = np.linalg.norm(perturbed - reference)
        assert gap <= 2 * np.linalg.norm(epsilon) ** 2 + 1e-12


class BearingTests(TestCase):

    def test_straight_ahead(self):
        assert_allclose(bearing_to_vector((0.0, 0.0, 5.0)), [5, 0, 0])

    def test_straight_up(self):
        assert_allclose(bearing_to_vector((0.3, math.pi / 2, 2.0)),
                        [0, 0, -2], atol=1e-15)
        bearing = vector_to_bearing((0, 0, -3))
        assert bearing == BearingRange(0.0, math.pi / 2, 3.0)

    def test_azimuth_minus_pi_maps_to_pi(self):
        bearing = vector_to_bearing(np.array([-1.0, -0.0, 0.0]))
        assert bearing.azimuth == math.pi

    def test_zero_vector_has_no_bearing(self):
        with self.assertRaises(DomainError):
            vector_to_bearing((0, 0, 0))

    def test_negative_range(self):
        with self.assertRaises(DomainError):
            bearing_to_vector((0.0, 0.0, -1.0))

    def test_bearing_rotation_matches_vector(self):
        azimuth, elevation = 0.7, -0.2
        assert_allclose(bearing_rotation(elevation, azimuth) @ [4.0, 0, 0],
                        bearing_to_vector((azimuth, elevation, 4.0)),
                        atol=1e-14)
        assert is_rotation(bearing_rotation(elevation, azimuth))

    @thorough
    @given(finite(-math.pi + 1e-9, math.pi),
           finite(-math.pi / 2 + 1e-6, math.pi / 2 - 1e-6),
           finite(1e-3, 1e6))
    def test_round_trip(self, azimuth, elevation, r):
        p = bearing_to_vector((azimuth, elevation, r))
        again = bearing_to_vector(vector_to_bearing(p))
        assert_allclose(again, p, rtol=1e-9, atol=1e-9 * r)

    def test_random_round_trips(self):
        rng = np.random.default_rng(4)
        for _ in range(RANDOM_CASES):
            p = rng.normal(size=3) * 100
            bearing = vector_to_bearing(p)
            assert -math.pi < bearing.azimuth <= math.pi
            assert abs(bearing.elevation) <= math.pi / 2
            assert_allclose(bearing_to_vector(bearing), p, rtol=1e-9,
                            atol=1e-9)

    def test_normalize_folds_over_the_pole(self):
        azimuth, elevation, r = 0.4, math.pi / 2 + 0.1, 3.0
        folded = normalize_bearing(azimuth, elevation, r)
        assert abs(folded.elevation - (math.pi / 2 - 0.1)) < 1e-12
        assert abs(folded.azimuth - (0.4 - math.pi)) < 1e-12
        raw = r * np.array([math.cos(azimuth) * math.cos(elevation),
                            math.sin(azimuth) * math.cos(elevation),
                            -math.sin(elevation)])
        assert_allclose(bearing_to_vector(folded), raw, atol=1e-12)

    def test_normalize_wraps_azimuth(self):
        assert abs(normalize_bearing(3 * math.pi / 2, 0, 1).azimuth +
                   math.pi / 2) < 1e-12
        assert normalize_bearing(0, 0, -0.5).range == 0.0


class NavigationFrameTests(TestCase):

    def test_equator_prime_meridian(self):
        R_en = ecef_ned_rotation(0.0, 0.0)
        assert_allclose(R_en[:, 0], [0, 0, 1], atol=1e-15)
        assert_allclose(R_en[:, 1], [0, 1, 0], atol=1e-15)
        assert_allclose(R_en[:, 2], [-1, 0, 0], atol=1e-15)

    def test_is_rotation_everywhere(self):
        rng = np.random.default_rng(5)
        for _ in range(1000):
            lat = rng.uniform(-math.pi / 2, math.pi / 2)
            lon = rng.uniform(-math.pi, math.pi)
            assert is_rotation(ecef_ned_rotation(lat, lon))

    def test_beyond_the_pole(self):
        with self.assertRaises(DomainError):
            ecef_ned_rotation(2.0, 0.0)
