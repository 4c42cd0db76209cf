# -*- coding: utf8 -*-

"""
Frame algebra shared by every measurement model.

Conventions:

* angles are radians; degrees only appear in catalog documents and reports.
* rotation matrices apply on the left to column vectors, so ``R_nb @ v_b``
  resolves a body-frame vector in NED.
* Euler angles are roll, pitch, yaw composed as ``Rz(yaw) Ry(pitch)
  Rx(roll)`` (zyx intrinsic), giving the body-to-NED matrix.
* bearings are azimuth about the down axis and elevation positive upwards,
  so a direction is ``(cos az cos el, sin az cos el, -sin el)``.
"""

import math
from collections import namedtuple

import numpy as np

from syncline.exceptions import DomainError

IDENTITY = np.eye(3)

#: Past this norm the first-order attitude model is only good to ~0.3%.
SMALL_ANGLE_LIMIT = 0.1


class EulerAngles(namedtuple('EulerAngles', 'roll pitch yaw')):
    """
    Roll, pitch and yaw in radians. The canonical representation keeps
    ``|pitch| <= pi/2``.
    """
    __slots__ = ()


class BearingRange(namedtuple('BearingRange', 'azimuth elevation range')):
    """
    A range-bearing observation: azimuth in (-pi, pi], elevation in
    [-pi/2, pi/2] (both radians) and a non-negative range in metres.
    """
    __slots__ = ()


def vec3(values):
    """
    Coerce ``values`` into a finite float array of shape (3,).
    """
    v = np.asarray(values, dtype=float)
    if v.shape != (3,):
        raise DomainError("Expected a 3-vector, got shape {}".format(v.shape))
    if not np.all(np.isfinite(v)):
        raise DomainError("Vector components must be finite: {}".format(v))
    return v


def _finite(*values):
    for value in values:
        if not math.isfinite(value):
            raise DomainError("Angles must be finite, got {!r}".format(value))


def euler_to_rotation(euler):
    """
    Return the body-to-NED rotation matrix for ``euler`` (roll, pitch, yaw).
    """
    roll, pitch, yaw = euler
    _finite(roll, pitch, yaw)
    cf, sf = math.cos(roll), math.sin(roll)
    ct, st = math.cos(pitch), math.sin(pitch)
    cp, sp = math.cos(yaw), math.sin(yaw)
    return np.array([
        [ct * cp, -cf * sp + sf * st * cp, sf * sp + cf * st * cp],
        [ct * sp, cf * cp + sf * st * sp, -sf * cp + cf * st * sp],
        [-st, sf * ct, cf * ct]])


def rotation_to_euler(R):
    """
    Recover roll, pitch and yaw from a rotation matrix. At gimbal lock the
    roll is set to zero and the yaw carries the remaining rotation.
    """
    R = np.asarray(R, dtype=float)
    pitch = math.asin(max(-1.0, min(1.0, -R[2, 0])))
    if math.hypot(R[2, 1], R[2, 2]) > 1e-12:
        roll = math.atan2(R[2, 1], R[2, 2])
        yaw = math.atan2(R[1, 0], R[0, 0])
    else:
        roll = 0.0
        yaw = math.atan2(-R[0, 1], R[1, 1])
    return EulerAngles(roll, pitch, yaw)


def skew(v):
    """
    The skew-symmetric matrix ``S(v)`` with ``S(v) @ w == cross(v, w)``.
    """
    x, y, z = vec3(v)
    return np.array([
        [0.0, -z, y],
        [z, 0.0, -x],
        [-y, x, 0.0]])


def orthonormalize(M):
    """
    Nearest rotation to ``M`` in the Frobenius sense, i.e. the symmetric
    orthogonalization ``M (M^T M)^(-1/2)``, computed through the SVD.
    """
    U, _, Vt = np.linalg.svd(np.asarray(M, dtype=float))
    R = U @ Vt
    if np.linalg.det(R) < 0:
        U[:, -1] = -U[:, -1]
        R = U @ Vt
    return R


def is_rotation(M, tol=1e-9):
    """
    True if ``M`` is a 3x3 matrix with ``M^T M = I`` and ``det M = 1``, both
    within ``tol``.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3) or not np.all(np.isfinite(M)):
        return False
    orthogonal = np.linalg.norm(M.T @ M - IDENTITY) <= tol
    return bool(orthogonal and abs(np.linalg.det(M) - 1.0) <= tol)


def apply_attitude_error(R, epsilon):
    """
    Perturb ``R`` by the body-frame small-angle vector ``epsilon``:
    ``R (I + S(epsilon))``, pulled back onto SO(3).

    The realised rotation angle is ``atan(|epsilon|)``; it stays within 0.3%
    of ``|epsilon|`` up to ``SMALL_ANGLE_LIMIT`` and degrades quadratically
    beyond that. Norms of pi/2 or more are refused.
    """
    epsilon = vec3(epsilon)
    if np.linalg.norm(epsilon) >= math.pi / 2:
        raise DomainError(
            "Attitude error {} is outside the small-angle model".format(
                epsilon))
    if not epsilon.any():
        return np.array(R, dtype=float)
    R = np.asarray(R, dtype=float)
    return orthonormalize(R @ (IDENTITY + skew(epsilon)))


def bearing_rotation(elevation, azimuth):
    """
    The rotation taking ``(r, 0, 0)`` onto the bearing given by ``azimuth``
    and ``elevation``.
    """
    ca, sa = math.cos(elevation), math.sin(elevation)
    cp, sp = math.cos(azimuth), math.sin(azimuth)
    return np.array([
        [cp * ca, -sp, sa * cp],
        [sp * ca, cp, sa * sp],
        [-sa, 0.0, ca]])


def bearing_to_vector(bearing):
    azimuth, elevation, r = bearing
    _finite(azimuth, elevation, r)
    if r < 0:
        raise DomainError("Range must be non-negative, got {}".format(r))
    ca = math.cos(elevation)
    return r * np.array([
        math.cos(azimuth) * ca,
        math.sin(azimuth) * ca,
        -math.sin(elevation)])


def vector_to_bearing(p):
    """
    Inverse of ``bearing_to_vector``. Straight up or down the azimuth is
    undefined and reported as 0.
    """
    x, y, z = vec3(p)
    r = math.sqrt(x * x + y * y + z * z)
    if r == 0:
        raise DomainError("A zero vector has no bearing")
    horizontal = math.hypot(x, y)
    elevation = math.atan2(-z, horizontal)
    azimuth = math.atan2(y, x) if horizontal > 0 else 0.0
    if azimuth <= -math.pi:
        azimuth = math.pi
    return BearingRange(azimuth, elevation, r)


def normalize_bearing(azimuth, elevation, r):
    """
    Fold a perturbed bearing back into the canonical ranges. An elevation
    pushed over a pole comes back down on the far side.
    """
    if elevation > math.pi / 2:
        elevation = math.pi - elevation
        azimuth += math.pi
    elif elevation < -math.pi / 2:
        elevation = -math.pi - elevation
        azimuth += math.pi
    azimuth = math.atan2(math.sin(azimuth), math.cos(azimuth))
    if azimuth <= -math.pi:
        azimuth = math.pi
    return BearingRange(azimuth, elevation, max(0.0, r))


def ecef_ned_rotation(lat, lon):
    """
    ``R_en``: columns are the north, east and down unit vectors at geodetic
    latitude ``lat`` and longitude ``lon``, resolved in ECEF.
    """
    _finite(lat, lon)
    if abs(lat) > math.pi / 2 + 1e-12:
        raise DomainError("Latitude {} is beyond the poles".format(lat))
    sl, cl = math.sin(lat), math.cos(lat)
    so, co = math.sin(lon), math.cos(lon)
    north = [-sl * co, -sl * so, cl]
    east = [-so, co, 0.0]
    down = [-cl * co, -cl * so, -sl]
    return np.column_stack([north, east, down])
