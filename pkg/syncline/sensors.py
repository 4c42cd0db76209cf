# -*- coding: utf8 -*-

"""
Measurement models with an explicit synchronization offset, and the two
fusion chains that turn measurements into an object position.

Each sensor reports the truth at its own timestamp. A sensor whose clock is
``mu`` seconds off reports the truth ``mu`` seconds away from the reference
sensor's instant, which to first order is the truth plus its rate of change
times ``mu``. Noise is an explicit argument everywhere; nothing here draws
random numbers.

World-frame quantities are NED unless an ``R_en`` rotation is supplied, in
which case fused positions come out in ECEF.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from syncline.exceptions import DomainError
from syncline.kinematics import (IDENTITY, apply_attitude_error,
                                 bearing_to_vector, is_rotation,
                                 normalize_bearing, vec3, vector_to_bearing)

#: Channels of the direct-georeferencing chain. The LiDAR is the reference
#: clock.
GEOREF_CHANNELS = ('gnss', 'ins', 'lidar')
GEOREF_REFERENCES = ('lidar', )

#: Channels of the survey chain. USBL and MBE timestamps define the instants
#: of their respective stages.
SURVEY_CHANNELS = ('gnss', 'ins_sv', 'usbl', 'auvpos', 'ins_auv', 'mbe')
SURVEY_REFERENCES = ('usbl', 'mbe')


@dataclass(frozen=True)
class RigidState:
    """
    Pose and motion of a rigid body: world position ``p``, body-to-world
    attitude ``R``, and linear and angular velocity resolved in the body
    frame.
    """
    p: np.ndarray
    R: np.ndarray
    v_b: np.ndarray
    omega_b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'p', vec3(self.p))
        object.__setattr__(self, 'v_b', vec3(self.v_b))
        object.__setattr__(self, 'omega_b', vec3(self.omega_b))
        R = np.asarray(self.R, dtype=float)
        if not is_rotation(R):
            raise DomainError('Attitude is not a rotation matrix')
        object.__setattr__(self, 'R', R)

    def point(self, lever, R_en=None):
        """
        World position of the body-frame point ``lever``.
        """
        R_en = IDENTITY if R_en is None else R_en
        return self.p + R_en @ self.R @ vec3(lever)


@dataclass(frozen=True)
class SyncOffsets:
    """
    Timing error of each channel in seconds, relative to the reference
    channels, whose offsets are always zero. Channels not listed are
    perfectly synchronized.
    """
    offsets: dict = field(default_factory=dict)
    references: tuple = ()

    def __post_init__(self):
        for name in self.references:
            if self.offsets.get(name, 0.0) != 0.0:
                raise DomainError(
                    'Reference channel {} must have zero offset'.format(name))
        for name, value in self.offsets.items():
            if not math.isfinite(value):
                raise DomainError('Offset of {} is not finite'.format(name))
        object.__setattr__(self, 'offsets', dict(self.offsets))

    def __getitem__(self, name):
        return self.offsets.get(name, 0.0)

    @property
    def max_abs(self):
        return max([abs(v) for v in self.offsets.values()] or [0.0])


@dataclass(frozen=True)
class NoiseDraw:
    """
    Additive error per channel. Position channels take a world-frame
    3-vector in metres, attitude channels a body-frame small-angle vector in
    radians, range-bearing channels ``(dr, d_azimuth, d_elevation)``.
    Missing channels are noise-free.
    """
    values: dict = field(default_factory=dict)

    def __getitem__(self, name):
        value = self.values.get(name)
        return np.zeros(3) if value is None else np.asarray(value, float)


def point_velocity(state, lever, R_en=None):
    """
    World-frame velocity of the body point at ``lever``:
    ``R_en R (v_b + omega_b x lever)``. The rotation of the navigation frame
    itself is neglected.
    """
    R_en = IDENTITY if R_en is None else R_en
    return R_en @ state.R @ (state.v_b + np.cross(state.omega_b, vec3(lever)))


def measure_position(state, lever, mu, noise, R_en=None):
    """
    A position fix of the point at ``lever`` taken ``mu`` seconds out of
    step.
    """
    return (state.point(lever, R_en) +
            point_velocity(state, lever, R_en) * mu + vec3(noise))


def measure_attitude(state, mu, noise):
    """
    An attitude measurement taken ``mu`` seconds out of step, then perturbed
    by the body-frame small-angle ``noise``.
    """
    advance = state.omega_b * mu
    if np.linalg.norm(advance) >= math.pi / 2:
        raise DomainError(
            'Rotation of {:.3f} rad during the offset is outside the '
            'small-angle model'.format(np.linalg.norm(advance)))
    return apply_attitude_error(apply_attitude_error(state.R, advance), noise)


def measure_range_bearing(true_vector, mount=None, noise=(0.0, 0.0, 0.0)):
    """
    A range-bearing observation of ``true_vector`` (body frame) by a sensor
    with orientation ``mount`` relative to the body. The sensor is a
    reference clock, so there is no offset term.
    """
    mount = IDENTITY if mount is None else np.asarray(mount, dtype=float)
    truth = vector_to_bearing(mount.T @ vec3(true_vector))
    dr, daz, delev = noise
    return normalize_bearing(truth.azimuth + daz, truth.elevation + delev,
                             truth.range + dr)


def range_bearing_vector(measurement, mount=None):
    """
    The body-frame vector a range-bearing measurement stands for.
    """
    mount = IDENTITY if mount is None else np.asarray(mount, dtype=float)
    return mount @ bearing_to_vector(measurement)


def measure_usbl(sv_state, auv_point, rx_lever, mount=None,
                 noise=(0.0, 0.0, 0.0), R_en=None):
    """
    The receiver-to-transponder vector, in SV body frame, as a USBL
    reports it. ``auv_point`` is the transponder's world position;
    ``rx_lever`` places the receiver on the SV. Noise is applied in
    range-bearing coordinates.
    """
    R_en = IDENTITY if R_en is None else R_en
    relative = vec3(auv_point) - sv_state.point(rx_lever, R_en)
    body = (R_en @ sv_state.R).T @ relative
    if not np.any(body):
        raise DomainError('USBL receiver and transponder coincide')
    return range_bearing_vector(
        measure_range_bearing(body, mount, noise), mount)


def virtual_auv_position(gnss_meas, ins_sv_meas, usbl_meas, lever_gnss_rx,
                         auv_state=None, transponder_lever=(0.0, 0.0, 0.0),
                         mu_auvpos=0.0, R_en=None):
    """
    The transponder position assembled on the SV: measured antenna position
    plus the measured SV attitude applied to the antenna-to-receiver lever
    and the USBL vector. The AUV's own motion during its offset
    ``mu_auvpos`` is added at the transponder.
    """
    R_en = IDENTITY if R_en is None else R_en
    estimate = vec3(gnss_meas) + R_en @ ins_sv_meas @ (
        vec3(lever_gnss_rx) + vec3(usbl_meas))
    if auv_state is not None and mu_auvpos:
        estimate = estimate + point_velocity(
            auv_state, transponder_lever, R_en) * mu_auvpos
    return estimate


def georeference(gnss_meas, att_meas, rb_meas, lever_g_l, mount=None,
                 R_en=None):
    """
    Direct georeferencing: the object position from an antenna fix, the
    vehicle attitude and a range-bearing observation, with ``lever_g_l``
    running from antenna to range-bearing sensor in body frame.
    """
    R_en = IDENTITY if R_en is None else R_en
    return vec3(gnss_meas) + R_en @ att_meas @ (
        vec3(lever_g_l) + range_bearing_vector(rb_meas, mount))


def survey_georeference(auvpos_meas, ins_auv_meas, mbe_meas, lever_tp_mbe,
                        mount=None, R_en=None):
    """
    The seabed footprint: the second georeferencing stage, run from the
    virtual AUV position instead of a GNSS fix.
    """
    return georeference(auvpos_meas, ins_auv_meas, mbe_meas, lever_tp_mbe,
                        mount, R_en)
