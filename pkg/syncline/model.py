# -*- coding: utf8 -*-

"""
The closed-form error budget.

A budget is two numbers: ``delta_sync_rate``, the metres of worst-case error
each second of synchronization error buys, and ``delta_sensor``, the
worst-case error the sensors produce on their own (the roof). The Syncline is
their sum at a given timing error ``tau``:

    delta(tau) = delta_sync_rate * tau + delta_sensor

Budgets of chained fusion stages combine with ``&``; rates and roofs add.

    >>> from syncline.model import ErrorBudget, syncline, tau_crit
    >>> budget = ErrorBudget(2.0, 0.1) & ErrorBudget(3.0, 0.4)
    >>> budget.delta_sync_rate, budget.delta_sensor
    (5.0, 0.5)
    >>> tau_crit(budget)
    0.1
    >>> syncline(budget, 0.1)
    1.0
"""

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from syncline.catalog import (ATTITUDE, POSITION, attitude_sigma_effective,
                              bearing_sigma_effective,
                              position_sigma_effective)
from syncline.exceptions import DomainError
from syncline.tree import Leaf, Tree

SENSOR_BOUND = 'sensor-bound'
SYNC_BOUND = 'sync-bound'
CRITICAL = 'critical'

SURVEY_ROLES = ('sv', 'auv')


class _BudgetMixin(object):

    def __eq__(self, other):
        if not isinstance(other, _BudgetMixin):
            return NotImplemented
        return (math.isclose(self.delta_sync_rate, other.delta_sync_rate,
                             rel_tol=1e-12, abs_tol=1e-15) and
                math.isclose(self.delta_sensor, other.delta_sensor,
                             rel_tol=1e-12, abs_tol=1e-15))

    __hash__ = None

    def __repr__(self):
        return '<{} {}: {:g} m/s, {:g} m>'.format(
            type(self).__name__, self.label, self.delta_sync_rate,
            self.delta_sensor)


class BudgetTree(_BudgetMixin, Tree):
    """
    The budget of several chained stages: the sum of their budgets.
    """

    @property
    def delta_sync_rate(self):
        return sum(leaf.delta_sync_rate for leaf in self)

    @property
    def delta_sensor(self):
        return sum(leaf.delta_sensor for leaf in self)

    @property
    def label(self):
        return ' & '.join(leaf.label or '?' for leaf in self)


class ErrorBudget(_BudgetMixin, Leaf):

    tree_class = BudgetTree

    def __init__(self, delta_sync_rate, delta_sensor, label=None):
        for name, value in (('delta_sync_rate', delta_sync_rate),
                            ('delta_sensor', delta_sensor)):
            if not math.isfinite(value) or value < 0:
                raise DomainError(
                    '{} must be finite and non-negative, got {!r}'.format(
                        name, value))
        self.delta_sync_rate = float(delta_sync_rate)
        self.delta_sensor = float(delta_sensor)
        self.label = label


def _check_tau(tau):
    if not tau >= 0:
        raise DomainError('tau must be non-negative, got {!r}'.format(tau))


def sync_error(v, omega, d, mu):
    """
    Instantaneous sync-induced error of an object at range ``d`` seen from a
    vehicle moving at ``v`` and turning at ``omega`` when its data are
    ``mu`` seconds out of step. ``v`` and ``omega`` may be vectors.
    """
    speed = float(np.linalg.norm(np.atleast_1d(v)))
    rate = float(np.linalg.norm(np.atleast_1d(omega)))
    return (speed + d * rate) * abs(mu)


def sync_error_ub(platform, tau):
    """
    Worst-case sync-induced error: ``(v_max + d * omega_max) * tau``.
    """
    _check_tau(tau)
    return platform.delta_sync_rate * tau


def sensor_error_ub(payload, d):
    """
    Worst-case sensor-induced error of the georeferencing chain at range
    ``d``: position, range and the two angular terms scaled by the range.
    """
    if not d > 0:
        raise DomainError('d must be positive, got {!r}'.format(d))
    return (position_sigma_effective(payload.position_sensor) +
            payload.range_bearing_sensor.sigma_r +
            (attitude_sigma_effective(payload.attitude_sensor) +
             bearing_sigma_effective(payload.range_bearing_sensor)) * d)


def syncline(budget, tau):
    _check_tau(tau)
    return budget.delta_sync_rate * tau + budget.delta_sensor


def tau_crit(budget):
    """
    The timing error at which sync-induced and sensor-induced errors are
    equal. A budget with no sync rate is never sync-bound: ``math.inf``.
    """
    if budget.delta_sync_rate == 0:
        return math.inf
    return budget.delta_sensor / budget.delta_sync_rate


def region(budget, tau):
    """
    Which term dominates at ``tau``: SENSOR_BOUND, SYNC_BOUND or, within
    floating point of the crossover, CRITICAL.
    """
    _check_tau(tau)
    sync = budget.delta_sync_rate * tau
    if math.isclose(sync, budget.delta_sensor, rel_tol=1e-9):
        return CRITICAL
    return SYNC_BOUND if sync > budget.delta_sensor else SENSOR_BOUND


def _ratio(numerator, denominator):
    if denominator == 0:
        return math.inf
    return numerator / denominator


def _sensor_tau_crit(sensor, v, omega, d):
    if sensor.kind == POSITION:
        return _ratio(position_sigma_effective(sensor), v)
    if sensor.kind == ATTITUDE:
        return _ratio(d * attitude_sigma_effective(sensor), v + d * omega)
    return _ratio(sensor.sigma_r + d * bearing_sigma_effective(sensor),
                  v + d * omega)


def per_sensor_tau_crit(sensor, platform, d=None):
    """
    The critical synchronization error of one sensor on ``platform``.

    Position sensors only see translation, so they are compared against
    ``v_max``; attitude and range-bearing errors grow with range and compete
    with ``v_max + d * omega_max``. ``d`` defaults to the platform's typical
    range.
    """
    d = platform.d if d is None else d
    return _sensor_tau_crit(sensor, platform.v_max, platform.omega_max, d)


def _survey_vehicle(system, role):
    if role == 'sv':
        return system.sv, system.d_sv
    if role == 'auv':
        return system.auv, system.d_auv
    raise DomainError("role must be one of {}, got {!r}".format(
        ', '.join(SURVEY_ROLES), role))


def per_sensor_tau_crit_survey(sensor, role, system):
    """
    As ``per_sensor_tau_crit`` for a sensor carried by vehicle ``role``
    (``'sv'`` or ``'auv'``) of a survey system, using that vehicle's
    dynamics and survey range.
    """
    platform, d = _survey_vehicle(system, role)
    return _sensor_tau_crit(sensor, platform.v_max, platform.omega_max, d)


def survey_sync_rate(system):
    return (system.sv.v_max + system.auv.v_max +
            system.d_sv * system.sv.omega_max +
            system.d_auv * system.auv.omega_max)


def survey_sensor_error_ub(system):
    return (sensor_error_ub(system.sv_payload, system.d_sv) +
            sensor_error_ub(system.auv_payload, system.d_auv))


def payload_budget(platform, payload, d=None):
    d = platform.d if d is None else d
    return ErrorBudget(platform.v_max + d * platform.omega_max,
                       sensor_error_ub(payload, d),
                       label='{} / {}'.format(platform.name, payload.name))


def survey_budget(system):
    return ErrorBudget(survey_sync_rate(system),
                       survey_sensor_error_ub(system), label=system.name)


def survey_stage_budgets(system):
    """
    The SV and AUV stages of a survey as separate budgets; ANDed together
    they equal ``survey_budget(system)``.
    """
    return (payload_budget(system.sv, system.sv_payload, system.d_sv),
            payload_budget(system.auv, system.auv_payload, system.d_auv))


def governing_sensor(payload, platform, d=None):
    """
    The sensor of ``payload`` with the lowest critical synchronization error
    on ``platform``, and that error. It sets the timing requirement.
    """
    candidates = [(per_sensor_tau_crit(s, platform, d), i, s)
                  for i, s in enumerate(payload.sensors) if not s.is_null]
    if not candidates:
        raise DomainError('{} carries no sensors'.format(payload.name))
    tau, _, sensor = min(candidates)
    return sensor, tau


CurveSample = namedtuple(
    'CurveSample', 'tau delta sync_accuracy est_accuracy')


@dataclass(frozen=True)
class SynclineCurve:
    """
    A sampled Syncline. ``samples`` ascend in ``tau``; accuracies are the
    reciprocals of ``tau`` and ``delta``. ``roof`` is the best attainable
    estimation accuracy, ``1 / delta_sensor``.
    """
    samples: tuple
    tau_crit: float
    roof: float
    label: str = None

    @property
    def taus(self):
        return np.array([s.tau for s in self.samples])

    @property
    def deltas(self):
        return np.array([s.delta for s in self.samples])


def _inverse(value):
    return math.inf if value == 0 else 1.0 / value


def sample_curve(budget, tau_min, tau_max, n):
    """
    Sample ``budget`` at ``n`` log-spaced timing errors between ``tau_min``
    and ``tau_max`` inclusive.
    """
    if not (0 < tau_min < tau_max and math.isfinite(tau_max)):
        raise DomainError(
            'Need 0 < tau_min < tau_max, got {!r}, {!r}'.format(
                tau_min, tau_max))
    if n < 2:
        raise DomainError('Need at least two samples, got {}'.format(n))
    taus = np.logspace(math.log10(tau_min), math.log10(tau_max), int(n))
    taus[0], taus[-1] = tau_min, tau_max
    samples = []
    for tau in taus:
        tau = float(tau)
        delta = syncline(budget, tau)
        samples.append(CurveSample(tau, delta, 1.0 / tau, _inverse(delta)))
    return SynclineCurve(tuple(samples), tau_crit(budget),
                         _inverse(budget.delta_sensor),
                         label=getattr(budget, 'label', None))
