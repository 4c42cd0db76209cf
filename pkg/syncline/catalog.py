# -*- coding: utf8 -*-

"""
Registry of robot platforms, sensors, georeferencing payloads and survey
systems.

The built-in entries reproduce the robot-dynamics and sensor-noise tables the
model was published with. Angles are stored in radians; catalog documents and
reports use degrees, and the conversion happens in the field layer
(``syncline.fields.DegreesField``) or in ``dump_catalog``.
"""

import json
import logging
import math
from collections import OrderedDict
from dataclasses import dataclass, field, fields as dataclass_fields

import numpy as np

from syncline.exceptions import (CatalogValidationError, SchemaError,
                                 UnknownEntryError, ValidationError)
from syncline.fields import (ChoiceField, DegreesField, LeversField,
                             NameField, NumberField, Optional, ReferenceField,
                             VectorField)

logger = logging.getLogger(__name__)

POSITION = 'position'
ATTITUDE = 'attitude'
RANGE_BEARING = 'range_bearing'
KINDS = (POSITION, ATTITUDE, RANGE_BEARING)

#: Sensor-specific attributes, per kind.
KIND_ATTRIBUTES = {
    POSITION: ('sigma_p', ),
    ATTITUDE: ('sigma_rpy', ),
    RANGE_BEARING: ('sigma_r', 'sigma_az', 'sigma_el'),
}

#: Survey defaults: AUV 1000 m below the vessel and 30 m above the seabed.
DEFAULT_D_SV = 1000.0
DEFAULT_D_AUV = 30.0

#: AUV speed consistent with the survey critical-synchronization table; the
#: robot-dynamics table's 30 m/s is kept as the "AUV (table)" platform.
SURVEY_AUV_SPEED = 2.078

#: Floats compare equal to this relative precision, so that a registry
#: survives a trip through degrees and back.
REL_TOL = 1e-12


def normalize_name(name):
    """
    Lookup key for ``name``: lower case, alphanumerics only, so that
    "Fixed Wing", "fixed-wing" and "FixedWing" all match.
    """
    return ''.join(ch for ch in name.lower() if ch.isalnum())


def _close(a, b):
    if a is None or b is None:
        return a is b
    if isinstance(a, tuple):
        return (isinstance(b, tuple) and len(a) == len(b) and
                all(_close(x, y) for x, y in zip(a, b)))
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=1e-300)


def _check_non_negative(entry, *attributes):
    for attribute in attributes:
        value = getattr(entry, attribute)
        values = value if isinstance(value, tuple) else (value, )
        for v in values:
            if not math.isfinite(v):
                raise ValidationError('Must be finite', field=attribute)
            if v < 0:
                raise ValidationError(
                    'Must be non-negative, got {}'.format(v), field=attribute)


class _ApproxEqualMixin(object):
    """
    Equality on every dataclass field, with floats compared to REL_TOL.
    """

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        for f in dataclass_fields(self):
            mine, theirs = getattr(self, f.name), getattr(other, f.name)
            if isinstance(mine, (float, tuple)) or mine is None:
                if not _close(mine, theirs):
                    return False
            elif mine != theirs:
                return False
        return True

    def __hash__(self):
        return hash((type(self).__name__, self.name))


@dataclass(frozen=True, eq=False)
class PlatformSpec(_ApproxEqualMixin):
    """
    Dynamics envelope of a robot: top speed (m/s), top turn rate (rad/s),
    typical distance to the objects it localises (m) and its baseline, the
    largest lever arm it can carry (m).
    """
    name: str
    v_max: float
    omega_max: float
    d: float
    b: float

    def __post_init__(self):
        _check_non_negative(self, 'v_max', 'omega_max', 'b')
        if not (math.isfinite(self.d) and self.d > 0):
            raise ValidationError('Must be positive', field='d')

    @property
    def delta_sync_rate(self):
        """
        ``v_max + d * omega_max``: metres of error per second of timestamp
        error.
        """
        return self.v_max + self.d * self.omega_max


@dataclass(frozen=True, eq=False)
class SensorSpec(_ApproxEqualMixin):
    """
    Noise standard deviations for one sensor. Which attributes are set depends
    on ``kind``: position sensors have ``sigma_p`` (m); attitude sensors have
    ``sigma_rpy`` (roll, pitch, yaw in rad); range-bearing sensors have
    ``sigma_r`` (m), ``sigma_az`` and ``sigma_el`` (rad).
    """
    name: str
    kind: str
    sigma_p: float = None
    sigma_rpy: tuple = None
    sigma_r: float = None
    sigma_az: float = None
    sigma_el: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(
                'Unknown sensor kind {!r}'.format(self.kind), field='kind')
        expected = KIND_ATTRIBUTES[self.kind]
        for attributes in KIND_ATTRIBUTES.values():
            for attribute in attributes:
                given = getattr(self, attribute) is not None
                if given and attribute not in expected:
                    raise ValidationError(
                        'Not allowed for a {} sensor'.format(self.kind),
                        field=attribute)
                if not given and attribute in expected:
                    raise ValidationError(
                        'Required for a {} sensor'.format(self.kind),
                        field=attribute)
        if self.sigma_rpy is not None:
            object.__setattr__(self, 'sigma_rpy', tuple(self.sigma_rpy))
            if len(self.sigma_rpy) != 3:
                raise ValidationError('Expected three sigmas',
                                      field='sigma_rpy')
        _check_non_negative(self, *expected)

    def scaled(self, k):
        """
        A copy with every sigma multiplied by ``k``.
        """
        changes = {}
        for attribute in KIND_ATTRIBUTES[self.kind]:
            value = getattr(self, attribute)
            if isinstance(value, tuple):
                changes[attribute] = tuple(k * v for v in value)
            else:
                changes[attribute] = k * value
        return _replace(self, **changes)

    @property
    def is_null(self):
        return self.name == NULL_SENSOR_NAME


def _replace(entry, **changes):
    values = {f.name: getattr(entry, f.name) for f in dataclass_fields(entry)}
    values.update(changes)
    return type(entry)(**values)


NULL_SENSOR_NAME = 'none'


def null_sensor(kind):
    """
    The stand-in for a sensor a payload does not carry: every sigma zero.
    """
    if kind == POSITION:
        return SensorSpec(NULL_SENSOR_NAME, POSITION, sigma_p=0.0)
    if kind == ATTITUDE:
        return SensorSpec(NULL_SENSOR_NAME, ATTITUDE, sigma_rpy=(0.0, ) * 3)
    return SensorSpec(NULL_SENSOR_NAME, RANGE_BEARING, sigma_r=0.0,
                      sigma_az=0.0, sigma_el=0.0)


def position_sigma_effective(sensor):
    """
    Worst-case norm of a 3-axis position error: ``sqrt(3) * sigma_p``.
    """
    _expect_kind(sensor, POSITION)
    return math.sqrt(3.0) * sensor.sigma_p


def attitude_sigma_effective(sensor):
    """
    Euclidean norm of the roll, pitch and yaw sigmas, in radians.
    """
    _expect_kind(sensor, ATTITUDE)
    return math.hypot(*sensor.sigma_rpy)


def bearing_sigma_effective(sensor):
    """
    Euclidean norm of the azimuth and elevation sigmas, in radians.
    """
    _expect_kind(sensor, RANGE_BEARING)
    return math.hypot(sensor.sigma_az, sensor.sigma_el)


def _expect_kind(sensor, kind):
    if sensor.kind != kind:
        raise ValueError("{} is a {} sensor, not {}".format(
            sensor.name, sensor.kind, kind))


#: Lever-arm roles within a payload.
ROLES = KINDS


def _lever_tuple(value):
    return tuple(float(v) for v in value)


@dataclass(frozen=True, eq=False)
class Payload(_ApproxEqualMixin):
    """
    The sensor triple of one vehicle plus lever arms (body frame, metres)
    from the vehicle reference point to each sensor, keyed by role
    (``position``, ``attitude``, ``range_bearing``). A missing sensor is a
    zero-sigma ``null_sensor`` with a zero lever arm.
    """
    name: str
    position_sensor: SensorSpec = None
    attitude_sensor: SensorSpec = None
    range_bearing_sensor: SensorSpec = None
    levers: dict = field(default_factory=dict)

    def __post_init__(self):
        for role, attribute in zip(ROLES, self._sensor_attributes()):
            sensor = getattr(self, attribute)
            if sensor is None:
                object.__setattr__(self, attribute, null_sensor(role))
            elif sensor.kind != role:
                raise ValidationError(
                    '{} is a {} sensor, expected {}'.format(
                        sensor.name, sensor.kind, role), field=attribute)
        levers = {}
        for role, arm in self.levers.items():
            if role not in ROLES:
                raise ValidationError('Unknown lever role {!r}'.format(role),
                                      field='levers')
            levers[role] = _lever_tuple(arm)
        object.__setattr__(self, 'levers', levers)

    @staticmethod
    def _sensor_attributes():
        return ('position_sensor', 'attitude_sensor', 'range_bearing_sensor')

    @property
    def sensors(self):
        return (self.position_sensor, self.attitude_sensor,
                self.range_bearing_sensor)

    def lever(self, role):
        """
        Lever arm of ``role`` as a numpy array; zero if none was given.
        """
        return np.array(self.levers.get(role, (0.0, 0.0, 0.0)))

    def check_levers(self, platform):
        """
        Raise ValidationError if a lever arm is longer than the platform's
        baseline.
        """
        for role, arm in self.levers.items():
            norm = float(np.linalg.norm(arm))
            if norm > platform.b * (1 + REL_TOL):
                raise ValidationError(
                    '{} lever arm is {:.3f} m, longer than the {:.3f} m '
                    'baseline of {}'.format(role, norm, platform.b,
                                            platform.name), field='levers')

    def with_default_levers(self, platform):
        """
        A copy with any missing lever arm filled in for ``platform``: the
        position sensor (antenna or transponder) half a baseline above the
        reference point, the range-bearing sensor half a baseline below it.
        """
        half = platform.b / 2.0
        levers = {POSITION: (0.0, 0.0, -half), RANGE_BEARING: (0.0, 0.0, half)}
        levers.update(self.levers)
        return _replace(self, levers=levers)

    def scaled(self, k):
        return _replace(
            self,
            position_sensor=self.position_sensor.scaled(k),
            attitude_sensor=self.attitude_sensor.scaled(k),
            range_bearing_sensor=self.range_bearing_sensor.scaled(k))

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        if self.name != other.name or self.sensors != other.sensors:
            return False
        if set(self.levers) != set(other.levers):
            return False
        return all(_close(self.levers[r], other.levers[r])
                   for r in self.levers)

    __hash__ = _ApproxEqualMixin.__hash__


@dataclass(frozen=True, eq=False)
class SurveySystem(_ApproxEqualMixin):
    """
    A surface vessel (GNSS, INS, USBL receiver) positioning an AUV (USBL
    transponder, INS, multibeam echosounder) which maps the seabed.

    On the AUV payload the ``position`` lever is the transponder; on the SV
    payload the ``range_bearing`` lever is the USBL receiver.
    """
    name: str
    sv: PlatformSpec
    sv_payload: Payload
    auv: PlatformSpec
    auv_payload: Payload
    d_sv: float = DEFAULT_D_SV
    d_auv: float = DEFAULT_D_AUV

    def __post_init__(self):
        for attribute in ('d_sv', 'd_auv'):
            value = getattr(self, attribute)
            if not (math.isfinite(value) and value > 0):
                raise ValidationError('Must be positive', field=attribute)

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return (self.name == other.name and self.sv == other.sv and
                self.auv == other.auv and
                self.sv_payload == other.sv_payload and
                self.auv_payload == other.auv_payload and
                _close(self.d_sv, other.d_sv) and
                _close(self.d_auv, other.d_auv))

    __hash__ = _ApproxEqualMixin.__hash__

    @property
    def sensors(self):
        """
        The five survey sensors, keyed by channel name.
        """
        return OrderedDict([
            ('gnss', self.sv_payload.position_sensor),
            ('ins_sv', self.sv_payload.attitude_sensor),
            ('usbl', self.sv_payload.range_bearing_sensor),
            ('ins_auv', self.auv_payload.attitude_sensor),
            ('mbe', self.auv_payload.range_bearing_sensor),
        ])

    def role_of(self, sensor):
        """
        ``'sv'`` or ``'auv'``: the vehicle carrying ``sensor`` in this system.
        """
        if sensor in self.sv_payload.sensors and not sensor.is_null:
            return 'sv'
        if sensor in self.auv_payload.sensors and not sensor.is_null:
            return 'auv'
        raise ValueError('{} is not part of {}'.format(sensor.name, self.name))

    def scaled(self, k):
        return _replace(self, sv_payload=self.sv_payload.scaled(k),
                        auv_payload=self.auv_payload.scaled(k))


# -- built-in tables


PLATFORM_TABLE = (
    # name, v_max m/s, omega_max deg/s, d m, b m
    ('Fixed Wing', 21.0, 77.9, 100.0, 1.0),
    ('Multi Rotor', 5.0, 311.8, 5.0, 0.5),
    ('USV', 5.0, 17.0, 30.0, 5.0),
    ('AUV (table)', 30.0, 8.7, 5.0, 5.0),
    ('Car', 30.0, 17.3, 50.0, 3.0),
    ('Large SV', 2.5, 4.5, 1000.0, 50.0),
    ('Small SV', 4.0, 17.0, 1000.0, 10.0),
)

SENSOR_TABLE = (
    # GNSS receivers: sigma_p m
    ('F9P PVT', POSITION, (1.5, )),
    ('F9P RTK', POSITION, (0.01, )),
    ('R12 DGNSS', POSITION, (0.25, )),
    ('R12 RTK', POSITION, (0.008, )),
    # INS: sigma roll, pitch, yaw in degrees
    ('Ellipse', ATTITUDE, (0.1, 0.1, 0.2)),
    ('Apogee', ATTITUDE, (0.008, 0.008, 0.03)),
    ('MRU5', ATTITUDE, (0.002, 0.002, 0.002)),
    # LiDAR, USBL and MBE: sigma_r m, sigma_az deg, sigma_el deg
    ('Alpha Prime', RANGE_BEARING, (0.04, 0.1, 0.2)),
    ('HDL32E', RANGE_BEARING, (0.02, 0.08, 0.08)),
    ('VUX1-UAV', RANGE_BEARING, (0.01, 0.006, 0.006)),
    ('Focus Plus', RANGE_BEARING, (0.001, 0.005, 0.005)),
    ('HIPAP502', RANGE_BEARING, (0.02, 0.06, 0.06)),
    ('USBL7000', RANGE_BEARING, (0.015, 0.04, 0.04)),
    ('M3 Sonar', RANGE_BEARING, (0.01, 0.9, 0.5)),
    ('Sonic 2026 MBE', RANGE_BEARING, (0.001, 0.45, 0.45)),
)

#: Georeferencing payloads: name, GNSS, INS, range-bearing sensor.
PAYLOAD_TABLE = (
    ('F9P RTK + MRU5 + VUX1', 'F9P RTK', 'MRU5', 'VUX1-UAV'),
    ('F9P PVT + MRU5 + VUX1', 'F9P PVT', 'MRU5', 'VUX1-UAV'),
    ('F9P RTK + Ellipse + VUX1', 'F9P RTK', 'Ellipse', 'VUX1-UAV'),
    ('F9P RTK + MRU5 + Alpha Prime', 'F9P RTK', 'MRU5', 'Alpha Prime'),
)

#: Survey systems: name, SV platform, GNSS, SV INS, USBL, AUV INS, MBE.
SURVEY_TABLE = (
    ('Large SV', 'Large SV', 'R12 RTK', 'MRU5', 'USBL7000', 'MRU5',
     'Sonic 2026 MBE'),
    ('Small SV', 'Small SV', 'R12 RTK', 'MRU5', 'USBL7000', 'MRU5',
     'Sonic 2026 MBE'),
    ('Large SV + F9P RTK', 'Large SV', 'F9P RTK', 'MRU5', 'USBL7000', 'MRU5',
     'Sonic 2026 MBE'),
    ('Large SV + Ellipse', 'Large SV', 'R12 RTK', 'Ellipse', 'USBL7000',
     'Ellipse', 'Sonic 2026 MBE'),
    ('Large SV + HIPAP502', 'Large SV', 'R12 RTK', 'MRU5', 'HIPAP502',
     'MRU5', 'Sonic 2026 MBE'),
)


def _sensor_from_row(name, kind, values):
    if kind == POSITION:
        return SensorSpec(name, kind, sigma_p=values[0])
    if kind == ATTITUDE:
        return SensorSpec(name, kind,
                          sigma_rpy=tuple(math.radians(v) for v in values))
    sigma_r, sigma_az, sigma_el = values
    return SensorSpec(name, kind, sigma_r=sigma_r,
                      sigma_az=math.radians(sigma_az),
                      sigma_el=math.radians(sigma_el))


def builtin_platforms():
    return [PlatformSpec(name, v, math.radians(w), d, b)
            for name, v, w, d, b in PLATFORM_TABLE]


def builtin_sensors():
    return [_sensor_from_row(*row) for row in SENSOR_TABLE]


def survey_auv():
    """
    The AUV used by the survey examples: the table's turn rate and baseline,
    the survey speed, and the seabed distance as its range.
    """
    return PlatformSpec('AUV', SURVEY_AUV_SPEED, math.radians(8.7),
                        DEFAULT_D_AUV, 5.0)


def builtin_payloads():
    sensors = {s.name: s for s in builtin_sensors()}
    return [Payload(name, sensors[gnss], sensors[ins], sensors[rb])
            for name, gnss, ins, rb in PAYLOAD_TABLE]


def builtin_survey_systems():
    platforms = {p.name: p for p in builtin_platforms()}
    sensors = {s.name: s for s in builtin_sensors()}
    systems = []
    for name, sv, gnss, ins_sv, usbl, ins_auv, mbe in SURVEY_TABLE:
        sv_payload = Payload(name + ' SV', position_sensor=sensors[gnss],
                             attitude_sensor=sensors[ins_sv],
                             range_bearing_sensor=sensors[usbl])
        auv_payload = Payload(name + ' AUV', attitude_sensor=sensors[ins_auv],
                              range_bearing_sensor=sensors[mbe])
        systems.append(SurveySystem(name, platforms[sv], sv_payload,
                                    survey_auv(), auv_payload))
    return systems


class Catalog(object):
    """
    An immutable registry. Entries are looked up by name, forgivingly (see
    ``normalize_name``), and iterate in insertion order.
    """

    sections = ('platforms', 'sensors', 'payloads', 'survey_systems')

    def __init__(self, platforms=(), sensors=(), payloads=(),
                 survey_systems=()):
        self._entries = {}
        for section, entries in zip(self.sections, (platforms, sensors,
                                                    payloads, survey_systems)):
            table = OrderedDict()
            for entry in entries:
                table[normalize_name(entry.name)] = entry
            self._entries[section] = table

    @classmethod
    def builtin(cls):
        return cls(builtin_platforms(), builtin_sensors(), builtin_payloads(),
                   builtin_survey_systems())

    def _get(self, section, name):
        try:
            return self._entries[section][normalize_name(name)]
        except KeyError:
            raise UnknownEntryError(section, name)

    def platform(self, name):
        return self._get('platforms', name)

    def sensor(self, name):
        return self._get('sensors', name)

    def payload(self, name):
        return self._get('payloads', name)

    def survey_system(self, name):
        return self._get('survey_systems', name)

    def find(self, name):
        """
        The first entry called ``name`` in any section, searching platforms,
        sensors, payloads and survey systems in that order.
        """
        for section in self.sections:
            entry = self._entries[section].get(normalize_name(name))
            if entry is not None:
                return entry
        raise UnknownEntryError('entries', name)

    @property
    def platforms(self):
        return list(self._entries['platforms'].values())

    @property
    def sensors(self):
        return list(self._entries['sensors'].values())

    @property
    def payloads(self):
        return list(self._entries['payloads'].values())

    @property
    def survey_systems(self):
        return list(self._entries['survey_systems'].values())

    def __eq__(self, other):
        if not isinstance(other, Catalog):
            return NotImplemented
        return all(list(self._entries[s].items()) ==
                   list(other._entries[s].items()) for s in self.sections)

    def __repr__(self):
        return '<Catalog {}>'.format(', '.join(
            '{} {}'.format(len(self._entries[s]), s) for s in self.sections))


# -- document schemas. Each call returns a fresh tree; fields hold parse state.


def platform_schema():
    return (NameField('name', required=True) &
            NumberField('v_max', source='v_max_mps', required=True) &
            DegreesField('omega_max', source='omega_max_dps', required=True) &
            NumberField('d', source='d_m', required=True) &
            NumberField('b', source='b_m', required=True))


def sensor_schema(kind):
    schema = (NameField('name', required=True) &
              ChoiceField('kind', KINDS, required=True))
    if kind == POSITION:
        return schema & NumberField('sigma_p', source='sigma_p_m',
                                    required=True)
    if kind == ATTITUDE:
        return schema & VectorField('sigma_rpy', source='sigma_rpy_deg',
                                    element=DegreesField('sigma'),
                                    required=True)
    return (schema &
            NumberField('sigma_r', source='sigma_r_m', required=True) &
            DegreesField('sigma_az', source='sigma_az_deg', required=True) &
            DegreesField('sigma_el', source='sigma_el_deg', required=True))


def payload_schema():
    return (NameField('name', required=True) &
            NameField('position_sensor', source='gnss') &
            NameField('attitude_sensor', source='ins') &
            NameField('range_bearing_sensor', source='range_bearing') &
            LeversField('levers', ROLES))


SURVEY_LEVER_ROLES = ('gnss', 'usbl', 'transponder', 'mbe')


def survey_schema():
    return (NameField('name', required=True) &
            ReferenceField('sv', required=True) &
            ReferenceField('auv', required=True) &
            Optional(
                NumberField('d_sv', source='d_sv_m', required=True),
                NumberField('d_auv', source='d_auv_m', required=True)) &
            NameField('gnss') &
            NameField('ins_sv', required=True) &
            NameField('usbl', required=True) &
            NameField('ins_auv', required=True) &
            NameField('mbe', required=True) &
            LeversField('levers', SURVEY_LEVER_ROLES))


class _Loader(object):
    """
    Reads one catalog document section by section, collecting errors rather
    than stopping at the first.
    """

    def __init__(self, base):
        self.schema_errors = {}
        self.errors = {}
        self.platforms = OrderedDict(
            (normalize_name(p.name), p) for p in base.platforms)
        self.sensors = OrderedDict(
            (normalize_name(s.name), s) for s in base.sensors)
        self.payloads = OrderedDict(
            (normalize_name(p.name), p) for p in base.payloads)
        self.systems = OrderedDict(
            (normalize_name(s.name), s) for s in base.survey_systems)

    def entries(self, document, section):
        entries = document.get(section, [])
        if not isinstance(entries, list):
            self.schema_errors[section] = ['Expected a list']
            return []
        return entries

    def parse(self, schema, obj, prefix):
        schema.parse(obj, prefix)
        if not schema.valid:
            self.schema_errors.update(schema.errors)
            return None
        return schema.dict

    def build(self, klass, values, schema, prefix):
        try:
            return klass(**values)
        except ValidationError as ex:
            key = prefix + (schema.source_for(ex.field) if ex.field else
                            '__all__')
            self.errors.setdefault(key, []).extend(ex.messages)
            return None

    def lookup(self, table, name, path, kind=None):
        entry = table.get(normalize_name(name))
        if entry is None:
            self.errors.setdefault(path, []).append(
                'No entry named {!r}'.format(name))
        elif kind is not None and entry.kind != kind:
            self.errors.setdefault(path, []).append(
                '{} is a {} sensor, expected {}'.format(
                    entry.name, entry.kind, kind))
            return None
        return entry

    def load_platforms(self, document):
        for i, obj in enumerate(self.entries(document, 'platforms')):
            prefix = 'platforms[{}].'.format(i)
            schema = platform_schema()
            values = self.parse(schema, obj, prefix)
            if values is not None:
                platform = self.build(PlatformSpec, values, schema, prefix)
                if platform is not None:
                    self.platforms[normalize_name(platform.name)] = platform

    def load_sensors(self, document):
        for i, obj in enumerate(self.entries(document, 'sensors')):
            prefix = 'sensors[{}].'.format(i)
            kind = obj.get('kind') if isinstance(obj, dict) else None
            schema = sensor_schema(kind if kind in KINDS else RANGE_BEARING)
            values = self.parse(schema, obj, prefix)
            if values is not None:
                sensor = self.build(SensorSpec, values, schema, prefix)
                if sensor is not None:
                    self.sensors[normalize_name(sensor.name)] = sensor

    def load_payloads(self, document):
        for i, obj in enumerate(self.entries(document, 'payloads')):
            prefix = 'payloads[{}].'.format(i)
            schema = payload_schema()
            values = self.parse(schema, obj, prefix)
            if values is None:
                continue
            for role, attribute in zip(ROLES, Payload._sensor_attributes()):
                if attribute in values:
                    path = prefix + schema.source_for(attribute)
                    values[attribute] = self.lookup(
                        self.sensors, values[attribute], path, role)
                    if values[attribute] is None:
                        values = None
                        break
            if values is not None:
                payload = self.build(Payload, values, schema, prefix)
                if payload is not None:
                    self.payloads[normalize_name(payload.name)] = payload

    def resolve_platform(self, reference, path):
        if isinstance(reference, str):
            return self.lookup(self.platforms, reference, path)
        schema = platform_schema()
        values = self.parse(schema, reference, path + '.')
        if values is None:
            return None
        return self.build(PlatformSpec, values, schema, path + '.')

    def load_survey_systems(self, document):
        for i, obj in enumerate(self.entries(document, 'survey_systems')):
            prefix = 'survey_systems[{}].'.format(i)
            schema = survey_schema()
            values = self.parse(schema, obj, prefix)
            if values is None:
                continue
            sv = self.resolve_platform(values['sv'], prefix + 'sv')
            auv = self.resolve_platform(values['auv'], prefix + 'auv')
            sensors = {}
            for channel, kind in (('gnss', POSITION), ('ins_sv', ATTITUDE),
                                  ('usbl', RANGE_BEARING),
                                  ('ins_auv', ATTITUDE),
                                  ('mbe', RANGE_BEARING)):
                if channel in values:
                    sensors[channel] = self.lookup(
                        self.sensors, values[channel], prefix + channel, kind)
            if sv is None or auv is None or None in sensors.values():
                continue
            levers = values.get('levers', {})
            name = values['name']
            sv_levers = {}
            auv_levers = {}
            if 'gnss' in levers:
                sv_levers[POSITION] = levers['gnss']
            if 'usbl' in levers:
                sv_levers[RANGE_BEARING] = levers['usbl']
            if 'transponder' in levers:
                auv_levers[POSITION] = levers['transponder']
            if 'mbe' in levers:
                auv_levers[RANGE_BEARING] = levers['mbe']
            sv_payload = Payload(name + ' SV',
                                 position_sensor=sensors.get('gnss'),
                                 attitude_sensor=sensors['ins_sv'],
                                 range_bearing_sensor=sensors['usbl'],
                                 levers=sv_levers)
            auv_payload = Payload(name + ' AUV',
                                  attitude_sensor=sensors['ins_auv'],
                                  range_bearing_sensor=sensors['mbe'],
                                  levers=auv_levers)
            system_values = dict(name=name, sv=sv, auv=auv,
                                 sv_payload=sv_payload,
                                 auv_payload=auv_payload)
            for key in ('d_sv', 'd_auv'):
                if key in values:
                    system_values[key] = values[key]
            system = self.build(SurveySystem, system_values, schema, prefix)
            if system is not None:
                self.systems[normalize_name(system.name)] = system


TOP_LEVEL_KEYS = ('platforms', 'sensors', 'payloads', 'survey_systems')


def load_catalog(document=None, base=None):
    """
    Build a Catalog from ``document`` merged over ``base`` (the built-in
    registry by default). ``document`` is JSON text or the equivalent parsed
    object; None or an empty document gives the base registry.

    Entries whose names match a base entry replace it. Raises SchemaError
    when the document is malformed and CatalogValidationError when an entry
    breaks an invariant; both carry ``errors`` keyed by document path.
    """
    if base is None:
        base = Catalog.builtin()
    if document is None or (isinstance(document, str) and
                            not document.strip()):
        document = {}
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except ValueError as ex:
            raise SchemaError({'$': ['Invalid JSON: {}'.format(ex)]})
    if not isinstance(document, dict):
        raise SchemaError({'$': ['Expected a JSON object']})

    loader = _Loader(base)
    for key in document:
        if key not in TOP_LEVEL_KEYS:
            loader.schema_errors[key] = ['Unknown key']
    loader.load_platforms(document)
    loader.load_sensors(document)
    if loader.schema_errors:
        raise SchemaError(loader.schema_errors)
    loader.load_payloads(document)
    loader.load_survey_systems(document)
    if loader.schema_errors:
        raise SchemaError(loader.schema_errors)
    if loader.errors:
        raise CatalogValidationError(loader.errors)

    return Catalog(loader.platforms.values(), loader.sensors.values(),
                   loader.payloads.values(), loader.systems.values())


def load_catalog_file(path, base=None):
    with open(path) as f:
        catalog = load_catalog(f.read(), base=base)
    logger.info('Loaded catalog %s: %r', path, catalog)
    return catalog


# -- serialisation


def _degrees(value):
    return math.degrees(value)


def dump_platform(platform):
    return OrderedDict([
        ('name', platform.name),
        ('v_max_mps', platform.v_max),
        ('omega_max_dps', _degrees(platform.omega_max)),
        ('d_m', platform.d),
        ('b_m', platform.b),
    ])


def dump_sensor(sensor):
    obj = OrderedDict([('name', sensor.name), ('kind', sensor.kind)])
    if sensor.kind == POSITION:
        obj['sigma_p_m'] = sensor.sigma_p
    elif sensor.kind == ATTITUDE:
        obj['sigma_rpy_deg'] = [_degrees(s) for s in sensor.sigma_rpy]
    else:
        obj['sigma_r_m'] = sensor.sigma_r
        obj['sigma_az_deg'] = _degrees(sensor.sigma_az)
        obj['sigma_el_deg'] = _degrees(sensor.sigma_el)
    return obj


def dump_payload(payload):
    obj = OrderedDict([('name', payload.name)])
    for key, sensor in zip(('gnss', 'ins', 'range_bearing'), payload.sensors):
        if not sensor.is_null:
            obj[key] = sensor.name
    if payload.levers:
        obj['levers'] = OrderedDict(
            (role, list(arm)) for role, arm in sorted(payload.levers.items()))
    return obj


def dump_survey_system(system):
    obj = OrderedDict([
        ('name', system.name),
        ('sv', dump_platform(system.sv)),
        ('auv', dump_platform(system.auv)),
        ('d_sv_m', system.d_sv),
        ('d_auv_m', system.d_auv),
    ])
    for channel, sensor in system.sensors.items():
        if not sensor.is_null:
            obj[channel] = sensor.name
    levers = OrderedDict()
    for key, payload, role in (('gnss', system.sv_payload, POSITION),
                               ('usbl', system.sv_payload, RANGE_BEARING),
                               ('transponder', system.auv_payload, POSITION),
                               ('mbe', system.auv_payload, RANGE_BEARING)):
        if role in payload.levers:
            levers[key] = list(payload.levers[role])
    if levers:
        obj['levers'] = levers
    return obj


def dump_catalog(catalog):
    """
    A JSON-compatible dictionary which ``load_catalog`` turns back into an
    equal Catalog.
    """
    return OrderedDict([
        ('platforms', [dump_platform(p) for p in catalog.platforms]),
        ('sensors', [dump_sensor(s) for s in catalog.sensors]),
        ('payloads', [dump_payload(p) for p in catalog.payloads]),
        ('survey_systems', [dump_survey_system(s)
                            for s in catalog.survey_systems]),
    ])
