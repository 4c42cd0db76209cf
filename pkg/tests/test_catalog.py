# -*- coding: utf8 -*-

import json
import math
import os
import tempfile
from unittest import TestCase

from hypothesis import given
from syncline.catalog import (ATTITUDE, POSITION, RANGE_BEARING, Catalog,
                              Payload, PlatformSpec, SensorSpec,
                              attitude_sigma_effective,
                              bearing_sigma_effective, dump_catalog,
                              load_catalog, load_catalog_file, normalize_name,
                              null_sensor, position_sigma_effective)
from syncline.exceptions import (CatalogValidationError, SchemaError,
                                 UnknownEntryError, ValidationError)
from tests.util import finite, thorough


def close(a, b, rel=1e-4):
    return math.isclose(a, b, rel_tol=rel)


class BuiltinTests(TestCase):

    def setUp(self):
        self.catalog = Catalog.builtin()

    def test_sizes(self):
        assert len(self.catalog.platforms) == 7
        assert len(self.catalog.sensors) == 15
        assert len(self.catalog.payloads) >= 1
        assert len(self.catalog.survey_systems) >= 2

    def test_platform_values_are_si(self):
        car = self.catalog.platform('Car')
        assert car.v_max == 30.0
        assert abs(car.omega_max - math.radians(17.3)) < 1e-15
        assert car.d == 50.0
        assert car.b == 3.0
        assert close(car.delta_sync_rate, 45.0971)

    def test_sensor_values_are_si(self):
        mru5 = self.catalog.sensor('MRU5')
        assert mru5.kind == ATTITUDE
        assert mru5.sigma_rpy == (math.radians(0.002), ) * 3
        assert mru5.sigma_p is None

        m3 = self.catalog.sensor('M3 Sonar')
        assert m3.kind == RANGE_BEARING
        assert m3.sigma_r == 0.01
        assert abs(m3.sigma_az - math.radians(0.9)) < 1e-15

    def test_lookup_is_forgiving(self):
        fixed_wing = self.catalog.platform('Fixed Wing')
        assert self.catalog.platform('fixed-wing') is fixed_wing
        assert self.catalog.platform('FIXEDWING') is fixed_wing
        assert self.catalog.sensor('vux1 uav').name == 'VUX1-UAV'
        mbe = self.catalog.sensor('Sonic 2026 MBE')
        assert self.catalog.sensor('sonic-2026-mbe') is mbe
        large = self.catalog.survey_system('Large SV')
        assert large.auv_payload.range_bearing_sensor == mbe

    def test_normalize_name(self):
        assert normalize_name('Multi Rotor') == 'multirotor'
        assert normalize_name('F9P-RTK') == 'f9prtk'

    def test_unknown_names(self):
        with self.assertRaises(UnknownEntryError) as ctx:
            self.catalog.sensor('Sextant')
        assert isinstance(ctx.exception, KeyError)
        assert str(ctx.exception) == "No sensor named 'Sextant'"

        with self.assertRaises(UnknownEntryError):
            self.catalog.platform('MRU5')

    def test_find_searches_every_section(self):
        assert self.catalog.find('MRU5').kind == ATTITUDE
        assert self.catalog.find('Car').v_max == 30.0
        assert self.catalog.find('Small SV').d == 1000.0
        with self.assertRaises(UnknownEntryError) as ctx:
            self.catalog.find('Sextant')
        assert str(ctx.exception) == "No entry named 'Sextant'"

    def test_survey_systems(self):
        system = self.catalog.survey_system('Large SV')
        assert system.d_sv == 1000.0
        assert system.d_auv == 30.0
        assert system.auv.v_max == 2.078
        assert system.sv_payload.position_sensor.name == 'R12 RTK'
        assert system.auv_payload.position_sensor.is_null
        assert system.auv_payload.position_sensor.sigma_p == 0.0
        assert list(system.sensors) == ['gnss', 'ins_sv', 'usbl', 'ins_auv',
                                        'mbe']

    def test_role_of(self):
        system = self.catalog.survey_system('Large SV + HIPAP502')
        assert system.role_of(self.catalog.sensor('HIPAP502')) == 'sv'
        assert system.role_of(self.catalog.sensor('Sonic 2026 MBE')) == 'auv'
        with self.assertRaises(ValueError):
            system.role_of(self.catalog.sensor('M3 Sonar'))

    def test_catalog_equality(self):
        assert Catalog.builtin() == Catalog.builtin()
        assert Catalog.builtin() != Catalog()
        assert 'platforms' in repr(self.catalog)


class EffectiveSigmaTests(TestCase):

    def setUp(self):
        self.catalog = Catalog.builtin()

    def test_position(self):
        f9p = self.catalog.sensor('F9P PVT')
        assert close(position_sigma_effective(f9p), 2.598)
        r12 = self.catalog.sensor('R12 RTK')
        assert close(position_sigma_effective(r12), 0.013856)

    def test_attitude(self):
        assert close(attitude_sigma_effective(self.catalog.sensor('MRU5')),
                     6.046e-5)
        assert close(attitude_sigma_effective(self.catalog.sensor('Ellipse')),
                     4.2752e-3)

    def test_bearing(self):
        assert close(
            bearing_sigma_effective(self.catalog.sensor('Alpha Prime')),
            3.903e-3)
        assert close(bearing_sigma_effective(self.catalog.sensor('M3 Sonar')),
                     1.7969e-2)
        assert close(bearing_sigma_effective(self.catalog.sensor('VUX1-UAV')),
                     1.48096e-4)

    def test_wrong_kind(self):
        with self.assertRaises(ValueError):
            position_sigma_effective(self.catalog.sensor('MRU5'))
        with self.assertRaises(ValueError):
            attitude_sigma_effective(self.catalog.sensor('HIPAP502'))
        with self.assertRaises(ValueError):
            bearing_sigma_effective(self.catalog.sensor('F9P RTK'))

    def test_null_sensors_are_zero(self):
        assert position_sigma_effective(null_sensor(POSITION)) == 0
        assert attitude_sigma_effective(null_sensor(ATTITUDE)) == 0
        assert bearing_sigma_effective(null_sensor(RANGE_BEARING)) == 0

    @thorough
    @given(finite(0.0, 100.0))
    def test_effective_sigmas_scale_linearly(self, k):
        for sensor, effective in (
                (self.catalog.sensor('F9P PVT'), position_sigma_effective),
                (self.catalog.sensor('Ellipse'), attitude_sigma_effective),
                (self.catalog.sensor('M3 Sonar'), bearing_sigma_effective)):
            scaled = effective(sensor.scaled(k))
            assert math.isclose(scaled, k * effective(sensor),
                                rel_tol=1e-12, abs_tol=1e-300)

    def test_tiny_sigmas_do_not_underflow(self):
        ellipse = self.catalog.sensor('Ellipse')
        tiny = attitude_sigma_effective(ellipse.scaled(1e-160))
        assert math.isclose(tiny, 1e-160 * attitude_sigma_effective(ellipse),
                            rel_tol=1e-12)
        assert close(tiny, 4.275e-163)


class EntryValidationTests(TestCase):

    def test_negative_sigma(self):
        with self.assertRaises(ValidationError) as ctx:
            SensorSpec('bad', POSITION, sigma_p=-1.0)
        assert ctx.exception.field == 'sigma_p'

    def test_missing_and_extra_attributes(self):
        with self.assertRaises(ValidationError) as ctx:
            SensorSpec('bad', RANGE_BEARING, sigma_r=1.0, sigma_az=0.1)
        assert ctx.exception.field == 'sigma_el'

        with self.assertRaises(ValidationError) as ctx:
            SensorSpec('bad', POSITION, sigma_p=1.0, sigma_r=1.0)
        assert ctx.exception.field == 'sigma_r'

    def test_unknown_kind(self):
        with self.assertRaises(ValidationError):
            SensorSpec('bad', 'sonar', sigma_p=1.0)

    def test_platform_needs_positive_range(self):
        with self.assertRaises(ValidationError) as ctx:
            PlatformSpec('bad', 1.0, 0.1, 0.0, 1.0)
        assert ctx.exception.field == 'd'
        with self.assertRaises(ValidationError):
            PlatformSpec('bad', -1.0, 0.1, 10.0, 1.0)

    def test_payload_kind_mismatch(self):
        mru5 = Catalog.builtin().sensor('MRU5')
        with self.assertRaises(ValidationError) as ctx:
            Payload('bad', position_sensor=mru5)
        assert ctx.exception.field == 'position_sensor'

    def test_payload_levers(self):
        catalog = Catalog.builtin()
        payload = catalog.payload('F9P RTK + MRU5 + VUX1')
        multi_rotor = catalog.platform('Multi Rotor')
        assert payload.lever(POSITION).tolist() == [0.0, 0.0, 0.0]

        placed = payload.with_default_levers(multi_rotor)
        assert placed.lever(POSITION).tolist() == [0.0, 0.0, -0.25]
        assert placed.lever(RANGE_BEARING).tolist() == [0.0, 0.0, 0.25]
        placed.check_levers(multi_rotor)

        too_long = Payload('long', levers={POSITION: (0.0, 1.0, 0.0)})
        with self.assertRaises(ValidationError):
            too_long.check_levers(multi_rotor)

    def test_payload_unknown_lever_role(self):
        with self.assertRaises(ValidationError):
            Payload('bad', levers={'mast': (0, 0, 1)})


class LoadCatalogTests(TestCase):

    def test_empty_documents_give_builtins(self):
        for document in (None, '', '{}', {}):
            catalog = load_catalog(document)
            assert len(catalog.platforms) == 7
            assert len(catalog.sensors) == 15
            assert catalog == Catalog.builtin()

    def test_override_platform(self):
        catalog = load_catalog({'platforms': [{
            'name': 'Car', 'v_max_mps': 20, 'omega_max_dps': 17.3,
            'd_m': 50, 'b_m': 3}]})
        assert catalog.platform('Car').v_max == 20.0
        assert len(catalog.platforms) == 7

    def test_add_sensor_and_payload(self):
        catalog = load_catalog(json.dumps({
            'sensors': [{'name': 'Sextant', 'kind': 'attitude',
                         'sigma_rpy_deg': [1, 1, 1]}],
            'payloads': [{'name': 'Old School', 'gnss': 'F9P PVT',
                          'ins': 'sextant',
                          'levers': {'position': [0, 0, -1]}}]}))
        payload = catalog.payload('Old School')
        assert payload.attitude_sensor.name == 'Sextant'
        assert payload.range_bearing_sensor.is_null
        assert payload.lever(POSITION).tolist() == [0.0, 0.0, -1.0]
        assert close(attitude_sigma_effective(payload.attitude_sensor),
                     math.radians(math.sqrt(3)))

    def test_negative_sigma_is_located(self):
        with self.assertRaises(CatalogValidationError) as ctx:
            load_catalog({'sensors': [{'name': 'Bad', 'kind': 'position',
                                       'sigma_p_m': -1}]})
        assert any('sensors[0].sigma_p' in key
                   for key in ctx.exception.errors)
        assert 'sensors[0].sigma_p' in str(ctx.exception)

    def test_unknown_keys(self):
        with self.assertRaises(SchemaError) as ctx:
            load_catalog({'sensors': [{'name': 'Bad', 'kind': 'position',
                                       'sigma_p_m': 1, 'sigma_r_m': 1}]})
        assert 'sensors[0].sigma_r_m' in ctx.exception.errors

        with self.assertRaises(SchemaError) as ctx:
            load_catalog({'robots': []})
        assert 'robots' in ctx.exception.errors

    def test_missing_keys(self):
        with self.assertRaises(SchemaError) as ctx:
            load_catalog({'platforms': [{'name': 'Boat', 'v_max_mps': 1}]})
        errors = ctx.exception.errors
        assert 'platforms[0].omega_max_dps' in errors
        assert 'platforms[0].d_m' in errors
        assert 'platforms[0].b_m' in errors

    def test_wrong_types(self):
        with self.assertRaises(SchemaError) as ctx:
            load_catalog({'platforms': {'name': 'Boat'}})
        assert 'platforms' in ctx.exception.errors

        with self.assertRaises(SchemaError) as ctx:
            load_catalog({'platforms': [{'name': 'Boat', 'v_max_mps': 'fast',
                                         'omega_max_dps': 1, 'd_m': 1,
                                         'b_m': 1}]})
        assert 'platforms[0].v_max_mps' in ctx.exception.errors

    def test_malformed_json(self):
        with self.assertRaises(SchemaError) as ctx:
            load_catalog('{"platforms": [')
        assert '$' in ctx.exception.errors

        with self.assertRaises(SchemaError):
            load_catalog('[1, 2]')

    def test_unknown_reference(self):
        with self.assertRaises(CatalogValidationError) as ctx:
            load_catalog({'payloads': [{'name': 'P', 'gnss': 'Sextant'}]})
        assert 'payloads[0].gnss' in ctx.exception.errors

    def test_reference_of_wrong_kind(self):
        with self.assertRaises(CatalogValidationError) as ctx:
            load_catalog({'payloads': [{'name': 'P', 'gnss': 'MRU5'}]})
        assert 'payloads[0].gnss' in ctx.exception.errors

    def test_survey_system(self):
        catalog = load_catalog({'survey_systems': [{
            'name': 'Harbour',
            'sv': {'name': 'Launch', 'v_max_mps': 3, 'omega_max_dps': 10,
                   'd_m': 300, 'b_m': 4},
            'auv': 'AUV (table)',
            'd_sv_m': 300, 'd_auv_m': 10,
            'gnss': 'F9P RTK', 'ins_sv': 'Ellipse', 'usbl': 'USBL7000',
            'ins_auv': 'MRU5', 'mbe': 'M3 Sonar',
            'levers': {'usbl': [0, 0, 1.5]}}]})
        system = catalog.survey_system('harbour')
        assert system.sv.name == 'Launch'
        assert system.auv.v_max == 30.0
        assert system.d_sv == 300.0
        assert system.d_auv == 10.0
        assert system.sv_payload.lever(RANGE_BEARING).tolist() == [0, 0, 1.5]
        assert system.auv_payload.position_sensor.is_null

    def test_survey_distances_come_in_pairs(self):
        document = {'survey_systems': [{
            'name': 'Half', 'sv': 'Small SV', 'auv': 'AUV (table)',
            'd_sv_m': 500, 'ins_sv': 'MRU5', 'usbl': 'USBL7000',
            'ins_auv': 'MRU5', 'mbe': 'Sonic 2026 MBE'}]}
        with self.assertRaises(SchemaError) as ctx:
            load_catalog(document)
        assert 'survey_systems[0].__all__' in ctx.exception.errors

        del document['survey_systems'][0]['d_sv_m']
        system = load_catalog(document).survey_system('Half')
        assert system.d_sv == 1000.0
        assert system.d_auv == 30.0

    def test_errors_are_collected(self):
        with self.assertRaises(SchemaError) as ctx:
            load_catalog({'platforms': [{'name': 'A'}, {'name': 'B'}]})
        paths = ctx.exception.errors
        assert any(p.startswith('platforms[0].') for p in paths)
        assert any(p.startswith('platforms[1].') for p in paths)

    def test_base_can_be_empty(self):
        catalog = load_catalog({'platforms': [{
            'name': 'Boat', 'v_max_mps': 1, 'omega_max_dps': 1, 'd_m': 1,
            'b_m': 1}]}, base=Catalog())
        assert len(catalog.platforms) == 1
        assert catalog.sensors == []

    def test_load_file(self):
        fd, path = tempfile.mkstemp(suffix='.json')
        try:
            with os.fdopen(fd, 'w') as f:
                json.dump({'sensors': [{'name': 'GPS', 'kind': 'position',
                                        'sigma_p_m': 3}]}, f)
            catalog = load_catalog_file(path)
            assert catalog.sensor('GPS').sigma_p == 3.0
        finally:
            os.remove(path)


class DumpCatalogTests(TestCase):

    def test_builtin_round_trip(self):
        builtin = Catalog.builtin()
        document = json.dumps(dump_catalog(builtin))
        assert load_catalog(document, base=Catalog()) == builtin
        assert load_catalog(document) == builtin

    def test_levers_round_trip(self):
        catalog = load_catalog({'payloads': [{
            'name': 'Levered', 'gnss': 'F9P RTK',
            'levers': {'position': [0.1, 0.2, -0.3]}}]})
        again = load_catalog(json.dumps(dump_catalog(catalog)))
        assert again.payload('Levered') == catalog.payload('Levered')

    def test_dump_uses_degrees(self):
        dumped = dump_catalog(Catalog.builtin())
        car = [p for p in dumped['platforms'] if p['name'] == 'Car'][0]
        assert abs(car['omega_max_dps'] - 17.3) < 1e-12
