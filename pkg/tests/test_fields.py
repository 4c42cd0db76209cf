# -*- coding: utf8 -*-

import math
from unittest import TestCase

from syncline.exceptions import ValidationError
from syncline.fields import (ChoiceField, DegreesField, Field, LeversField,
                             NameField, NumberField, Optional, ReferenceField,
                             VectorField, is_listlike)
from tests.util import NopeField


class FieldTests(TestCase):

    def test_kwargless_simple_instantiation(self):
        f = Field('fieldname')
        assert f.source == 'fieldname'
        assert f.dest == 'fieldname'

    def test_kwarg_instantiation(self):
        f = Field(dest='fieldname')
        assert f.source == 'fieldname'
        assert f.dest == 'fieldname'

        f = Field(source='sourcename', dest='fieldname')
        assert f.source == 'sourcename'
        assert f.dest == 'fieldname'

    def test_parse_reads_source_into_dest(self):
        f = Field('v_max', source='v_max_mps')
        f.parse({'v_max_mps': 3})
        assert f.dict == {'v_max': 3}
        assert f.valid

    def test_required_field_missing(self):
        f = Field('v_max', source='v_max_mps', required=True)
        f.parse({})
        assert not f.valid
        assert f.missing
        assert 'v_max_mps' in f.errors

    def test_later_parse_clears_missing(self):
        f = Field('name', required=True)
        f.parse({})
        assert f.missing
        f.parse({'name': 'Car'})
        assert not f.missing
        assert f.valid

    def test_error_keys_carry_prefix(self):
        f = NumberField('d', source='d_m')
        f.parse({'d_m': 'far'}, prefix='platforms[2].')
        assert f.path == 'platforms[2].d_m'
        assert 'platforms[2].d_m' in f.errors

    def test_attributes_need_parse_first(self):
        f = Field('fieldname')
        with self.assertRaises(ValueError):
            f.dict
        with self.assertRaises(ValueError):
            f.valid
        with self.assertRaises(ValueError):
            f.errors

    def test_is_listlike(self):
        assert is_listlike([1, 2])
        assert is_listlike((1, 2))
        assert not is_listlike('12')
        assert not is_listlike({'a': 1})
        assert not is_listlike(12)


class FieldTypeTests(TestCase):

    def test_namefield_strips(self):
        assert NameField('name').clean('  Car ') == 'Car'

    def test_namefield_refuses_blank_and_nonstrings(self):
        for value in ('', '   ', 3, None):
            with self.assertRaises(ValidationError):
                NameField('name').clean(value)

    def test_choicefield_choices(self):
        f = ChoiceField('kind', choices=['position', 'attitude'])
        assert f.clean('position') == 'position'
        with self.assertRaises(ValidationError):
            f.clean('sonar')

    def test_numberfield(self):
        f = NumberField('v')
        assert f.clean(3) == 3.0
        assert isinstance(f.clean(3), float)
        for value in ('3', None, True, float('nan'), float('inf'), [1]):
            with self.assertRaises(ValidationError):
                f.clean(value)

    def test_degreesfield_converts_to_radians(self):
        f = DegreesField('omega')
        assert abs(f.clean(180) - math.pi) < 1e-15
        assert f.clean(0) == 0.0

    def test_vectorfield(self):
        f = VectorField('sigma')
        assert f.clean([1, 2, 3]) == (1.0, 2.0, 3.0)
        for value in ([1, 2], [1, 2, 3, 4], 'abc', 1, [1, 'b', 3]):
            with self.assertRaises(ValidationError):
                f.clean(value)

    def test_vectorfield_cleans_elements(self):
        f = VectorField('sigma', element=DegreesField('angle'))
        cleaned = f.clean([90, 0, -90])
        assert abs(cleaned[0] - math.pi / 2) < 1e-15
        assert abs(cleaned[2] + math.pi / 2) < 1e-15

    def test_referencefield(self):
        f = ReferenceField('sensor')
        assert f.clean(' MRU5 ') == 'MRU5'
        assert f.clean({'name': 'x'}) == {'name': 'x'}
        for value in ('', 3, None, [1]):
            with self.assertRaises(ValidationError):
                f.clean(value)

    def test_leversfield(self):
        f = LeversField('levers', roles=('position', 'attitude'))
        assert f.clean({'position': [0, 0, 1]}) == {
            'position': (0.0, 0.0, 1.0)}

    def test_leversfield_reports_every_problem(self):
        f = LeversField('levers', roles=('position', ))
        with self.assertRaises(ValidationError) as ctx:
            f.clean({'position': [0, 0], 'mbe': [0, 0, 0]})
        assert len(ctx.exception.messages) == 2


class SchemaTests(TestCase):

    def setUp(self):
        self.schema = (NameField('name', required=True) &
                       NumberField('v_max', source='v_max_mps',
                                   required=True) &
                       DegreesField('omega_max', source='omega_max_dps'))

    def test_parse_whole_object(self):
        self.schema.parse({'name': 'Car', 'v_max_mps': 30,
                           'omega_max_dps': 90})
        assert self.schema.valid
        values = self.schema.dict
        assert values['name'] == 'Car'
        assert values['v_max'] == 30.0
        assert abs(values['omega_max'] - math.pi / 2) < 1e-15

    def test_unknown_keys_are_errors(self):
        self.schema.parse({'name': 'Car', 'v_max_mps': 30, 'speed': 3},
                          prefix='platforms[0].')
        assert not self.schema.valid
        assert self.schema.errors == {'platforms[0].speed': ['Unknown key']}

    def test_nonmapping_is_an_error(self):
        self.schema.parse([1, 2], prefix='platforms[1].')
        assert 'platforms[1]' in self.schema.errors

    def test_source_for(self):
        assert self.schema.source_for('v_max') == 'v_max_mps'
        assert self.schema.source_for('name') == 'name'
        assert self.schema.source_for('elsewhere') == 'elsewhere'


class DefaultValueTests(TestCase):

    def test_default_value_used_if_no_sourcedata_found(self):
        f = NumberField('d_sv', source='d_sv_m', default=1000.0)
        f.parse({})
        assert f.dict == {'d_sv': 1000.0}

    def test_default_ignored_if_sourcedata_found(self):
        f = NumberField('d_sv', source='d_sv_m', default=1000.0)
        f.parse({'d_sv_m': 500})
        assert f.dict == {'d_sv': 500.0}

    def test_default_can_be_none(self):
        f = Field('label', default=None)
        f.parse({})
        assert f.dict == {'label': None}

    def test_default_can_be_callable(self):
        f = Field('levers', default=dict)
        f.parse({})
        assert f.dict == {'levers': {}}

    def test_default_is_not_cleaned(self):
        f = NopeField('anything', default=3)
        f.parse({})
        assert f.valid
        assert f.dict == {'anything': 3}


class OptionalTests(TestCase):

    def setUp(self):
        self.fields = Optional(
            NumberField('d_sv', source='d_sv_m', required=True),
            NameField('label'),
            NumberField('d_auv', source='d_auv_m', required=True))
        self.unrelated = NameField('name') & NameField('sv')

    def test_no_values_present(self):
        self.fields.parse(dict())
        assert self.fields.valid

    def test_all_values_present(self):
        self.fields.parse(dict(d_sv_m=1000, label='pair', d_auv_m=30))
        assert self.fields.valid

    def test_only_required_values_present(self):
        self.fields.parse(dict(d_sv_m=1000, d_auv_m=30))
        assert self.fields.valid
        assert self.fields.dict == {'d_sv': 1000.0, 'd_auv': 30.0}

    def test_only_nonrequired_values_present(self):
        self.fields.parse(dict(label='pair'))
        assert not self.fields.valid
        assert 'd_sv_m' in self.fields.errors
        assert 'd_auv_m' in self.fields.errors
        assert '__all__' in self.fields.errors

    def test_one_required_field_missing(self):
        self.fields.parse(dict(d_sv_m=1000))
        assert not self.fields.valid
        assert 'd_auv_m' in self.fields.errors
        assert 'd_sv_m' not in self.fields.errors
        assert '__all__' in self.fields.errors

    def test_group_error_carries_prefix(self):
        self.fields.parse(dict(d_auv_m=30), prefix='survey_systems[0].')
        assert 'survey_systems[0].__all__' in self.fields.errors
        assert 'survey_systems[0].d_sv_m' in self.fields.errors

    def test_ANDed_with_unrelated(self):
        fields = self.fields & self.unrelated

        fields.parse(dict())
        assert fields.valid

        fields.parse(dict(d_sv_m=1000, d_auv_m=30))
        assert fields.valid

        fields.parse(dict(name='Large SV'))
        assert fields.valid

        fields.parse(dict(name='Large SV', sv='Large SV'))
        assert fields.valid

    def test_validation_errors_are_not_silenced(self):
        fields = Optional(
            NopeField('a', required=True),
            NopeField('b', required=True),
            NopeField('c'))
        fields.parse(dict(a=1, b=2, c=3))
        assert 'a' in fields.errors
        assert 'b' in fields.errors
        assert 'c' in fields.errors

        fields.parse(dict())
        assert not fields.errors
