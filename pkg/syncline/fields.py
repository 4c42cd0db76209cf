# -*- coding: utf8 -*-

"""
Fields read one key out of a JSON object, clean it and report problems keyed
by document path. They combine with ``&`` into a FieldTree which parses a
whole object at once and also notices keys nobody asked for.

    schema = (NameField('name', required=True) &
              NumberField('v_max', source='v_max_mps', required=True))
    schema.parse(obj, prefix='platforms[0].')
    if schema.valid:
        spec = PlatformSpec(**schema.dict)
    else:
        print(schema.errors)
"""

import math
from collections.abc import Iterable, Mapping
from functools import reduce
from numbers import Real
from operator import and_

from syncline.exceptions import ValidationError
from syncline.tree import Leaf, Tree


def is_listlike(val):
    """
    True if `val` is an iterable (list, tuple, ...) but not a string or a
    mapping
    """
    return (isinstance(val, Iterable) and
            not isinstance(val, (str, bytes, Mapping)))


class FieldTree(Tree):
    """
    FieldTree instances are the result of ANDing Field instances, or other
    FieldTree instances, together. Iterating over one yields its fields.
    """

    def __init__(self, *args, **kwargs):
        self._unknown = {}
        super(FieldTree, self).__init__(*args, **kwargs)

    @property
    def sources(self):
        return [f.source for f in self]

    @property
    def valid(self):
        """
        A boolean indicating whether all fields parsed successfully. Cannot be
        read before ``parse()`` has been called.
        """
        return not self.errors

    @property
    def errors(self):
        """
        A dictionary of errors met while parsing, keyed by document path.
        Each value is a list of messages. Cannot be read before ``parse()``
        has been called.
        """
        errors = dict(self.left.errors)
        errors.update(self.right.errors)
        errors.update(self._unknown)
        return errors

    @property
    def dict(self):
        """
        The cleaned values of every field that found one, keyed by ``dest``.
        """
        values = {}
        for field in self:
            values.update(field.dict)
        return values

    def parse(self, data, prefix=''):
        """
        Ask all fields to look through ``data``, which must be a mapping.
        Keys which no field reads are reported as errors.
        """
        self._unknown = {}
        if not isinstance(data, Mapping):
            for field in self:
                field.parse({}, prefix)
            self._unknown[prefix.rstrip('.') or '$'] = [
                'Expected an object, got {}'.format(type(data).__name__)]
            return
        for field in self:
            field.parse(data, prefix)
        known = set(self.sources)
        for key in data:
            if key not in known:
                self._unknown[prefix + str(key)] = ['Unknown key']

    def source_for(self, dest):
        """
        The document key which feeds attribute ``dest``.
        """
        for field in self:
            if field.dest == dest:
                return field.source
        return dest


class Optional(FieldTree):
    """
    Fields included underneath Optional have their required=True configuration
    ignored as long as all those fields are missing. If some but not all are
    present, then required=True is observed, and those fields that are missing
    become invalid.

    Survey distances come as a pair, for example. Give both or neither, and
    let the entry's defaults apply when neither is given:

        Optional(
            NumberField('d_sv', source='d_sv_m', required=True),
            NumberField('d_auv', source='d_auv_m', required=True))
    """

    tree_class = FieldTree

    def __init__(self, left, *rest):
        if not rest:
            raise ValueError("Optional has no effect on a single field")
        right = reduce(and_, rest)
        super(Optional, self).__init__(left, right)

    @property
    def errors(self):
        errors = super(Optional, self).errors
        fields = list(self)
        missing = [f.missing for f in fields if f.required]
        present = [f.dict for f in fields]

        # some fields have values, but not all required fields have values.
        if any(missing) and any(present) and not all(present):
            sources = sorted([f.source for f in fields])
            key = fields[0].prefix + '__all__'
            errors.setdefault(key, []).append(
                'If any of {} are provided, all must be '
                'provided'.format(', '.join(sources)))
        else:
            for f in fields:
                if f.required and f.missing:
                    errors.pop(f.path, None)

        return errors


class Field(Leaf):
    """
    A Field pulls one value out of a mapping by its ``source`` key, runs it
    through ``clean()`` and remembers the result under ``dest``.

    It can be ANDed together with other Field instances to build a schema.
    """

    #: Fields combine into FieldTree instances
    tree_class = FieldTree

    def __init__(self, dest, **kwargs):
        self.dest = dest
        self.source = kwargs.get('source', dest)
        self.required = kwargs.get('required', False)

        # None is a legitimate default, so use the absence or presence of
        # self.default to indicate whether a default should be used.
        if 'default' in kwargs:
            self.default = kwargs['default']

        self._values = {}
        self._errors = {}
        self.prefix = ''
        self.parsed = False
        self.missing = False

    @property
    def path(self):
        return self.prefix + self.source

    def parse(self, data, prefix=''):
        """
        Look through the provided mapping for this field's source key.

        Once this method has been called, the ``errors``, ``valid`` and
        ``dict`` attributes become usable.
        """
        self.prefix = prefix
        values = {}
        errors = {}

        if self.source in data:
            try:
                values[self.dest] = self.clean(data[self.source])
            except ValidationError as ex:
                errors[self.path] = ex.messages
        elif hasattr(self, 'default'):
            default = self.default
            values[self.dest] = default() if callable(default) else default

        if self.source not in data and self.required:
            self.missing = True
            errors.setdefault(self.path, []).append('This field is required')
        else:
            # this allows a later parse() to undo an earlier missing=True
            self.missing = False

        self.parsed = True
        self._values = values
        self._errors = errors

    def clean(self, value):
        """
        Validate and normalise ``value``. This implementation is a no-op;
        subclasses do more work here.
        """
        return value

    @property
    def dict(self):
        """
        A dictionary holding this field's cleaned value, or nothing if the
        value was absent. Cannot be read before ``parse()`` has been called.
        """
        if not self.parsed:
            raise ValueError(
                "Must call parse() on this field before "
                "accessing this attribute")
        return self._values

    @property
    def valid(self):
        if not self.parsed:
            raise ValueError(
                "Must call parse() on this field before checking validity")
        return not self._errors

    @property
    def errors(self):
        """
        A dictionary of errors (keyed by document path). Raises a ValueError
        if ``parse()`` has not been called.
        """
        if not self.parsed:
            raise ValueError(
                "Must call parse() on this field before reading errors")
        return self._errors


class NameField(Field):

    def clean(self, value):
        if not isinstance(value, str):
            raise ValidationError('Expected a string')
        value = value.strip()
        if not value:
            raise ValidationError('Must not be blank')
        return value


class ChoiceField(Field):

    def __init__(self, dest, choices, **kwargs):
        self.choices = tuple(choices)
        super(ChoiceField, self).__init__(dest, **kwargs)

    def clean(self, value):
        if value not in self.choices:
            raise ValidationError('Expected one of {}, got {!r}'.format(
                ', '.join(self.choices), value))
        return value


class NumberField(Field):
    """
    A finite real number. Booleans are refused even though Python counts
    them as integers.
    """

    def clean(self, value):
        if isinstance(value, bool) or not isinstance(value, Real):
            raise ValidationError('Expected a number, got {!r}'.format(value))
        value = float(value)
        if not math.isfinite(value):
            raise ValidationError('Expected a finite number')
        return value


class DegreesField(NumberField):
    """
    An angle or angular rate given in degrees and kept in radians.
    """

    def clean(self, value):
        return math.radians(super(DegreesField, self).clean(value))


class VectorField(Field):
    """
    A fixed-length list whose elements are cleaned by ``element``, another
    field instance.
    """

    def __init__(self, dest, element=None, length=3, **kwargs):
        self.element = element or NumberField('element')
        self.length = length
        super(VectorField, self).__init__(dest, **kwargs)

    def clean(self, value):
        if not is_listlike(value) or len(value) != self.length:
            raise ValidationError(
                'Expected a list of {} numbers'.format(self.length))
        return tuple(self.element.clean(v) for v in value)


class ReferenceField(Field):
    """
    Either the name of another catalog entry or an inline object describing
    it. Resolution happens later, once every section has been read.
    """

    def clean(self, value):
        if isinstance(value, str) and value.strip():
            return value.strip()
        if isinstance(value, Mapping):
            return dict(value)
        raise ValidationError('Expected a name or an object')


class LeversField(Field):
    """
    A mapping of sensor role to a body-frame lever arm in metres.
    """

    def __init__(self, dest, roles, **kwargs):
        self.roles = tuple(roles)
        self.vector = VectorField('lever')
        super(LeversField, self).__init__(dest, **kwargs)

    def clean(self, value):
        if not isinstance(value, Mapping):
            raise ValidationError('Expected an object of lever arms')
        levers = {}
        messages = []
        for role, arm in value.items():
            if role not in self.roles:
                messages.append('Unknown lever role {!r}'.format(role))
                continue
            try:
                levers[role] = self.vector.clean(arm)
            except ValidationError as ex:
                messages.extend('{}: {}'.format(role, m) for m in ex.messages)
        if messages:
            raise ValidationError(messages)
        return levers
