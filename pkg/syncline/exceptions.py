# -*- coding: utf8 -*-


class SynclineError(ValueError):
    """
    Base class for every error raised deliberately by this package. It is a
    ValueError so callers may catch broadly.
    """


class DomainError(SynclineError):
    """
    A mathematical pre-condition was violated: non-finite input, a zero
    vector where a direction is needed, a small-angle model pushed past its
    range, an empty or reversed sampling range.
    """


class ValidationError(SynclineError):
    """
    Raised by ``Field.clean()`` and by the catalog entry constructors.

    ``messages`` is a list of human-readable strings. ``field`` optionally
    names the attribute (not the JSON key) which failed, so that the catalog
    loader can translate it back into the offending document path.
    """

    def __init__(self, messages, field=None):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        self.field = field
        super(ValidationError, self).__init__('; '.join(self.messages))


class CatalogError(SynclineError):
    """
    A catalog document could not be turned into a registry. ``errors`` is a
    dictionary of lists of messages, keyed by document path such as
    ``sensors[0].sigma_p_m``.
    """

    def __init__(self, errors):
        self.errors = dict(errors)
        lines = []
        for path in sorted(self.errors):
            for message in self.errors[path]:
                lines.append('{}: {}'.format(path, message))
        super(CatalogError, self).__init__('\n'.join(lines))


class SchemaError(CatalogError):
    """
    The document does not have the expected shape: unknown or missing keys,
    values of the wrong type, malformed JSON.
    """


class CatalogValidationError(CatalogError):
    """
    The document is well-formed but an entry breaks an invariant, e.g. a
    negative sigma or a reference to a sensor of the wrong kind.
    """


class UnknownEntryError(CatalogError, KeyError):
    """
    A registry lookup named an entry that does not exist.
    """

    singular = {
        'platforms': 'platform',
        'sensors': 'sensor',
        'payloads': 'payload',
        'survey_systems': 'survey system',
        'entries': 'entry',
    }

    def __init__(self, section, name):
        self.section = section
        self.name = name
        super(UnknownEntryError, self).__init__(
            {section: ['No entry named {!r}'.format(name)]})

    def __str__(self):
        kind = self.singular.get(self.section, self.section)
        return "No {} named {!r}".format(kind, self.name)
