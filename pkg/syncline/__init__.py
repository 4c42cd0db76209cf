# -*- coding: utf8 -*-

import logging

from syncline.catalog import (Catalog, Payload, PlatformSpec, SensorSpec,
                              SurveySystem, load_catalog, load_catalog_file)
from syncline.exceptions import (CatalogError, CatalogValidationError,
                                 DomainError, SchemaError, SynclineError,
                                 UnknownEntryError, ValidationError)
from syncline.model import (ErrorBudget, SynclineCurve, payload_budget,
                            per_sensor_tau_crit, per_sensor_tau_crit_survey,
                            sample_curve, survey_budget, syncline, tau_crit)

__version__ = '0.1.0'

__all__ = [
    'Catalog', 'CatalogError', 'CatalogValidationError', 'DomainError',
    'ErrorBudget', 'Payload', 'PlatformSpec', 'SchemaError', 'SensorSpec',
    'SurveySystem', 'SynclineCurve', 'SynclineError', 'UnknownEntryError',
    'ValidationError', 'load_catalog', 'load_catalog_file', 'payload_budget',
    'per_sensor_tau_crit', 'per_sensor_tau_crit_survey', 'sample_curve',
    'survey_budget', 'syncline', 'tau_crit',
]

logging.getLogger(__name__).addHandler(logging.NullHandler())
