# -*- coding: utf8 -*-

"""
Tables and machine output for the command line.

Human output formats seconds with an SI prefix; CSV and JSON output carry raw
floats in base units, written with ``repr`` so that identical inputs give
identical bytes.
"""

import csv
import io
import json
import math
from collections import OrderedDict, namedtuple
from dataclasses import dataclass

from syncline.catalog import POSITION
from syncline.exceptions import ValidationError
from syncline.model import (per_sensor_tau_crit, per_sensor_tau_crit_survey,
                            tau_crit)

UNITS = ('s', 'ms', 'µs', 'm', '1/m', '1/s')

SI_PREFIXES = ((1.0, 's'), (1e-3, 'ms'), (1e-6, 'µs'), (1e-9, 'ns'),
               (1e-12, 'ps'))

#: Rows and columns of the two published tau_crit tables.
GEOREF_PLATFORMS = ('USV', 'Car', 'Multi Rotor', 'Fixed Wing')
GEOREF_SENSORS = ('F9P PVT', 'F9P RTK', 'Ellipse', 'MRU5', 'Alpha Prime',
                  'VUX1-UAV')
SURVEY_SYSTEMS = ('Large SV', 'Small SV')
SURVEY_SENSORS = ('F9P PVT', 'F9P RTK', 'Ellipse', 'MRU5', 'HIPAP502',
                  'USBL7000', 'Sonic 2026 MBE', 'M3 Sonar')

CURVE_HEADERS = ('tau_s', 'delta_m', 'sync_accuracy_per_s',
                 'est_accuracy_per_m')
SIMULATION_HEADERS = ('tau_s', 'worst_case_error_m', 'syncline_prediction_m',
                      'ratio')


def format_seconds(value, digits=4):
    """
    ``value`` seconds with the SI prefix that puts the rounded mantissa in
    ``[1, 1000)``. Anything under a picosecond gets an exponent instead.

        >>> format_seconds(0.0161134)
        '16.11 ms'
        >>> format_seconds(6.7e-05)
        '67 µs'
    """
    if math.isinf(value):
        return 'inf'
    if value == 0:
        return '0 s'
    for scale, unit in SI_PREFIXES:
        mantissa = '{:.{}g}'.format(value / scale, digits)
        if abs(float(mantissa)) >= 1:
            return '{} {}'.format(mantissa, unit)
    return '{:.{}g} s'.format(value, digits)


def format_value(value, unit, digits=4):
    if value is None:
        return '-'
    if unit == 's':
        return format_seconds(value, digits)
    if math.isinf(value):
        return 'inf'
    if unit == 'ms':
        return '{:.3f} ms'.format(value * 1e3)
    if unit == 'µs':
        return '{:.1f} µs'.format(value * 1e6)
    return '{:.{}g} {}'.format(value, digits, unit)


Row = namedtuple('Row', 'label values')


@dataclass(frozen=True)
class ReportTable:
    """
    A captioned grid. Every row has a label and one value per column;
    ``None`` marks a cell that does not apply. Values are in base units and
    ``unit`` says how to show them.
    """
    caption: str
    corner: str
    headers: tuple
    rows: tuple
    unit: str = 's'

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ValidationError('Unknown unit {!r}'.format(self.unit))
        for row in self.rows:
            if len(row.values) != len(self.headers):
                raise ValidationError(
                    'Row {} has {} values for {} columns'.format(
                        row.label, len(row.values), len(self.headers)))

    def cell(self, label, header):
        column = self.headers.index(header)
        for row in self.rows:
            if row.label == label:
                return row.values[column]
        raise KeyError(label)

    def text(self):
        grid = [[self.corner] + list(self.headers)]
        for row in self.rows:
            grid.append([row.label] + [format_value(v, self.unit)
                                       for v in row.values])
        widths = [max(len(line[i]) for line in grid)
                  for i in range(len(grid[0]))]
        lines = [self.caption, '']
        for n, line in enumerate(grid):
            cells = [line[0].ljust(widths[0])]
            cells.extend(c.rjust(w) for c, w in zip(line[1:], widths[1:]))
            lines.append('  '.join(cells).rstrip())
            if n == 0:
                lines.append('  '.join('-' * w for w in widths))
        return '\n'.join(lines) + '\n'

    def csv(self):
        return write_csv([self.corner] + list(self.headers),
                         [[row.label] + list(row.values)
                          for row in self.rows])

    def json(self):
        return dump_json(OrderedDict([
            ('caption', self.caption),
            ('unit', 's' if self.unit in ('s', 'ms', 'µs') else self.unit),
            ('columns', list(self.headers)),
            ('rows', [OrderedDict([('label', row.label),
                                   ('values', list(row.values))])
                      for row in self.rows]),
        ]))


def _raw(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return value


def write_csv(headers, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(headers)
    for row in rows:
        writer.writerow([_raw(v) for v in row])
    return out.getvalue()


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, dict):
        return OrderedDict((k, _jsonable(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def dump_json(obj):
    return json.dumps(_jsonable(obj), indent=2, ensure_ascii=False) + '\n'


def georef_tau_crit_table(platforms, sensors):
    """
    Per-sensor critical synchronization error, one column per platform.
    """
    rows = tuple(Row(s.name, tuple(per_sensor_tau_crit(s, p)
                                   for p in platforms))
                 for s in sensors)
    return ReportTable('Minimum synchronization error tau_crit', 'Sensor',
                       tuple(p.name for p in platforms), rows, unit='s')


def survey_tau_crit_table(systems, sensors):
    """
    Per-sensor critical synchronization error on each system's SV, plus a
    final column for the AUV of the first system. Position sensors do not
    work underwater and have no AUV entry.
    """
    if not systems:
        raise ValidationError('No survey systems given')
    auv = systems[0]
    rows = []
    for sensor in sensors:
        values = [per_sensor_tau_crit_survey(sensor, 'sv', system)
                  for system in systems]
        values.append(None if sensor.kind == POSITION else
                      per_sensor_tau_crit_survey(sensor, 'auv', auv))
        rows.append(Row(sensor.name, tuple(values)))
    headers = tuple(s.sv.name for s in systems) + (auv.auv.name, )
    return ReportTable('Critical synchronization error', 'tau_crit', headers,
                       tuple(rows), unit='ms')


def budget_table(budgets):
    """
    Critical synchronization error of whole payloads or survey systems.
    """
    rows = tuple(Row(b.label, (tau_crit(b), )) for b in budgets)
    return ReportTable('Payload tau_crit', 'Payload', ('tau_crit', ), rows)


def curve_csv(curve):
    return write_csv(CURVE_HEADERS, [list(s) for s in curve.samples])


def curves_csv(curves):
    """
    Several curves in one CSV, with a leading column naming each curve.
    """
    rows = [[curve.label] + list(s) for curve in curves
            for s in curve.samples]
    return write_csv(('label', ) + CURVE_HEADERS, rows)


def curve_json(curves):
    return dump_json([OrderedDict([
        ('label', c.label),
        ('tau_crit_s', c.tau_crit),
        ('roof_per_m', c.roof),
        ('samples', [OrderedDict(zip(CURVE_HEADERS, s)) for s in c.samples]),
    ]) for c in curves])


def simulation_csv(result):
    return write_csv(SIMULATION_HEADERS, [list(r) for r in result.rows()])


def simulation_json(result):
    return dump_json(OrderedDict([
        ('metadata', result.metadata),
        ('rows', [OrderedDict(zip(SIMULATION_HEADERS, r))
                  for r in result.rows()]),
    ]))
