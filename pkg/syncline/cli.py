# -*- coding: utf8 -*-

"""
Command line entry point.

    syncline catalog list --sensors
    syncline tau-crit --preset georef
    syncline curve --platform Car --sensor-error 0.1 --svg car.svg
    syncline simulate --scenario survey --survey "Small SV" --check

Exit status is 0 on success, 1 when ``simulate --check`` finds a ratio
outside the accepted band, and 2 on bad input.
"""

import argparse
import logging
import math
import sys
from collections import OrderedDict

from syncline import __version__
from syncline.catalog import (Catalog, Payload, PlatformSpec, SensorSpec,
                              dump_payload, dump_platform, dump_sensor,
                              dump_survey_system, load_catalog_file)
from syncline.exceptions import SynclineError, ValidationError
from syncline.model import (ErrorBudget, payload_budget, sample_curve,
                            survey_budget)
from syncline.report import (GEOREF_PLATFORMS, GEOREF_SENSORS,
                             SURVEY_SENSORS, SURVEY_SYSTEMS, budget_table,
                             curve_csv, curve_json, curves_csv,
                             dump_json,
                             georef_tau_crit_table, simulation_csv,
                             simulation_json, survey_tau_crit_table)
from syncline.simulator import (ADVERSARIAL, GEOREF, NOISE_MODES, PATTERNS,
                                SCENARIOS, SURVEY, RunConfig, log_grid, run)
from syncline.svg import write_syncline_svg

logger = logging.getLogger(__name__)

DEFAULT_PAYLOAD = 'F9P RTK + MRU5 + VUX1'

#: Accepted worst-case / prediction band for ``simulate --check``.
CHECK_BAND = (0.7, 1.02)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _emit(text, out=None):
    if out:
        with open(out, 'w') as f:
            f.write(text)
        logger.info('Wrote %s', out)
    else:
        sys.stdout.write(text)


def _catalog(args):
    if args.catalog:
        return load_catalog_file(args.catalog)
    return Catalog.builtin()


def _dump(entry):
    if isinstance(entry, PlatformSpec):
        return dump_platform(entry)
    if isinstance(entry, SensorSpec):
        return dump_sensor(entry)
    if isinstance(entry, Payload):
        return dump_payload(entry)
    return dump_survey_system(entry)


def _describe(value):
    if isinstance(value, float):
        return '{:g}'.format(value)
    if isinstance(value, list):
        return ', '.join(_describe(v) for v in value)
    if isinstance(value, dict):
        return '; '.join('{} {}'.format(k, _describe(v))
                         for k, v in value.items())
    return str(value)


def _text_entry(obj):
    return ''.join('{}: {}\n'.format(k, _describe(v)) for k, v in obj.items())


SECTIONS = OrderedDict([
    ('platforms', 'platforms'),
    ('sensors', 'sensors'),
    ('payloads', 'payloads'),
    ('survey_systems', 'survey systems'),
])


def cmd_catalog(args):
    catalog = _catalog(args)
    if args.action == 'show':
        if not args.name:
            raise ValidationError('catalog show needs a name')
        obj = _dump(catalog.find(args.name))
        _emit(dump_json(obj) if args.json else _text_entry(obj), args.out)
        return EXIT_OK

    chosen = [s for s in SECTIONS if getattr(args, s)] or list(SECTIONS)
    if args.json:
        _emit(dump_json(OrderedDict(
            (s, [_dump(e) for e in getattr(catalog, s)]) for s in chosen)),
            args.out)
        return EXIT_OK
    lines = []
    for section in chosen:
        entries = getattr(catalog, section)
        lines.append('{} ({})'.format(SECTIONS[section].capitalize(),
                                      len(entries)))
        for entry in entries:
            obj = _dump(entry)
            name = obj.pop('name')
            lines.append('  {:<28} {}'.format(name, _describe(obj)))
        lines.append('')
    _emit('\n'.join(lines), args.out)
    return EXIT_OK


def _render(table, args):
    if args.csv:
        return table.csv()
    if args.json:
        return table.json()
    return table.text()


def cmd_tau_crit(args):
    catalog = _catalog(args)
    if args.preset == GEOREF:
        table = georef_tau_crit_table(
            [catalog.platform(n) for n in GEOREF_PLATFORMS],
            [catalog.sensor(n) for n in GEOREF_SENSORS])
    elif args.preset == SURVEY:
        table = survey_tau_crit_table(
            [catalog.survey_system(n) for n in SURVEY_SYSTEMS],
            [catalog.sensor(n) for n in SURVEY_SENSORS])
    elif args.payload:
        payload = catalog.payload(args.payload)
        platforms = [catalog.platform(n) for n in args.platform]
        if not platforms:
            raise ValidationError('No platforms given')
        table = budget_table([payload_budget(p, payload) for p in platforms])
    elif args.survey and not args.sensor:
        table = budget_table([survey_budget(catalog.survey_system(n))
                              for n in args.survey])
    else:
        sensors = [catalog.sensor(n) for n in args.sensor]
        if not sensors:
            raise ValidationError('No sensors given')
        if args.survey:
            table = survey_tau_crit_table(
                [catalog.survey_system(n) for n in args.survey], sensors)
        else:
            platforms = [catalog.platform(n) for n in args.platform]
            if not platforms:
                raise ValidationError('No platforms given')
            table = georef_tau_crit_table(platforms, sensors)
    _emit(_render(table, args), args.out)
    return EXIT_OK


def _budgets(args, catalog):
    if args.survey:
        budgets = [survey_budget(catalog.survey_system(n))
                   for n in args.survey]
    else:
        payload = catalog.payload(args.payload or DEFAULT_PAYLOAD)
        names = args.platform or ['Fixed Wing']
        budgets = [payload_budget(catalog.platform(n), payload)
                   for n in names]
    if args.sensor_error is not None:
        budgets = [ErrorBudget(b.delta_sync_rate, args.sensor_error,
                               label=b.label) for b in budgets]
    return budgets


def cmd_curve(args):
    catalog = _catalog(args)
    curves = [sample_curve(b, args.tau_min, args.tau_max, args.n)
              for b in _budgets(args, catalog)]
    for curve in curves:
        logger.info('%s: tau_crit %g s, roof %g 1/m', curve.label,
                    curve.tau_crit, curve.roof)
    if args.svg:
        write_syncline_svg(curves, args.svg)
        logger.info('Wrote %s', args.svg)
    if args.json:
        text = curve_json(curves)
    elif len(curves) == 1:
        text = curve_csv(curves[0])
    else:
        text = curves_csv(curves)
    _emit(text, args.out)
    return EXIT_OK


def _grid(args):
    if args.tau:
        return tuple(sorted(args.tau))
    return log_grid(args.tau_min, args.tau_max, args.n_tau)


def cmd_simulate(args):
    catalog = _catalog(args)
    config = RunConfig(tau_grid=_grid(args), trials_per_tau=args.trials,
                       noise_mode=args.mode, seed=args.seed,
                       scenario=args.scenario, pattern=args.pattern)
    if args.scenario == SURVEY:
        system = catalog.survey_system(args.survey or SURVEY_SYSTEMS[1])
        result = run(config, system=system, workers=args.workers)
    else:
        platform = catalog.platform(args.platform or 'Fixed Wing')
        payload = catalog.payload(args.payload or DEFAULT_PAYLOAD)
        result = run(config, platform, payload, workers=args.workers)
    _emit(simulation_json(result) if args.json else simulation_csv(result),
          args.out)

    if args.check and config.noise_mode == ADVERSARIAL:
        low, high = CHECK_BAND
        if not result.within(low, high):
            outside = [(t, r) for t, r in zip(result.taus, result.ratios)
                       if not low <= r <= high]
            for tau, ratio in outside:
                logger.error('tau=%g: ratio %g outside [%g, %g]', tau, ratio,
                             low, high)
            sys.stderr.write('{} of {} ratios outside [{}, {}]\n'.format(
                len(outside), len(result.ratios), low, high))
            return EXIT_CHECK_FAILED
    return EXIT_OK


def _positive(value):
    number = float(value)
    if not (number > 0 and math.isfinite(number)):
        raise argparse.ArgumentTypeError('must be a positive number')
    return number


def _non_negative(value):
    number = float(value)
    if not (number >= 0 and math.isfinite(number)):
        raise argparse.ArgumentTypeError('must be a non-negative number')
    return number


def _machine_flags(parser, csv=True):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--json', action='store_true',
                       help='machine-readable JSON output')
    if csv:
        group.add_argument('--csv', action='store_true',
                           help='machine-readable CSV output')
    parser.add_argument('--out', help='write output to this file')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='syncline',
        description='Worst-case error budgets relating time synchronization '
                    'to sensor fusion accuracy.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debugging')
    parser.add_argument('--catalog',
                        help='JSON catalog merged over the built-in one')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    catalog = commands.add_parser('catalog', help='inspect the registry')
    catalog.add_argument('action', choices=('list', 'show'))
    catalog.add_argument('name', nargs='?')
    for section, label in SECTIONS.items():
        catalog.add_argument('--' + section.replace('_', '-'),
                             dest=section, action='store_true',
                             help='list {} only'.format(label))
    _machine_flags(catalog, csv=False)
    catalog.set_defaults(func=cmd_catalog)

    tau = commands.add_parser('tau-crit',
                              help='critical synchronization errors')
    tau.add_argument('--preset', choices=(GEOREF, SURVEY),
                     help='reproduce a published table')
    tau.add_argument('--platform', action='append', default=[])
    tau.add_argument('--sensor', action='append', default=[])
    tau.add_argument('--payload', help='whole-payload tau_crit instead')
    tau.add_argument('--survey', action='append', default=[],
                     help='survey system; with --sensor, per-sensor values')
    _machine_flags(tau)
    tau.set_defaults(func=cmd_tau_crit)

    curve = commands.add_parser('curve', help='sample Syncline curves')
    curve.add_argument('--platform', action='append', default=[])
    curve.add_argument('--payload')
    curve.add_argument('--survey', action='append', default=[])
    curve.add_argument('--sensor-error', type=_non_negative,
                       help='override the sensor-induced error, metres')
    curve.add_argument('--tau-min', type=_positive, default=1e-7)
    curve.add_argument('--tau-max', type=_positive, default=1.0)
    curve.add_argument('--n', type=int, default=40)
    curve.add_argument('--svg', help='also draw a log-log plot here')
    _machine_flags(curve)
    curve.set_defaults(func=cmd_curve)

    sim = commands.add_parser('simulate',
                              help='compare the model with simulation')
    sim.add_argument('--scenario', choices=SCENARIOS, default=GEOREF)
    sim.add_argument('--platform')
    sim.add_argument('--payload')
    sim.add_argument('--survey')
    sim.add_argument('--tau', type=_non_negative, action='append',
                     help='explicit grid point; repeat for more')
    sim.add_argument('--tau-min', type=_positive, default=1e-6)
    sim.add_argument('--tau-max', type=_positive, default=1e-1)
    sim.add_argument('--n-tau', type=int, default=40)
    sim.add_argument('--trials', type=int, default=256)
    sim.add_argument('--mode', choices=NOISE_MODES, default=ADVERSARIAL)
    sim.add_argument('--pattern', choices=PATTERNS, default=PATTERNS[0])
    sim.add_argument('--seed', type=int, default=0)
    sim.add_argument('--workers', type=int, default=1)
    sim.add_argument('--check', action='store_true',
                     help='exit 1 if a ratio leaves [{}, {}]'.format(
                         *CHECK_BAND))
    _machine_flags(sim)
    sim.set_defaults(func=cmd_simulate)
    return parser


def configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except (SynclineError, OSError) as ex:
        logger.debug('Failed', exc_info=True)
        sys.stderr.write('syncline: {}\n'.format(ex))
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
