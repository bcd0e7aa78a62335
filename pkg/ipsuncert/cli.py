"""The ipsuncert command line.

Exit codes: 0 on success, 1 for invalid input (usage, configuration, sample
files, domain and I/O errors) and 2 when a numerical procedure fails.

"""
import logging
import os
import sys
from argparse import ArgumentParser

from .exceptions import IpsUncertException, NumericalError
from .fitting import ALIASES, AMPLITUDE_MODES, FIT_MODES, FitOptions
from .fitting import fit_samples
from .fleet import summarize
from .helpers import fmt, setup_logging
from .io import (build_report, curve_table, default_grid, dump_report,
                 fit_fragment, parse_samples, read_fleet_config,
                 scenario_curves, write_curve_table, write_report,
                 write_samples)
from .mixture import equivalent_tau
from .profile import ExpDecayProfile
from .synth import SynthSpec, generate_frame

log = logging.getLogger(__name__)

FIT_MODE_CHOICES = FIT_MODES + tuple(k for k, v in ALIASES.items()
                                     if v in FIT_MODES)
AMPLITUDE_CHOICES = AMPLITUDE_MODES + tuple(k for k, v in ALIASES.items()
                                            if v in AMPLITUDE_MODES)


def _emit(report, out_path):
    if out_path:
        write_report(out_path, report)
    else:
        print(dump_report(report), end='')


def cmd_fit(samples_path, options=None, out_path=None):
    """Fit a profile to a sample file and print it with its diagnostics."""
    result = fit_samples(parse_samples(samples_path), options)
    print('amplitude = {0} percent'.format(fmt(result.profile.amplitude)))
    print('time_coefficient = {0} hours'
          .format(fmt(result.profile.time_coefficient)))
    print('excluded_samples = {0}'.format(result.sequence.excluded))
    if result.violations:
        print('coverage: {0} point(s) above the fitted curve'
              .format(len(result.violations)))
        for item in result.violations:
            print('  t={0} hours rmse={1} alpha={2} excess={3} percent'
                  .format(fmt(item.time_advance), fmt(item.rmse),
                          fmt(item.alpha), fmt(item.excess)))
    else:
        print('coverage: ok')
    if out_path:
        write_report(out_path, {'inputs': {'samples': str(samples_path)},
                                'fitted_profile': fit_fragment(result)})
    return result


def cmd_compose(config_path, out_path=None, **overrides):
    """Compose a fleet, emit its report and write `<stem>_curves.csv`."""
    config = read_fleet_config(config_path, **overrides)
    summary = summarize(config.spec)
    curves_path = '{0}_curves.csv'.format(
        os.path.splitext(out_path or config_path)[0])
    write_curve_table(curves_path, scenario_curves(config.spec, config.grid,
                                                   summary))
    report = build_report(config, config_path, curves_path, summary)
    _emit(report, out_path)
    return report


def cmd_report(config_path, out_path=None, curves_path=None, **overrides):
    """Emit the report of a fleet; write the curve table if asked to."""
    config = read_fleet_config(config_path, **overrides)
    summary = summarize(config.spec)
    if curves_path:
        write_curve_table(curves_path, scenario_curves(
            config.spec, config.grid, summary))
    report = build_report(config, config_path, curves_path, summary)
    _emit(report, out_path)
    return report


def cmd_equiv_tau(config_path, out_path=None, **overrides):
    """Tabulate the equivalent time coefficient tau(t) of the IPS mixture."""
    config = read_fleet_config(config_path, **overrides)
    summary = summarize(config.spec)
    table = curve_table(
        [('tau_equiv', lambda t: equivalent_tau(summary.mixture, t))],
        config.grid)
    if out_path:
        write_curve_table(out_path, table)
    else:
        print('t_h,tau_equiv')
        for t, tau in zip(table['t_h'], table['tau_equiv']):
            print('{0},{1}'.format(fmt(t), fmt(tau)))
    return table


def cmd_contour(config_path, **overrides):
    """Print the IPS and all-sources contour functions."""
    summary = summarize(read_fleet_config(config_path, **overrides).spec)
    print('ips: {0} * (1 - exp(-t / {1})) percent'.format(
        fmt(summary.contour.amplitude),
        fmt(summary.contour.time_coefficient)))
    print('all_sources: {0} * (1 - exp(-t / {1})) percent'.format(
        fmt(summary.all_sources_contour.amplitude),
        fmt(summary.all_sources_contour.time_coefficient)))
    return summary


def cmd_maxdev(config_path, **overrides):
    """Print where and how far the IPS contour exceeds the IPS sum."""
    deviation = summarize(
        read_fleet_config(config_path, **overrides).spec).deviation
    print('t_star = {0} hours'.format(fmt(deviation.t_star)))
    print('delta_lambda_star = {0}'.format(fmt(deviation.delta_lambda_star)))
    print('delta_alpha_star = {0} percent'
          .format(fmt(deviation.delta_alpha_star)))
    if deviation.degenerate:
        print('degenerate: contour coincides with the sum')
    return deviation


def cmd_curves(config_path, out_path, **overrides):
    """Write the six-curve table of a fleet."""
    config = read_fleet_config(config_path, **overrides)
    table = scenario_curves(config.spec, config.grid)
    write_curve_table(out_path, table)
    return table


def cmd_synth(spec, out_path):
    """Write the synthetic sample CSV of a SynthSpec."""
    frame = generate_frame(spec)
    write_samples(out_path, frame)
    print('wrote {0} samples to {1}'.format(len(frame), out_path))
    return frame


def _overrides(args):
    return dict(amplitude_mode=args.amplitude, fit_mode=args.fit_mode,
                actual_power_floor=args.floor, t_max=args.t_max,
                t_step=args.t_step)


def _run_fit(args):
    options = FitOptions(args.amplitude or 'max', args.floor or 0.0,
                         args.fit_mode or 'steepest_slope')
    cmd_fit(args.samples, options, args.out)


def _run_synth(args):
    advances = default_grid(args.t_max, args.t_step)[1:]
    spec = SynthSpec(ExpDecayProfile(args.amp, args.tau), args.per_advance,
                     advances, args.base_mw, args.seed, args.noiseless,
                     args.source_id)
    cmd_synth(spec, args.out)


def build_parser():
    parser = ArgumentParser(prog='ipsuncert', description=(
        'Forecast-error statistical functions of wind and solar power.'))
    parser.add_argument('-v', '--verbose', action='count', default=0)
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    fit_flags = ArgumentParser(add_help=False)
    fit_flags.add_argument('--fit-mode', choices=FIT_MODE_CHOICES)
    fit_flags.add_argument('--amplitude', choices=AMPLITUDE_CHOICES)
    fit_flags.add_argument('--floor', type=float, metavar='MW')
    grid_flags = ArgumentParser(add_help=False)
    grid_flags.add_argument('--t-max', type=float, metavar='HOURS')
    grid_flags.add_argument('--t-step', type=float, metavar='HOURS')
    config_flags = ArgumentParser(add_help=False,
                                  parents=[fit_flags, grid_flags])
    config_flags.add_argument('--config', required=True, metavar='PATH')

    sub = subparsers.add_parser('fit', parents=[fit_flags],
                                help='fit a profile to a sample file')
    sub.add_argument('--samples', required=True, metavar='PATH')
    sub.add_argument('--out', metavar='YAML')
    sub.set_defaults(func=_run_fit)

    sub = subparsers.add_parser('compose', parents=[config_flags],
                                help='report a fleet and write its curves')
    sub.add_argument('--out', metavar='YAML')
    sub.set_defaults(func=lambda args: cmd_compose(
        args.config, args.out, **_overrides(args)))

    sub = subparsers.add_parser('equiv-tau', parents=[config_flags],
                                help='tabulate tau(t)')
    sub.add_argument('--out', metavar='CSV')
    sub.set_defaults(func=lambda args: cmd_equiv_tau(
        args.config, args.out, **_overrides(args)))

    sub = subparsers.add_parser('contour', parents=[config_flags],
                                help='print the contour functions')
    sub.set_defaults(func=lambda args: cmd_contour(
        args.config, **_overrides(args)))

    sub = subparsers.add_parser('maxdev', parents=[config_flags],
                                help='print the maximum deviation')
    sub.set_defaults(func=lambda args: cmd_maxdev(
        args.config, **_overrides(args)))

    sub = subparsers.add_parser('curves', parents=[config_flags],
                                help='write the curve table')
    sub.add_argument('--out', required=True, metavar='CSV')
    sub.set_defaults(func=lambda args: cmd_curves(
        args.config, args.out, **_overrides(args)))

    sub = subparsers.add_parser('report', parents=[config_flags],
                                help='report a fleet')
    sub.add_argument('--out', metavar='YAML')
    sub.add_argument('--curves', metavar='CSV')
    sub.set_defaults(func=lambda args: cmd_report(
        args.config, args.out, args.curves, **_overrides(args)))

    sub = subparsers.add_parser('synth', help='generate synthetic samples')
    sub.add_argument('--amp', type=float, required=True, metavar='PCT')
    sub.add_argument('--tau', type=float, required=True, metavar='H')
    sub.add_argument('--per-advance', type=int, default=1000, metavar='M')
    sub.add_argument('--base-mw', type=float, default=100.0, metavar='MW')
    sub.add_argument('--t-max', type=float, default=24.0, metavar='HOURS')
    sub.add_argument('--t-step', type=float, default=1.0, metavar='HOURS')
    sub.add_argument('--seed', type=int, default=0, metavar='N')
    sub.add_argument('--noiseless', action='store_true')
    sub.add_argument('--source-id', default='synth')
    sub.add_argument('--out', required=True, metavar='CSV')
    sub.set_defaults(func=_run_synth)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors join the invalid input code, --help stays 0
        return 0 if exc.code in (0, None) else 1
    setup_logging(getattr(args, 'config', None), args.verbose)
    log.debug('running %s', args.command)
    try:
        args.func(args)
    except NumericalError as exc:
        print('error: {0}'.format(exc), file=sys.stderr)
        return 2
    except (IpsUncertException, IOError) as exc:
        print('error: {0}'.format(exc), file=sys.stderr)
        return 1
    return 0


if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        pass
