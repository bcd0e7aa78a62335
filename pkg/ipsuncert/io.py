"""On-disk formats: sample CSV, curve tables, fleet configs and reports.

All files are UTF-8 text with LF line endings and '.' as decimal separator.

"""
import csv
import logging
import os
from collections import namedtuple
from configparser import ConfigParser, Error as ConfigError

import dateutil.parser
import numpy
import pandas
import yaml

from .exceptions import DomainError, ParseError, ValidationError
from .fitting import FitOptions, ForecastSample, fit_samples
from .fleet import FleetSpec, summarize
from .mixture import eval_contour, eval_sum, equivalent_tau
from .profile import ExpDecayProfile, eval_alpha

log = logging.getLogger(__name__)

SAMPLE_COLUMNS = ('source_id', 'time_advance_h', 'forecast_mw', 'actual_mw')
TIMESTAMP_COLUMN = 'timestamp'
NUMERIC_COLUMNS = (('time_advance_h', 'time advance'),
                   ('forecast_mw', 'forecast power'),
                   ('actual_mw', 'actual power'))
CURVE_COLUMNS = ('alpha_w', 'alpha_s', 'alpha_ips_sum', 'alpha_ips_contour',
                 'alpha_g_contour', 'tau_equiv')
SOURCES = ('wind', 'solar')
DEFAULT_T_MAX = 24.0
DEFAULT_T_STEP = 0.05
CONFIG_DIGITS = '{0:.12g}'

FleetConfig = namedtuple('FleetConfig', 'spec options fits grid')


def _write_text(path, text):
    with open(path, 'w', encoding='utf-8', newline='\n') as fp:
        fp.write(text)
    log.info('wrote %s', path)


def _field_counts(path):
    """Return the header fields and the field count of every later record.

    A blank line counts 0 fields.

    """
    with open(path, newline='', encoding='utf-8') as fp:
        records = csv.reader(fp)
        header = tuple(next(records, ()))
        widths = [len(fields) for fields in records]
    return header, widths


def _read_body(path, width):
    """Return the records after the header as strings, one row per record.

    Columns are numbered 0..width-1 so that no record can outgrow them and
    none is taken for an index.

    """
    return pandas.read_csv(path, header=None, skiprows=1,
                           names=list(range(width)), index_col=False,
                           dtype=str, keep_default_na=False,
                           skip_blank_lines=False, engine='python')


def parse_samples(path):
    """Return the ForecastSample list of a sample CSV file.

    Every malformed row is collected; if there are any a single ParseError
    lists them all by file line number (the header is line 1, row 0 stands
    for the file as a whole). `sample_id` is the line number of the row.

    """
    try:
        header, widths = _field_counts(path)
        frame = pandas.DataFrame(columns=list(range(len(header))))
        if widths:
            frame = _read_body(path, max([len(header)] + widths))
    except (csv.Error, pandas.errors.ParserError) as exc:
        raise ParseError(path, [(0, 'unreadable CSV: {0}'.format(exc))])
    if not header:
        raise ParseError(path, [(1, 'missing header')])
    if header not in (SAMPLE_COLUMNS, SAMPLE_COLUMNS + (TIMESTAMP_COLUMN,)):
        raise ParseError(path, [(1, 'header must be {0}[,{1}]'.format(
            ','.join(SAMPLE_COLUMNS), TIMESTAMP_COLUMN))])
    if len(frame) != len(widths):
        raise ParseError(path, [(0, 'unreadable CSV: {0} records, {1} rows'
                                 .format(len(widths), len(frame)))])
    frame = frame.iloc[:, :len(header)]
    frame.columns = list(header)
    text = {}
    for column in header:
        text[column] = frame[column].fillna('').astype(str).str.strip()
    numbers = dict((column, pandas.to_numeric(text[column],
                                              errors='coerce').tolist())
                   for column, _ in NUMERIC_COLUMNS)
    text = dict((column, values.tolist()) for column, values in text.items())
    stamps = text.get(TIMESTAMP_COLUMN, [''] * len(frame))

    samples = []
    errors = []
    for index in range(len(frame)):
        row = index + 2
        if widths[index] == 0:
            continue
        if widths[index] != len(header):
            errors.append((row, 'wrong number of fields: {0}, expected {1}'
                           .format(widths[index], len(header))))
            continue
        if not any(text[column][index] for column in header):
            continue
        problems = []
        source_id = text['source_id'][index]
        if not source_id:
            problems.append('missing source_id')
        values = {}
        for column, label in NUMERIC_COLUMNS:
            value = numbers[column][index]
            if not text[column][index]:
                problems.append('missing {0}'.format(label))
            elif not numpy.isfinite(value):
                problems.append('non-numeric {0}: {1!r}'
                                .format(label, text[column][index]))
            elif value < 0:
                problems.append('negative {0}'.format(label))
            values[column] = value
        timestamp = stamps[index] or None
        if timestamp is not None:
            try:
                timestamp = dateutil.parser.parse(timestamp)
            except (ValueError, OverflowError):
                problems.append('invalid timestamp: {0!r}'.format(timestamp))
        if problems:
            errors.append((row, '; '.join(problems)))
            continue
        samples.append(ForecastSample(
            row, values['time_advance_h'], values['forecast_mw'],
            values['actual_mw'], source_id, timestamp))

    if errors:
        raise ParseError(path, errors)
    log.info('read %d sample(s) from %s', len(samples), path)
    return samples


def samples_frame(samples):
    """Return the DataFrame holding `samples` in sample CSV layout."""
    samples = list(samples)
    frame = pandas.DataFrame({
        'source_id': [x.source_id or '' for x in samples],
        'time_advance_h': [x.time_advance for x in samples],
        'forecast_mw': [x.forecast_power for x in samples],
        'actual_mw': [x.actual_power for x in samples]},
        columns=list(SAMPLE_COLUMNS))
    if any(x.timestamp is not None for x in samples):
        frame[TIMESTAMP_COLUMN] = [
            x.timestamp.isoformat() if hasattr(x.timestamp, 'isoformat')
            else (x.timestamp or '') for x in samples]
    return frame


def write_samples(path, samples):
    """Write `samples` (ForecastSample list or DataFrame) as a sample CSV."""
    if not isinstance(samples, pandas.DataFrame):
        samples = samples_frame(samples)
    _write_text(path, samples.to_csv(index=False, lineterminator='\n'))


def default_grid(t_max=DEFAULT_T_MAX, t_step=DEFAULT_T_STEP):
    """Return the time grid 0, t_step, ... up to t_max inclusive."""
    for key, value in (('t_max', t_max), ('t_step', t_step)):
        if not numpy.isfinite(value) or value <= 0:
            raise ValidationError(key, 'must be positive: {0!r}'
                                  .format(value))
    count = int(numpy.floor(t_max / t_step + 1e-9))
    return numpy.arange(count + 1) * float(t_step)


def _check_grid(t_grid):
    grid = numpy.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError('time grid must be a nonempty sequence')
    if not numpy.all(numpy.isfinite(grid)) or numpy.any(grid < 0):
        raise DomainError('time grid must be finite and non-negative')
    if numpy.any(numpy.diff(grid) <= 0):
        raise DomainError('time grid must be strictly increasing')
    return grid


def curve_table(curves, t_grid):
    """Return a DataFrame with `t_h` and one column per (name, function)."""
    grid = _check_grid(t_grid)
    table = pandas.DataFrame({'t_h': grid})
    for name, function in curves:
        table[name] = numpy.broadcast_to(function(grid), grid.shape)
    return table


def scenario_curves(spec, t_grid, summary=None):
    """Return the six-curve table of a FleetSpec."""
    summary = summary or summarize(spec)

    def profile_curve(profile):
        if profile is None:
            return lambda t: numpy.zeros_like(t)
        return lambda t: eval_alpha(profile, t)

    functions = (profile_curve(spec.wind_profile),
                 profile_curve(spec.solar_profile),
                 lambda t: eval_sum(summary.mixture, t),
                 lambda t: eval_contour(summary.mixture, t),
                 lambda t: eval_contour(summary.all_sources, t),
                 lambda t: equivalent_tau(summary.mixture, t))
    return curve_table(zip(CURVE_COLUMNS, functions), t_grid)


def write_curve_table(path, table):
    """Write a curve table as CSV at full precision."""
    _write_text(path, table.to_csv(index=False, lineterminator='\n'))


def _get_float(config, section, key, required=True, default=None,
               positive=False):
    name = '{0}.{1}'.format(section, key)
    if not config.has_option(section, key):
        if required:
            raise ValidationError(name, 'missing')
        return default
    text = config.get(section, key)
    try:
        value = float(text)
    except ValueError:
        raise ValidationError(name, 'not a number: {0!r}'.format(text))
    if not numpy.isfinite(value):
        raise ValidationError(name, 'must be finite: {0!r}'.format(text))
    if positive and value <= 0:
        raise ValidationError(name, 'must be positive: {0!r}'.format(text))
    return value


def _read_options(config, overrides):
    settings = {}
    if config.has_section('fit'):
        for key in ('amplitude_mode', 'fit_mode'):
            if config.has_option('fit', key):
                settings[key] = config.get('fit', key).strip()
        if config.has_option('fit', 'actual_power_floor'):
            settings['actual_power_floor'] = _get_float(
                config, 'fit', 'actual_power_floor')
    settings.update((key, overrides[key]) for key in
                    ('amplitude_mode', 'fit_mode', 'actual_power_floor')
                    if overrides.get(key) is not None)
    try:
        return FitOptions(**settings)
    except ValidationError as exc:
        raise ValidationError('fit.{0}'.format(exc.key),
                              str(exc).split(': ', 1)[-1])


def _read_profile(config, source, base_dir, options):
    """Return (profile, fit result or None) for a [wind]/[solar] section."""
    if config.has_option(source, 'samples'):
        path = os.path.join(base_dir, config.get(source, 'samples').strip())
        result = fit_samples(parse_samples(path), options)
        return result.profile, result
    amplitude = _get_float(config, source, 'amplitude', positive=True)
    tau = _get_float(config, source, 'time_coefficient', positive=True)
    return ExpDecayProfile(amplitude, tau), None


def _proportion(config, key):
    value = _get_float(config, 'fleet', key)
    if not 0.0 <= value <= 1.0:
        raise ValidationError('fleet.{0}'.format(key),
                              'must be within [0, 1]: {0!r}'.format(value))
    return value


def read_fleet_config(path, **overrides):
    """Return the FleetConfig of an ini fleet scenario.

    :param overrides: `amplitude_mode`, `fit_mode`, `actual_power_floor`,
        `t_max` and `t_step` replace the file's values unless None.

    """
    config = ConfigParser(interpolation=None,
                          inline_comment_prefixes=(';',))
    try:
        with open(path, encoding='utf-8') as fp:
            config.read_file(fp)
    except ConfigError as exc:
        raise ValidationError('config', str(exc))
    if not config.has_section('fleet'):
        raise ValidationError('fleet', 'missing section')
    beta_w = _proportion(config, 'beta_w')
    beta_ips = _proportion(config, 'beta_ips')
    options = _read_options(config, overrides)

    base_dir = os.path.dirname(os.path.abspath(path))
    profiles = {}
    fits = {}
    for source, share in zip(SOURCES, (beta_w, 1.0 - beta_w)):
        if not config.has_section(source):
            if share > 0:
                raise ValidationError(source, 'section required when its '
                                      'share is {0:g}'.format(share))
            profiles[source] = None
            continue
        profiles[source], fit = _read_profile(config, source, base_dir,
                                              options)
        if fit is not None:
            fits[source] = fit

    t_max = overrides.get('t_max')
    if t_max is None:
        t_max = _get_float(config, 'curves', 't_max', required=False,
                           default=DEFAULT_T_MAX)
    t_step = overrides.get('t_step')
    if t_step is None:
        t_step = _get_float(config, 'curves', 't_step', required=False,
                            default=DEFAULT_T_STEP)
    grid = default_grid(t_max, t_step)

    spec = FleetSpec(profiles['wind'], profiles['solar'], beta_w, beta_ips)
    log.info('read fleet config %s: beta_w=%g beta_ips=%g', path, beta_w,
             beta_ips)
    return FleetConfig(spec, options, fits, grid)


def parse_fleet_config(path):
    """Return the (FleetSpec, FitOptions) of an ini fleet scenario."""
    config = read_fleet_config(path)
    return config.spec, config.options


def write_fleet_config(path, spec, options=None):
    """Write `spec` and `options` in the format parse_fleet_config reads."""
    options = options or FitOptions()
    config = ConfigParser(interpolation=None)
    for source, profile in zip(SOURCES, (spec.wind_profile,
                                         spec.solar_profile)):
        if profile is None:
            continue
        config[source] = {
            'amplitude': CONFIG_DIGITS.format(profile.amplitude),
            'time_coefficient': CONFIG_DIGITS.format(
                profile.time_coefficient)}
    config['fleet'] = {'beta_w': CONFIG_DIGITS.format(spec.beta_w),
                       'beta_ips': CONFIG_DIGITS.format(spec.beta_ips)}
    config['fit'] = {'amplitude_mode': options.amplitude_mode,
                     'fit_mode': options.fit_mode,
                     'actual_power_floor': CONFIG_DIGITS.format(
                         options.actual_power_floor)}
    with open(path, 'w', encoding='utf-8', newline='\n') as fp:
        config.write(fp)
    log.info('wrote %s', path)


def quantity(value, unit):
    """Return the unit-tagged form of a report number."""
    if isinstance(value, (int, numpy.integer)) and \
            not isinstance(value, bool):
        return {'value': int(value), 'unit': unit}
    return {'value': float(value), 'unit': unit}


def fit_fragment(result):
    """Return the report entry of a FitResult."""
    return {
        'amplitude': quantity(result.profile.amplitude, 'percent'),
        'time_coefficient': quantity(result.profile.time_coefficient,
                                     'hours'),
        'origin': 'fitted',
        'fit_mode': result.options.fit_mode,
        'amplitude_mode': result.options.amplitude_mode,
        'excluded_samples': quantity(result.sequence.excluded, 'samples'),
        'advances': quantity(len(result.sequence.points) - 1, 'advances'),
        'violations': [{
            'time_advance': quantity(x.time_advance, 'hours'),
            'rmse': quantity(x.rmse, 'percent'),
            'alpha': quantity(x.alpha, 'percent'),
            'excess': quantity(x.excess, 'percent')}
            for x in result.violations]}


def _profile_fragment(profile):
    return {'amplitude': quantity(profile.amplitude, 'percent'),
            'time_coefficient': quantity(profile.time_coefficient, 'hours'),
            'origin': 'given'}


def build_report(config, config_path=None, curves_path=None, summary=None):
    """Return the report document of a FleetConfig as nested dicts."""
    spec = config.spec
    summary = summary or summarize(spec)
    mixture = summary.mixture
    deviation = summary.deviation

    profiles = {}
    for source, profile in zip(SOURCES, (spec.wind_profile,
                                         spec.solar_profile)):
        if source in config.fits:
            profiles[source] = fit_fragment(config.fits[source])
        elif profile is not None:
            profiles[source] = _profile_fragment(profile)

    wind_a = spec.wind_profile.amplitude if spec.wind_profile else 0.0
    solar_a = spec.solar_profile.amplitude if spec.solar_profile else 0.0
    all_sources = {
        'beta_ips': quantity(spec.beta_ips, 'dimensionless'),
        'amplitude': quantity(summary.all_sources_contour.amplitude,
                              'percent'),
        'contour': {
            'amplitude': quantity(summary.all_sources_contour.amplitude,
                                  'percent'),
            'time_coefficient': quantity(
                summary.all_sources_contour.time_coefficient, 'hours')},
        'zero_uncertainty': summary.all_sources.is_zero}
    if summary.all_sources.is_zero:
        all_sources['note'] = 'no IPS generation: zero uncertainty'

    return {
        'inputs': {
            'config': str(config_path) if config_path else None,
            'beta_w': quantity(spec.beta_w, 'dimensionless'),
            'beta_ips': quantity(spec.beta_ips, 'dimensionless'),
            'fit': {'amplitude_mode': config.options.amplitude_mode,
                    'fit_mode': config.options.fit_mode,
                    'actual_power_floor': quantity(
                        config.options.actual_power_floor, 'MW')}},
        'fitted_profiles': profiles,
        'ips': {
            'amplitude': quantity(mixture.total_amplitude, 'percent'),
            'gamma': quantity(summary.gamma, 'dimensionless'),
            'coefficients': {
                'wind': quantity(spec.beta_w * wind_a, 'percent'),
                'solar': quantity((1.0 - spec.beta_w) * solar_a,
                                  'percent')},
            'contour_time_coefficient': quantity(
                summary.contour.time_coefficient, 'hours'),
            'max_deviation': {
                't_star': quantity(deviation.t_star, 'hours'),
                'delta_lambda_star': quantity(deviation.delta_lambda_star,
                                              'dimensionless'),
                'delta_alpha_star': quantity(deviation.delta_alpha_star,
                                             'percent'),
                'degenerate': deviation.degenerate}},
        'all_sources': all_sources,
        'curves': {'table': str(curves_path)} if curves_path else {}}


def dump_report(report):
    """Return `report` as a YAML string."""
    return yaml.safe_dump(report, default_flow_style=False, sort_keys=False)


def write_report(path, report):
    """Write `report` as YAML."""
    _write_text(path, dump_report(report))
