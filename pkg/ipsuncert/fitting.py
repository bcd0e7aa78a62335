"""Fit single-source profiles to forecast RMSE versus time advance.

Samples are binned by time advance, each bin is reduced to the RMSE of the
relative forecast errors (in percent of actual power) and the resulting
sequence, pinned at (0, 0), is fitted with an ExpDecayProfile.

"""
import logging
import math
import numbers
from collections import namedtuple

import numpy
from scipy.optimize import least_squares

from .exceptions import (DomainError, EmptyBinError, FitError,
                         NumericalError, ValidationError)
from .profile import ExpDecayProfile, eval_alpha

log = logging.getLogger(__name__)

AMPLITUDE_MODES = ('max', 'at_24h')
FIT_MODES = ('steepest_slope', 'least_squares')
ALIASES = {'at24': 'at_24h', 'lsq': 'least_squares',
           'paper': 'steepest_slope'}
EXCLUDED_LOW_POWER = 'excluded: low actual power'
DAY_AHEAD = 24.0
# Advances closer than this are the same bin.
ADVANCE_DECIMALS = 9


def _finite_non_negative(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError('{0} must be a real number: {1!r}'
                          .format(name, value))
    value = float(value)
    if not numpy.isfinite(value) or value < 0:
        raise DomainError('{0} must be finite and >= 0: {1!r}'
                          .format(name, value))
    return value


class ForecastSample(namedtuple('ForecastSample',
                                'sample_id time_advance forecast_power '
                                'actual_power source_id timestamp')):

    """One forecast of `forecast_power` MW issued `time_advance` hours ahead.

    `actual_power` is the generation that was then observed. `source_id` and
    `timestamp` are informational.

    """

    __slots__ = ()

    def __new__(cls, sample_id, time_advance, forecast_power, actual_power,
                source_id=None, timestamp=None):
        return super(ForecastSample, cls).__new__(
            cls, sample_id,
            _finite_non_negative('time_advance', time_advance),
            _finite_non_negative('forecast_power', forecast_power),
            _finite_non_negative('actual_power', actual_power),
            source_id, timestamp)


class RmseSequence(namedtuple('RmseSequence', 'points excluded')):

    """The (time advance, RMSE) curve of one source.

    `points` starts at exactly (0, 0) and is strictly increasing in time
    advance; `excluded` counts the samples dropped for low actual power.

    """

    __slots__ = ()

    def __new__(cls, points, excluded=0):
        points = tuple((float(t), float(r)) for t, r in points)
        if not points or points[0] != (0.0, 0.0):
            raise DomainError('an RMSE sequence must start at (0, 0)')
        times = [t for t, _ in points]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError('time advances must be strictly increasing')
        if not all(numpy.isfinite(r) and r >= 0 for _, r in points):
            raise DomainError('RMSE values must be finite and >= 0')
        return super(RmseSequence, cls).__new__(cls, points, int(excluded))

    @property
    def times(self):
        return numpy.array([t for t, _ in self.points])

    @property
    def values(self):
        return numpy.array([r for _, r in self.points])


class FitOptions(namedtuple('FitOptions',
                            'amplitude_mode actual_power_floor fit_mode')):

    """How profiles are fitted.

    :param amplitude_mode: `max` takes the largest RMSE as amplitude,
        `at_24h` the day-ahead RMSE.
    :param actual_power_floor: Samples with actual power at or below this
        many MW are excluded.
    :param fit_mode: `steepest_slope` uses the amplitude and steepest-slope
        conditions, `least_squares` a bounded two-parameter least squares fit.

    """

    __slots__ = ()

    def __new__(cls, amplitude_mode='max', actual_power_floor=0.0,
                fit_mode='steepest_slope'):
        amplitude_mode = ALIASES.get(amplitude_mode, amplitude_mode)
        fit_mode = ALIASES.get(fit_mode, fit_mode)
        if amplitude_mode not in AMPLITUDE_MODES:
            raise ValidationError('amplitude_mode', 'must be one of {0}'
                                  .format(', '.join(AMPLITUDE_MODES)))
        if fit_mode not in FIT_MODES:
            raise ValidationError('fit_mode', 'must be one of {0}'
                                  .format(', '.join(FIT_MODES)))
        try:
            floor = _finite_non_negative('actual_power_floor',
                                         actual_power_floor)
        except DomainError as exc:
            raise ValidationError('actual_power_floor', str(exc))
        return super(FitOptions, cls).__new__(cls, amplitude_mode, floor,
                                              fit_mode)


class Violation(namedtuple('Violation', 'time_advance rmse alpha')):

    """A sequence point lying above the fitted curve."""

    __slots__ = ()

    @property
    def excess(self):
        return self.rmse - self.alpha


FitResult = namedtuple('FitResult', 'profile sequence options violations')


def relative_error(sample, actual_power_floor=0.0):
    """Return 100 (P_f - P_a) / P_a, or None if the sample is excluded.

    Samples whose actual power is at or below `actual_power_floor` are
    excluded.

    """
    if sample.actual_power <= actual_power_floor:
        return None
    return (100.0 * (sample.forecast_power - sample.actual_power) /
            sample.actual_power)


def rmse_from_columns(time_advance, forecast_power, actual_power,
                      advances=None, actual_power_floor=0.0):
    """Return the RmseSequence of column-wise sample data.

    :param advances: The time advances to report. None means every distinct
        positive advance present. Advance 0 is always the pinned (0, 0).

    """
    t = numpy.asarray(time_advance, dtype=float)
    forecast = numpy.asarray(forecast_power, dtype=float)
    actual = numpy.asarray(actual_power, dtype=float)
    keys = numpy.round(t, ADVANCE_DECIMALS)
    usable = actual > actual_power_floor
    excluded = int(numpy.count_nonzero(~usable))
    if excluded:
        log.info('%d sample(s) %s (floor %g MW)', excluded,
                 EXCLUDED_LOW_POWER, actual_power_floor)

    if advances is None:
        requested = numpy.unique(keys[keys > 0])
    else:
        requested = numpy.unique(numpy.round(
            numpy.asarray(advances, dtype=float), ADVANCE_DECIMALS))
        if numpy.any(requested < 0):
            raise DomainError('negative time advance requested')
        requested = requested[requested > 0]

    errors = (100.0 * (forecast[usable] - actual[usable]) /
              actual[usable])
    usable_keys = keys[usable]
    order = numpy.argsort(usable_keys, kind='stable')
    sorted_keys = usable_keys[order]
    sorted_errors = errors[order]

    points = [(0.0, 0.0)]
    for advance in requested:
        start = numpy.searchsorted(sorted_keys, advance, side='left')
        stop = numpy.searchsorted(sorted_keys, advance, side='right')
        if stop == start:
            raise EmptyBinError(advance)
        chunk = sorted_errors[start:stop]
        # Exactly rounded: independent of sample order.
        mean_square = math.fsum(chunk * chunk) / chunk.size
        points.append((float(advance), math.sqrt(mean_square)))
    return RmseSequence(points, excluded=excluded)


def rmse_sequence(samples, advances=None, actual_power_floor=0.0):
    """Return the RmseSequence of a list of ForecastSample."""
    samples = list(samples)
    return rmse_from_columns([x.time_advance for x in samples],
                             [x.forecast_power for x in samples],
                             [x.actual_power for x in samples],
                             advances=advances,
                             actual_power_floor=actual_power_floor)


def _amplitude(times, values, mode):
    if mode == 'max':
        return float(values.max())
    matches = numpy.flatnonzero(numpy.isclose(times, DAY_AHEAD, rtol=0,
                                              atol=1e-9))
    if matches.size == 0:
        raise FitError('at_24h amplitude needs a point at t=24')
    return float(values[matches[0]])


def _least_squares(times, values, initial):
    upper = numpy.array([2.0 * values.max(), 10.0 * times.max()])
    lower = numpy.array([1e-12, 1e-12])
    start = numpy.clip(initial, lower, upper)

    def residuals(params):
        amplitude, tau = params
        return amplitude * -numpy.expm1(-times / tau) - values

    def jacobian(params):
        amplitude, tau = params
        decay = numpy.exp(-times / tau)
        return numpy.column_stack((1.0 - decay,
                                   -amplitude * times / tau ** 2 * decay))

    result = least_squares(residuals, start, jac=jacobian,
                           bounds=(lower, upper), method='trf',
                           xtol=1e-12, ftol=1e-12, gtol=1e-12)
    if not result.success:
        raise NumericalError('least squares fit failed: {0}'
                             .format(result.message))
    log.debug('least squares converged after %d evaluations: %s',
              result.nfev, result.x)
    return ExpDecayProfile(float(result.x[0]), float(result.x[1]))


def fit_profile(seq, options=None):
    """Return the ExpDecayProfile fitted to `seq`.

    In steepest_slope mode the amplitude is taken per
    `options.amplitude_mode` and the time coefficient is the amplitude
    divided by the steepest forward difference of the sequence, (0, 0)
    included.

    """
    options = options or FitOptions()
    times, values = seq.times, seq.values
    if times.size < 3:
        raise FitError('sequence needs >= 2 advances')
    slopes = numpy.diff(values) / numpy.diff(times)
    steepest = float(slopes.max())
    if steepest <= 0:
        raise NumericalError('sequence not increasing anywhere')
    amplitude = _amplitude(times, values, options.amplitude_mode)
    if amplitude <= 0:
        raise NumericalError('sequence not increasing anywhere')
    slope_fit = ExpDecayProfile(amplitude, amplitude / steepest)
    if options.fit_mode == 'steepest_slope':
        profile = slope_fit
    else:
        profile = _least_squares(times[1:], values[1:],
                                 numpy.array(slope_fit))
    log.info('fitted A=%.6g %%, tau=%.6g h (%s)', profile.amplitude,
             profile.time_coefficient, options.fit_mode)
    return profile


def coverage_check(seq, profile, tolerance=1e-9):
    """Return the Violation for every point above the curve by > tolerance.

    An empty list means the profile envelopes the whole sequence.

    """
    times, values = seq.times, seq.values
    alpha = numpy.asarray(eval_alpha(profile, times))
    return [Violation(float(t), float(r), float(a))
            for t, r, a in zip(times, values, alpha) if r - a > tolerance]


def fit_samples(samples, options=None, advances=None):
    """Build the sequence from `samples`, fit it and check coverage."""
    options = options or FitOptions()
    seq = rmse_sequence(samples, advances=advances,
                        actual_power_floor=options.actual_power_floor)
    profile = fit_profile(seq, options)
    violations = coverage_check(seq, profile)
    if violations:
        log.info('%d sequence point(s) above the fitted curve',
                 len(violations))
    return FitResult(profile, seq, options, violations)
