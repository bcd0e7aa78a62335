"""Seeded synthetic forecast samples with a known error function.

For each time advance t the relative forecast error is drawn from a zero-mean
normal distribution whose standard deviation is alpha(t), so the RMSE of a
large bin converges to alpha(t). The output is fully determined by the seed.

"""
import logging
import numbers
from collections import namedtuple

import numpy
import pandas

from .exceptions import ValidationError
from .fitting import ForecastSample
from .io import SAMPLE_COLUMNS
from .profile import ExpDecayProfile, eval_alpha

log = logging.getLogger(__name__)


class SynthSpec(namedtuple('SynthSpec',
                           'profile samples_per_advance advances '
                           'base_actual_mw rng_seed noiseless source_id')):

    """What to generate.

    :param profile: The ground-truth ExpDecayProfile.
    :param samples_per_advance: m, the number of samples per advance.
    :param advances: Positive time advances in hours.
    :param base_actual_mw: The actual power of every sample.
    :param rng_seed: Non-negative integer seed.
    :param noiseless: Emit the error +alpha(t) for every sample instead of
        drawing it, so every bin's RMSE is exactly alpha(t).

    """

    __slots__ = ()

    def __new__(cls, profile, samples_per_advance, advances,
                base_actual_mw=100.0, rng_seed=0, noiseless=False,
                source_id='synth'):
        if not isinstance(profile, ExpDecayProfile):
            raise ValidationError('profile', 'must be an ExpDecayProfile')
        if isinstance(samples_per_advance, bool) or \
                not isinstance(samples_per_advance, numbers.Integral) or \
                samples_per_advance < 1:
            raise ValidationError('samples_per_advance',
                                  'must be an integer >= 1')
        advances = tuple(float(x) for x in advances)
        if not advances or not all(numpy.isfinite(x) and x > 0
                                   for x in advances):
            raise ValidationError('advances', 'must be nonempty and positive')
        base_actual_mw = float(base_actual_mw)
        if not numpy.isfinite(base_actual_mw) or base_actual_mw <= 0:
            raise ValidationError('base_actual_mw', 'must be positive')
        if isinstance(rng_seed, bool) or \
                not isinstance(rng_seed, numbers.Integral) or rng_seed < 0:
            raise ValidationError('rng_seed', 'must be an integer >= 0')
        return super(SynthSpec, cls).__new__(
            cls, profile, int(samples_per_advance), advances, base_actual_mw,
            int(rng_seed), bool(noiseless), source_id)


SynthColumns = namedtuple('SynthColumns',
                          'time_advance forecast_power actual_power')


def generate_columns(spec):
    """Return the SynthColumns of `spec`, advance by advance."""
    t = numpy.repeat(numpy.array(spec.advances), spec.samples_per_advance)
    sigma = eval_alpha(spec.profile, t)
    if spec.noiseless:
        errors = sigma
    else:
        rng = numpy.random.default_rng(spec.rng_seed)
        errors = rng.standard_normal(t.size) * sigma
    actual = numpy.full(t.size, spec.base_actual_mw)
    # Generation forecasts cannot be negative.
    forecast = numpy.clip(actual * (1.0 + errors / 100.0), 0.0, None)
    clipped = int(numpy.count_nonzero(errors < -100.0))
    if clipped:
        log.warning('%d synthetic forecast(s) clipped at 0 MW', clipped)
    log.debug('generated %d samples over %d advances (seed %d)', t.size,
              len(spec.advances), spec.rng_seed)
    return SynthColumns(t, forecast, actual)


def generate_frame(spec):
    """Return the samples of `spec` as a DataFrame in sample CSV layout."""
    columns = generate_columns(spec)
    return pandas.DataFrame({'source_id': spec.source_id,
                             'time_advance_h': columns.time_advance,
                             'forecast_mw': columns.forecast_power,
                             'actual_mw': columns.actual_power},
                            columns=list(SAMPLE_COLUMNS))


def generate_samples(spec):
    """Return the samples of `spec` as a list of ForecastSample."""
    columns = generate_columns(spec)
    return [ForecastSample(index + 1, t, forecast, actual, spec.source_id)
            for index, (t, forecast, actual) in enumerate(zip(*columns))]
