"""Weighted sums of exponential profiles and the functions derived from them.

A mixture is stored normalized: weights rho_i summing to one, their time
coefficients tau_i and the total amplitude A_sum. On top of the plain sum this
module provides the equivalent time coefficient tau(t), which makes a single
exponential match the sum exactly at every t, and the contour function, the
fixed-tau0 exponential that bounds the sum from above.

"""
import logging
import math
import numbers
from collections import namedtuple

import numpy
from scipy.optimize import brentq, minimize_scalar
from scipy.special import logsumexp

from .exceptions import DomainError, NumericalError
from .profile import ExpDecayProfile, shaped, time_advance

log = logging.getLogger(__name__)

WEIGHT_SUM_TOLERANCE = 1e-12
# Below this fraction of tau0 the equivalent time coefficient is tau0.
SMALL_T_FRACTION = 1e-9
SCAN_POINTS = 2001
SEARCH_SPAN = 10.0


class MixtureProfile(namedtuple('MixtureProfile',
                                'weights time_coefficients total_amplitude')):

    """A_sum * sum_i rho_i (1 - exp(-t / tau_i)).

    :param weights: rho_i, positive and summing to 1.
    :param time_coefficients: tau_i in hours, one per weight.
    :param total_amplitude: A_sum in percent.

    """

    __slots__ = ()
    is_zero = False

    def __new__(cls, weights, time_coefficients, total_amplitude):
        weights = tuple(float(x) for x in weights)
        taus = tuple(float(x) for x in time_coefficients)
        if not weights:
            raise DomainError('a mixture needs at least one component')
        if len(weights) != len(taus):
            raise DomainError('{0} weights for {1} time coefficients'
                              .format(len(weights), len(taus)))
        if not all(numpy.isfinite(x) and x > 0 for x in weights):
            raise DomainError('weights must be positive: {0}'.format(weights))
        if not all(numpy.isfinite(x) and x > 0 for x in taus):
            raise DomainError('time coefficients must be positive: {0}'
                              .format(taus))
        if abs(math.fsum(weights) - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise DomainError('weights must sum to 1: {0!r}'
                              .format(math.fsum(weights)))
        total_amplitude = cls._check_amplitude(total_amplitude)
        return super(MixtureProfile, cls).__new__(cls, weights, taus,
                                                  total_amplitude)

    @staticmethod
    def _check_amplitude(value):
        if isinstance(value, bool) or not isinstance(value, numbers.Real) \
                or not numpy.isfinite(value) or value <= 0:
            raise DomainError('total_amplitude must be positive: {0!r}'
                              .format(value))
        return float(value)

    @property
    def components(self):
        """Return the (rho_i, tau_i) pairs."""
        return tuple(zip(self.weights, self.time_coefficients))

    @property
    def rho(self):
        return numpy.array(self.weights)

    @property
    def tau(self):
        return numpy.array(self.time_coefficients)


class ZeroUncertainty(MixtureProfile):

    """A mixture diluted to nothing.

    It keeps the component shape of the mixture it came from but carries a
    total amplitude of exactly zero, so every alpha evaluation returns 0.

    """

    __slots__ = ()
    is_zero = True

    @staticmethod
    def _check_amplitude(value):
        if value != 0:
            raise DomainError('ZeroUncertainty amplitude must be 0: {0!r}'
                              .format(value))
        return 0.0


class DeviationReport(namedtuple('DeviationReport',
                                 't_star delta_lambda_star delta_alpha_star '
                                 'degenerate')):

    """Where and how far the contour function exceeds the sum.

    `t_star` is in hours, `delta_lambda_star` dimensionless and
    `delta_alpha_star` in percent.

    """

    __slots__ = ()


def mixture_from_profiles(entries):
    """Return the MixtureProfile of sum_i w_i alpha_i(t).

    :param entries: An iterable of (w_i, profile) pairs. Entries with
        w_i A_i = 0 are dropped; a profile may be None when its weight is 0.

    """
    amplitudes = []
    taus = []
    for weight, profile in entries:
        if isinstance(weight, bool) or not isinstance(weight, numbers.Real) \
                or not numpy.isfinite(weight) or weight < 0:
            raise DomainError('mixture weight must be >= 0: {0!r}'
                              .format(weight))
        if weight == 0:
            continue
        if not isinstance(profile, ExpDecayProfile):
            raise DomainError('expected an ExpDecayProfile, got {0!r}'
                              .format(profile))
        amplitudes.append(weight * profile.amplitude)
        taus.append(profile.time_coefficient)
    total = math.fsum(amplitudes)
    kept = [(x / total, tau) for x, tau in zip(amplitudes, taus)
            if total > 0 and x / total > 0]
    if not kept:
        raise DomainError('empty mixture')
    weights, taus = zip(*kept)
    return MixtureProfile(weights, taus, total)


def _exponents(m, t):
    """Return -t / tau_i with one trailing axis for the components."""
    return -numpy.multiply.outer(t, 1.0 / m.tau)


def survival(m, t):
    """Return sum_i rho_i exp(-t / tau_i), the complement of lambda_sum."""
    t = time_advance(t)
    return shaped(numpy.exp(_exponents(m, t)).dot(m.rho))


def eval_lambda_sum(m, t):
    """Return sum_i rho_i (1 - exp(-t / tau_i))."""
    t = time_advance(t)
    return shaped((-numpy.expm1(_exponents(m, t))).dot(m.rho))


def eval_sum(m, t):
    """Return alpha_sum(t) = A_sum lambda_sum(t) in percent."""
    return shaped(m.total_amplitude * eval_lambda_sum(m, t))


def contour_tau0(m):
    """Return tau0, the rho-weighted harmonic mean of the tau_i."""
    return 1.0 / math.fsum(r / x for r, x in m.components)


def _log_survival(m, t):
    exponents = _exponents(m, t)
    # log1p keeps precision while the survival is near 1, logsumexp once it
    # underflows.
    near_one = numpy.log1p(numpy.expm1(exponents).dot(m.rho))
    far = logsumexp(exponents, b=m.rho, axis=-1)
    return numpy.where(near_one > math.log(0.5), near_one, far)


def equivalent_tau(m, t):
    """Return tau(t) such that 1 - exp(-t / tau(t)) equals lambda_sum(t).

    tau(0) is the limit tau0 and tau(t) rises monotonically towards the
    largest tau_i.

    """
    t = time_advance(t)
    tau0 = contour_tau0(m)
    small = numpy.asarray(t) < SMALL_T_FRACTION * tau0
    with numpy.errstate(divide='ignore', invalid='ignore'):
        value = -t / _log_survival(m, t)
    return shaped(numpy.where(small, tau0, value))


def equivalent_profile_at(m, t):
    """Return A_sum (1 - exp(-t / tau(t))), which coincides with eval_sum."""
    t = time_advance(t)
    tau_t = numpy.asarray(equivalent_tau(m, t))
    with numpy.errstate(divide='ignore', invalid='ignore'):
        ratio = numpy.where(tau_t > 0, t / tau_t, 0.0)
    return shaped(m.total_amplitude * -numpy.expm1(-ratio))


def eval_lambda_contour(m, t):
    """Return the normalized contour 1 - exp(-t / tau0)."""
    t = time_advance(t)
    return shaped(-numpy.expm1(-t / contour_tau0(m)))


def eval_contour(m, t):
    """Return the contour A_sum (1 - exp(-t / tau0)) in percent."""
    return shaped(m.total_amplitude * eval_lambda_contour(m, t))


def delta_lambda(m, t):
    """Return how far the normalized contour lies above lambda_sum."""
    return shaped(eval_lambda_contour(m, t) - eval_lambda_sum(m, t))


def deviation_residual(m, t):
    """Return d(delta_lambda)/dt.

    (1 / tau0) exp(-t / tau0) - sum_i (rho_i / tau_i) exp(-t / tau_i), which
    is zero at t = 0 and at the maximum deviation point.

    """
    t = time_advance(t)
    tau0 = contour_tau0(m)
    pull = numpy.exp(_exponents(m, t)).dot(m.rho / m.tau)
    return shaped(numpy.exp(-t / tau0) / tau0 - pull)


def reciprocal_offsets(m):
    """Return 1 / tau_i - 1 / tau0 for each component."""
    return 1.0 / m.tau - 1.0 / contour_tau0(m)


def max_time_coefficient(m):
    """Return (tau_hat, rho_hat): the largest tau_i and its total weight."""
    tau_hat = max(m.time_coefficients)
    return tau_hat, math.fsum(r for r, x in m.components if x == tau_hat)


def _degenerate():
    return DeviationReport(0.0, 0.0, 0.0, True)


def max_deviation(m):
    """Return the DeviationReport at the maximum of delta_lambda.

    A coarse scan over [0, 10 max tau_i] isolates the single interior
    maximum, a bounded golden-section search refines it and a bracketed root
    of deviation_residual polishes the location.

    """
    taus = m.tau
    if taus.max() - taus.min() <= 1e-12 * taus.max():
        return _degenerate()
    upper = SEARCH_SPAN * taus.max()
    grid = numpy.linspace(0.0, upper, SCAN_POINTS)
    index = int(numpy.argmax(delta_lambda(m, grid)))
    low = grid[max(index - 1, 0)]
    high = grid[min(index + 1, SCAN_POINTS - 1)]
    log.debug('max deviation bracket [%g, %g]', low, high)

    result = minimize_scalar(lambda x: -delta_lambda(m, x),
                             bounds=(low, high), method='bounded',
                             options={'xatol': 1e-9})
    if not result.success:
        raise NumericalError('maximum deviation search failed: {0}'
                             .format(result.message))
    t_star = float(result.x)

    if deviation_residual(m, low) > 0 > deviation_residual(m, high):
        try:
            t_star = brentq(lambda x: deviation_residual(m, x), low, high,
                            xtol=1e-14, rtol=1e-15)
        except (RuntimeError, ValueError) as exc:
            raise NumericalError('maximum deviation polish failed: {0}'
                                 .format(exc))
    peak = delta_lambda(m, t_star)
    if peak <= 0:
        return _degenerate()
    log.debug('t* = %.12g h, delta_lambda* = %.12g', t_star, peak)
    return DeviationReport(t_star, peak, m.total_amplitude * peak, False)
