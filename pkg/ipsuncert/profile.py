"""Statistical function of forecast error for a single intermittent source.

The function family is alpha(t) = A (1 - exp(-t / tau)) where A is the
asymptotic RMSE level in percent of actual power and tau is the time
coefficient in hours. lambda(t) = alpha(t) / A is the normalized form.

Every evaluation accepts either a scalar time advance or a numpy array of them
and returns a value of the same shape.

"""
import numbers
from collections import namedtuple

import numpy

from .exceptions import DomainError


def _positive(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError('{0} must be a real number: {1!r}'
                          .format(name, value))
    value = float(value)
    if not numpy.isfinite(value) or value <= 0:
        raise DomainError('{0} must be positive and finite: {1!r}'
                          .format(name, value))
    return value


def _order(order):
    if isinstance(order, bool) or not isinstance(order, numbers.Integral):
        raise DomainError('derivative order must be an integer: {0!r}'
                          .format(order))
    if order < 1:
        raise DomainError('derivative order must be >= 1 (use eval_lambda '
                          'for order 0): {0}'.format(order))
    return int(order)


def shaped(value):
    """Return a float for 0-d results and the array otherwise."""
    return float(value) if numpy.ndim(value) == 0 else value


def time_advance(t):
    """Return `t` as validated time advance(s) in hours.

    Scalars come back as float, sequences as a float ndarray.

    """
    try:
        values = numpy.asarray(t, dtype=float)
    except (TypeError, ValueError):
        raise DomainError('time advance must be numeric: {0!r}'.format(t))
    if not numpy.all(numpy.isfinite(values)):
        raise DomainError('time advance must be finite: {0!r}'.format(t))
    if numpy.any(values < 0):
        raise DomainError('negative time advance: {0!r}'.format(t))
    return shaped(values)


class ExpDecayProfile(namedtuple('ExpDecayProfile',
                                 'amplitude time_coefficient')):

    """A single source's forecast-error function.

    :param amplitude: A in percent, the limit of alpha(t) as t grows.
    :param time_coefficient: tau in hours.

    """

    __slots__ = ()

    def __new__(cls, amplitude, time_coefficient):
        return super(ExpDecayProfile, cls).__new__(
            cls, _positive('amplitude', amplitude),
            _positive('time_coefficient', time_coefficient))

    def __call__(self, t):
        return eval_alpha(self, t)


def eval_lambda(tau, t):
    """Return 1 - exp(-t / tau)."""
    tau = _positive('tau', tau)
    t = time_advance(t)
    return shaped(-numpy.expm1(-t / tau))


def eval_alpha(profile, t):
    """Return A (1 - exp(-t / tau)) in percent."""
    return shaped(profile.amplitude *
                  eval_lambda(profile.time_coefficient, t))


def eval_lambda_derivative(tau, t, order):
    """Return the `order`-th derivative of lambda with respect to t.

    The closed form is (-1)^(i - 1) tau^(-i) exp(-t / tau).

    """
    order = _order(order)
    tau = _positive('tau', tau)
    t = time_advance(t)
    sign = 1.0 if order % 2 == 1 else -1.0
    return shaped(sign * tau ** -order * numpy.exp(-t / tau))


def eval_alpha_derivative(profile, t, order):
    """Return the `order`-th derivative of alpha, A times that of lambda."""
    return shaped(profile.amplitude * eval_lambda_derivative(
        profile.time_coefficient, t, order))


def conservation_residual(tau, t, order):
    """Return tau lambda^(i) + lambda^(i-1) minus its constant value.

    The constant is 1 for the first derivative and 0 for every higher one, so
    the residual of the analytic derivatives vanishes to rounding.

    """
    order = _order(order)
    current = eval_lambda_derivative(tau, t, order)
    if order == 1:
        previous, target = eval_lambda(tau, t), 1.0
    else:
        previous, target = eval_lambda_derivative(tau, t, order - 1), 0.0
    return shaped(tau * current + previous - target)


def alpha_conservation_residual(profile, t, order):
    """Return the conservation residual expressed on alpha.

    alpha^(i)(t) / alpha^(1)(0) + alpha^(i-1)(t) / A minus 1 for i = 1 and
    minus 0 otherwise.

    """
    order = _order(order)
    initial_slope = eval_alpha_derivative(profile, 0.0, 1)
    current = eval_alpha_derivative(profile, t, order)
    if order == 1:
        previous, target = eval_alpha(profile, t), 1.0
    else:
        previous, target = eval_alpha_derivative(profile, t, order - 1), 0.0
    return shaped(current / initial_slope + previous / profile.amplitude -
                  target)
