"""Compose wind and solar profiles into IPS and all-sources functions.

The IPS sum weights the wind and solar functions by their shares of IPS
generation. Scaling to all power sources multiplies by the IPS share of total
generation: the normalized shape and every time coefficient are inherited
unchanged while the amplitude is diluted.

"""
import logging
import numbers
from collections import namedtuple

import numpy

from .exceptions import DomainError
from .mixture import (MixtureProfile, ZeroUncertainty, contour_tau0,
                      max_deviation, mixture_from_profiles)
from .profile import ExpDecayProfile

log = logging.getLogger(__name__)


def _proportion(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError('{0} must be a constant proportion: {1!r}'
                          .format(name, value))
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError('{0} must be within [0, 1]: {1!r}'
                          .format(name, value))
    return value


class FleetSpec(namedtuple('FleetSpec',
                           'wind_profile solar_profile beta_w beta_ips')):

    """Wind and solar profiles plus the constant generation proportions.

    :param beta_w: Wind share of IPS generation.
    :param beta_ips: IPS share of total generation.

    A profile may be None only when its share of IPS generation is zero.

    """

    __slots__ = ()

    def __new__(cls, wind_profile, solar_profile, beta_w, beta_ips):
        beta_w = _proportion('beta_w', beta_w)
        beta_ips = _proportion('beta_ips', beta_ips)
        for name, profile, share in (('wind_profile', wind_profile, beta_w),
                                     ('solar_profile', solar_profile,
                                      1.0 - beta_w)):
            if profile is None and share > 0:
                raise DomainError('{0} is required when its share is {1:g}'
                                  .format(name, share))
            if profile is not None and \
                    not isinstance(profile, ExpDecayProfile):
                raise DomainError('{0} must be an ExpDecayProfile: {1!r}'
                                  .format(name, profile))
        return super(FleetSpec, cls).__new__(cls, wind_profile, solar_profile,
                                             beta_w, beta_ips)


class PowerSnapshot(namedtuple('PowerSnapshot',
                               'wind_mw solar_mw controllable_mw')):

    """Generation in MW at time advance zero."""

    __slots__ = ()

    def __new__(cls, wind_mw, solar_mw, controllable_mw=0.0):
        values = []
        for name, value in (('wind_mw', wind_mw), ('solar_mw', solar_mw),
                            ('controllable_mw', controllable_mw)):
            value = float(value)
            if not numpy.isfinite(value) or value < 0:
                raise DomainError('{0} must be finite and >= 0: {1!r}'
                                  .format(name, value))
            values.append(value)
        return super(PowerSnapshot, cls).__new__(cls, *values)


ContourParameters = namedtuple('ContourParameters',
                               'amplitude time_coefficient')


def wind_share(snapshot):
    """Return beta_w = P_w / (P_w + P_s)."""
    ips = snapshot.wind_mw + snapshot.solar_mw
    if ips <= 0:
        raise DomainError('zero IPS power: beta_w is undefined')
    return snapshot.wind_mw / ips


def ips_share(snapshot):
    """Return beta_ips = (P_w + P_s) / (P_w + P_s + P_c)."""
    ips = snapshot.wind_mw + snapshot.solar_mw
    total = ips + snapshot.controllable_mw
    if total <= 0:
        raise DomainError('zero total power: beta_ips is undefined')
    return ips / total


def derive_proportions(snapshot):
    """Return (beta_w, beta_ips) for a generation snapshot."""
    return wind_share(snapshot), ips_share(snapshot)


def compose_ips(spec):
    """Return (mixture, gamma) for beta_w alpha_w(t) + (1 - beta_w) alpha_s(t).

    gamma is the wind share of the IPS amplitude, beta_w A_w / A_ips.

    """
    mixture = mixture_from_profiles([(spec.beta_w, spec.wind_profile),
                                     (1.0 - spec.beta_w, spec.solar_profile)])
    gamma = 0.0
    if spec.beta_w > 0:
        gamma = (spec.beta_w * spec.wind_profile.amplitude /
                 mixture.total_amplitude)
    log.debug('A_ips=%.12g gamma=%.12g', mixture.total_amplitude, gamma)
    return mixture, gamma


def ips_contour(mixture):
    """Return the contour of an IPS mixture as an ExpDecayProfile."""
    if mixture.is_zero:
        raise DomainError('a zero-uncertainty mixture has no contour profile')
    return ExpDecayProfile(mixture.total_amplitude, contour_tau0(mixture))


def compose_all_sources(mixture, beta_ips):
    """Return the all-sources mixture, the IPS one scaled by `beta_ips`.

    beta_ips = 0 yields a ZeroUncertainty with the same components.

    """
    beta_ips = _proportion('beta_ips', beta_ips)
    if beta_ips == 0:
        return ZeroUncertainty(mixture.weights, mixture.time_coefficients, 0)
    if beta_ips == 1:
        return mixture
    return MixtureProfile(mixture.weights, mixture.time_coefficients,
                          beta_ips * mixture.total_amplitude)


def all_sources_contour(mixture, beta_ips):
    """Return the ContourParameters (A_g, tau0) of the all-sources contour."""
    diluted = compose_all_sources(mixture, beta_ips)
    return ContourParameters(diluted.total_amplitude, contour_tau0(diluted))


def all_sources_amplitude(spec):
    """Return A_g = beta_ips beta_w A_w + (beta_ips - beta_ips beta_w) A_s."""
    wind = spec.wind_profile.amplitude if spec.wind_profile else 0.0
    solar = spec.solar_profile.amplitude if spec.solar_profile else 0.0
    return (spec.beta_ips * spec.beta_w * wind +
            (spec.beta_ips - spec.beta_ips * spec.beta_w) * solar)


ScenarioSummary = namedtuple('ScenarioSummary',
                             'mixture gamma contour deviation all_sources '
                             'all_sources_contour')


def summarize(spec):
    """Return the ScenarioSummary of every IPS and all-sources quantity."""
    mixture, gamma = compose_ips(spec)
    summary = ScenarioSummary(
        mixture, gamma, ips_contour(mixture), max_deviation(mixture),
        compose_all_sources(mixture, spec.beta_ips),
        all_sources_contour(mixture, spec.beta_ips))
    log.info('A_ips=%.6g gamma=%.6g tau0=%.6g A_g=%.6g',
             mixture.total_amplitude, gamma,
             summary.contour.time_coefficient,
             summary.all_sources_contour.amplitude)
    return summary
