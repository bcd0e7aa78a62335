"""Forecast-error statistical functions of intermittent power sources."""
from .exceptions import (DomainError, EmptyBinError, FitError,
                         IpsUncertException, NumericalError, ParseError,
                         ValidationError)
from .fitting import (FitOptions, FitResult, ForecastSample, RmseSequence,
                      coverage_check, fit_profile, fit_samples,
                      relative_error, rmse_sequence)
from .fleet import (FleetSpec, PowerSnapshot, all_sources_contour,
                    compose_all_sources, compose_ips, derive_proportions,
                    ips_contour)
from .mixture import (DeviationReport, MixtureProfile, ZeroUncertainty,
                      contour_tau0, delta_lambda, equivalent_tau,
                      eval_contour, eval_lambda_sum, eval_sum, max_deviation,
                      mixture_from_profiles)
from .profile import (ExpDecayProfile, conservation_residual, eval_alpha,
                      eval_lambda, eval_lambda_derivative)

__version__ = '0.1.0'

__all__ = ('DeviationReport', 'DomainError', 'EmptyBinError',
           'ExpDecayProfile', 'FitError', 'FitOptions', 'FitResult',
           'FleetSpec', 'ForecastSample', 'IpsUncertException',
           'MixtureProfile', 'NumericalError', 'ParseError', 'PowerSnapshot',
           'RmseSequence', 'ValidationError', 'ZeroUncertainty',
           'all_sources_contour', 'compose_all_sources', 'compose_ips',
           'conservation_residual', 'contour_tau0', 'coverage_check',
           'delta_lambda', 'derive_proportions', 'equivalent_tau',
           'eval_alpha', 'eval_contour', 'eval_lambda',
           'eval_lambda_derivative', 'eval_lambda_sum', 'eval_sum',
           'fit_profile', 'fit_samples', 'ips_contour', 'max_deviation',
           'mixture_from_profiles', 'relative_error', 'rmse_sequence')
