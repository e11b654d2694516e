"""
Shared numeric vocabulary: mass intervals, profiles, quadrature, spinor pairs.
"""

from .intervals import MassInterval, ModeIndex, s3_spectrum, two_lambda_from
from .profiles import MassProfile, ProfileKind, bump_value
from .quadrature import (
    DecayReport,
    QuadratureRule,
    TimeIntegral,
    decay_constant,
    gauss_legendre,
    gauss_legendre_on,
    integrate_time_density,
    oscillatory_weights,
    tail_integral,
)
from .spinors import SIGMA3, SpinorPair, mode_scalar_product, mode_spacetime_density

__all__ = [
    # Intervals and modes
    'MassInterval',
    'ModeIndex',
    's3_spectrum',
    'two_lambda_from',
    # Profiles
    'MassProfile',
    'ProfileKind',
    'bump_value',
    # Quadrature
    'QuadratureRule',
    'gauss_legendre',
    'gauss_legendre_on',
    'oscillatory_weights',
    'TimeIntegral',
    'integrate_time_density',
    'tail_integral',
    'DecayReport',
    'decay_constant',
    # Spinors
    'SIGMA3',
    'SpinorPair',
    'mode_scalar_product',
    'mode_spacetime_density',
]
