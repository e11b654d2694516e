"""
fermsig - Fermionic signature operators of single Dirac modes

This package computes the signature operator of Dirac modes in de Sitter and
ultrastatic space-times. Organized into subpackages:
- core: mass intervals, profiles, quadrature and mode inner products
- desitter: mode evolution, asymptotics and scattering matrices
- ultrastatic: exact frequency splitting and evolution
- massosc: mass integration and the time-domain space-time pairing
- signature: signature matrices, spectral projectors and property checks
- cli: the fermsig command-line tool
"""

from .core import MassInterval, MassProfile, SpinorPair, gauss_legendre
from .desitter import DeSitterMode, IntegrationError, evolve_mode, scattering_matrices
from .logging_config import setup_logging
from .massosc import MassFamily, p_integrate, pairing_time_domain
from .signature import SignatureMatrix, assemble_signature, spectral_split
from .ultrastatic import UltrastaticModel, frequency_split, ultrastatic_signature

__version__ = "1.0.0"

__all__ = [
    # Core
    'MassInterval',
    'MassProfile',
    'SpinorPair',
    'gauss_legendre',
    # de Sitter
    'DeSitterMode',
    'IntegrationError',
    'evolve_mode',
    'scattering_matrices',
    # Mass oscillation
    'MassFamily',
    'p_integrate',
    'pairing_time_domain',
    # Signature
    'SignatureMatrix',
    'assemble_signature',
    'spectral_split',
    # Ultrastatic
    'UltrastaticModel',
    'frequency_split',
    'ultrastatic_signature',
    # Logging
    'setup_logging',
]
