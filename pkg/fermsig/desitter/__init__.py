"""
Mode dynamics in de Sitter space-time: evolution, asymptotics, scattering.
"""

from .asymptotics import (
    AsymptoticData,
    GronwallReport,
    GronwallSample,
    ScatteringPair,
    SmoothnessReport,
    asymptotic_derivative_check,
    asymptotic_rtol,
    bogoliubov_coefficient,
    extract_asymptotics,
    gronwall_check,
    gronwall_envelope,
    scattering_matrices,
    time_reversal_defect,
    truncation_time,
)
from .modes import (
    DEFAULT_RTOL,
    LAMBDA_BUDGET_TWO,
    REFERENCE_METHOD,
    DeSitterMode,
    IntegrationError,
    dress,
    evolve_f,
    evolve_mode,
    strip,
)
from .trajectories import FundamentalSolution, TrajectoryCache, fundamental_solution

__all__ = [
    # Mode equation
    'DeSitterMode',
    'IntegrationError',
    'evolve_mode',
    'evolve_f',
    'dress',
    'strip',
    'DEFAULT_RTOL',
    'REFERENCE_METHOD',
    'LAMBDA_BUDGET_TWO',
    # Asymptotics
    'AsymptoticData',
    'ScatteringPair',
    'extract_asymptotics',
    'scattering_matrices',
    'gronwall_envelope',
    'truncation_time',
    'asymptotic_rtol',
    'time_reversal_defect',
    'bogoliubov_coefficient',
    'GronwallSample',
    'GronwallReport',
    'gronwall_check',
    'SmoothnessReport',
    'asymptotic_derivative_check',
    # Trajectories
    'FundamentalSolution',
    'TrajectoryCache',
    'fundamental_solution',
]
