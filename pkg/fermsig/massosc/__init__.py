"""
Mass integration, the time-domain space-time pairing, and mass oscillation bounds.
"""

from .family import MassFamily, MultiModeFamily, multiplicity_of
from .integration import DEFAULT_HORIZON, MassIntegrator, decay_report, p_integrate
from .pairing import (
    DEFAULT_T_MAX,
    MopBoundReport,
    PairingMatrix,
    PairingResult,
    pairing_basis_matrix,
    pairing_multimode,
    pairing_time_domain,
    strong_mop_bound_check,
    weak_mop_bound_check,
)

__all__ = [
    # Families
    'MassFamily',
    'MultiModeFamily',
    'multiplicity_of',
    # Mass integration
    'MassIntegrator',
    'p_integrate',
    'decay_report',
    'DEFAULT_HORIZON',
    # Pairing
    'PairingResult',
    'PairingMatrix',
    'pairing_time_domain',
    'pairing_basis_matrix',
    'pairing_multimode',
    'DEFAULT_T_MAX',
    # Bounds
    'MopBoundReport',
    'strong_mop_bound_check',
    'weak_mop_bound_check',
]
