"""
Ultrastatic space-times: exact evolution and frequency splitting per mode.
"""

from .integration import (
    FrequencyIntegrator,
    p_integrate_ultrastatic,
    pairing_closed_form_ultrastatic,
    pairing_time_domain_ultrastatic,
    ultrastatic_decay_report,
)
from .model import (
    FrequencyData,
    SpectrumRow,
    UltrastaticModel,
    evolution_matrix,
    frequency_split,
    mode_matrix,
    signature_spectrum,
    ultrastatic_signature,
)

__all__ = [
    'UltrastaticModel',
    'FrequencyData',
    'SpectrumRow',
    'frequency_split',
    'evolution_matrix',
    'ultrastatic_signature',
    'signature_spectrum',
    'mode_matrix',
    'FrequencyIntegrator',
    'p_integrate_ultrastatic',
    'ultrastatic_decay_report',
    'pairing_time_domain_ultrastatic',
    'pairing_closed_form_ultrastatic',
]
