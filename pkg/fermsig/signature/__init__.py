"""
The fermionic signature operator per mode: assembly, spectral projectors, checks.
"""

from .assembly import (
    DEFAULT_EPS,
    assemble_signature,
    closed_form_basis_matrix,
    pairing_closed_form,
    signature_from_pair,
    signature_nodes,
)
from .checks import (
    InterpolationRow,
    IntervalIndependenceReport,
    SpatialNormalizationReport,
    WidthEstimate,
    continuity_defect,
    interpolation_profile,
    interval_independence_check,
    narrow_bump_estimate,
    narrow_bump_rule_size,
    spatial_normalization_check,
)
from .matrix import (
    DEFAULT_ZERO_TOL,
    SignatureMatrix,
    SpectralSplit,
    mass_normalization_defect,
    spectral_split,
)

__all__ = [
    # Matrices
    'SignatureMatrix',
    'SpectralSplit',
    'spectral_split',
    'mass_normalization_defect',
    'DEFAULT_ZERO_TOL',
    # Assembly
    'assemble_signature',
    'signature_from_pair',
    'signature_nodes',
    'closed_form_basis_matrix',
    'pairing_closed_form',
    'DEFAULT_EPS',
    # Checks
    'WidthEstimate',
    'IntervalIndependenceReport',
    'interval_independence_check',
    'narrow_bump_estimate',
    'narrow_bump_rule_size',
    'continuity_defect',
    'SpatialNormalizationReport',
    'spatial_normalization_check',
    'InterpolationRow',
    'interpolation_profile',
]
