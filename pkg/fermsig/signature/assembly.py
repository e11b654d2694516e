"""
Signature matrices of de Sitter modes from the in/out scattering data.

For solutions with Cauchy data u0, u0~ at t = 0 the pairing of the
mass-integrated families is

    pi * sum_s integral of conj(eta) eta~ (W_s u0)^dagger sigma3 (W_s u0~) dm

so in the Cauchy basis S_m = (W_+^dagger sigma3 W_+ + W_-^dagger sigma3 W_-) / 2.
"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..core.intervals import two_lambda_from
from ..core.profiles import MassProfile
from ..core.quadrature import QuadratureRule
from ..desitter.asymptotics import ScatteringPair, scattering_matrices
from ..desitter.modes import DeSitterMode
from ..massosc.family import MassFamily
from .matrix import SignatureMatrix

logger = logging.getLogger(__name__)

DEFAULT_EPS = 1e-12


def signature_from_pair(pair: ScatteringPair) -> SignatureMatrix:
    entries = 0.5 * (pair.asymptotic_signature(1) + pair.asymptotic_signature(-1))
    return SignatureMatrix(entries, lam=pair.mode.lam, mass=pair.mode.mass)


def assemble_signature(lam, m: float, eps: float = DEFAULT_EPS,
                       rtol: Optional[float] = None) -> SignatureMatrix:
    """
    Signature matrix of one de Sitter mode.

    Args:
        lam: Half-integer eigenvalue (float, string or Fraction)
        m: Mass
        eps: Truncation tolerance of the asymptotic coefficients
        rtol: Integrator tolerance (default matched to eps)

    Returns:
        SignatureMatrix in the Cauchy basis
    """
    mode = DeSitterMode(two_lambda_from(lam), float(m))
    s = signature_from_pair(scattering_matrices(mode, eps, rtol))
    if s.hermiticity_defect > 1e-12:
        logger.warning(f"Signature matrix at lambda={mode.lam}, m={m} has Hermiticity defect {s.hermiticity_defect:.2e}")
    return s


def signature_nodes(two_lambda: int, masses: Sequence[float], eps: float = DEFAULT_EPS,
                    rtol: Optional[float] = None) -> np.ndarray:
    """Signature entries stacked as (n, 2, 2) for the given masses."""
    return np.stack([
        signature_from_pair(scattering_matrices(DeSitterMode(two_lambda, float(m)), eps, rtol)).entries
        for m in masses
    ]) if len(masses) else np.zeros((0, 2, 2), dtype=complex)


def closed_form_basis_matrix(profile_a: MassProfile, profile_b: MassProfile, two_lambda: int,
                             quad: QuadratureRule, eps: float = DEFAULT_EPS,
                             rtol: Optional[float] = None) -> np.ndarray:
    """
    values[i, j] = integral of conj(eta_a) eta_b (e_i | S_m e_j)_m dm.

    Nodes where either profile vanishes are skipped.
    """
    eta = np.conj(profile_a.value(quad.nodes)) * profile_b.value(quad.nodes)
    active = eta != 0
    entries = signature_nodes(two_lambda, quad.nodes[active], eps, rtol)
    weights = quad.weights[active] * eta[active]
    return 2.0 * math.pi * np.tensordot(weights, entries, axes=(0, 0))


def pairing_closed_form(a: MassFamily, b: MassFamily, quad: QuadratureRule,
                        eps: float = DEFAULT_EPS, rtol: Optional[float] = None) -> complex:
    """
    integral of (psi_m | S_m phi_m)_m dm for two single-mode families.

    Raises:
        ValueError: If the families carry different eigenvalues
    """
    if a.two_lambda != b.two_lambda:
        raise ValueError(f"Families live in different spatial modes (lambda={a.lam} vs {b.lam})")
    matrix = closed_form_basis_matrix(a.profile, b.profile, a.two_lambda, quad, eps, rtol)
    return complex(np.vdot(a.u0.as_array(), matrix @ b.u0.as_array()))
