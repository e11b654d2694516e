"""
Mass integration and space-time pairing for ultrastatic modes.

The phases e^{-+i omega t} depend on m through omega = sqrt(lambda^2 + m^2).
The oscillatory rule therefore works in omega: dm = (omega / m) d omega and the
amplitude eta(m(omega)) (omega / m) Pi_+-(m) u0 is smooth on the image interval.
"""

import logging
import math
from typing import Sequence

import numpy as np

from ..core.profiles import MassProfile
from ..core.quadrature import (
    DecayReport,
    QuadratureRule,
    decay_constant,
    gauss_legendre_on,
    integrate_time_density,
    oscillatory_weights,
)
from ..core.spinors import SIGMA3, SpinorPair
from ..massosc.integration import METHODS
from ..massosc.pairing import PAIRING_EPSABS, PAIRING_EPSREL, PairingResult
from .model import projector_stack

logger = logging.getLogger(__name__)


class FrequencyIntegrator:
    """P(t) = sum_k w_k eta(m_k) U_{m_k}(t) for one profile and eigenvalue."""

    def __init__(self, profile: MassProfile, lam: float, quad: QuadratureRule, method: str = "filon"):
        if method not in METHODS:
            raise ValueError(f"Unknown mass integration method {method!r}; expected one of {METHODS}")
        interval = profile.interval
        if quad.lower < interval.m_lower - 1e-12 or quad.upper > interval.m_upper + 1e-12:
            raise ValueError(
                f"Quadrature range ({quad.lower}, {quad.upper}) leaves the mass interval "
                f"({interval.m_lower}, {interval.m_upper})"
            )
        self.lam = float(lam)
        self.method = method
        if method == "gauss":
            self.rule = quad
            masses = quad.nodes
            jacobian = np.ones_like(masses)
        else:
            self.rule = gauss_legendre_on(math.hypot(lam, quad.lower), math.hypot(lam, quad.upper), quad.size)
            masses = np.sqrt(self.rule.nodes ** 2 - self.lam ** 2)
            jacobian = self.rule.nodes / masses
        self.omega, pi_plus, pi_minus = projector_stack(self.lam, masses)
        weight = profile.value(masses) * jacobian
        self._amp_plus = weight[:, None, None] * pi_plus
        self._amp_minus = weight[:, None, None] * pi_minus

    def matrix(self, t: float) -> np.ndarray:
        if self.method == "filon":
            w_plus = oscillatory_weights(self.rule, t, 1)
            w_minus = oscillatory_weights(self.rule, t, -1)
        else:
            phase = np.exp(-1j * self.omega * t)
            w_plus = self.rule.weights * phase
            w_minus = self.rule.weights * np.conj(phase)
        return np.tensordot(w_plus, self._amp_plus, axes=(0, 0)) + np.tensordot(w_minus, self._amp_minus, axes=(0, 0))

    def apply(self, u0: SpinorPair, t: float) -> SpinorPair:
        return SpinorPair.from_array(self.matrix(t) @ u0.as_array())


def p_integrate_ultrastatic(profile: MassProfile, u0: SpinorPair, lam: float, t: float,
                            quad: QuadratureRule, method: str = "gauss") -> SpinorPair:
    """
    (p psi)(t) = sum_k w_k eta(m_k) U^t_{m_k} u0 for one spatial mode.

    Args:
        profile: Mass profile
        u0: Cauchy datum at t = 0
        lam: Spatial eigenvalue
        t: Time
        quad: Rule on the mass interval ("filon" builds its omega rule with the same size)
        method: "gauss" or "filon"
    """
    return FrequencyIntegrator(profile, lam, quad, method).apply(u0, t)


def ultrastatic_decay_report(profile: MassProfile, u0: SpinorPair, lam: float, times: Sequence[float],
                             quad: QuadratureRule, method: str = "filon") -> DecayReport:
    integrator = FrequencyIntegrator(profile, lam, quad, method)
    return decay_constant(lambda t: integrator.matrix(t) @ u0.as_array(), times)


def pairing_time_domain_ultrastatic(profile_a: MassProfile, u0_a: SpinorPair, profile_b: MassProfile,
                                    u0_b: SpinorPair, lam: float, t_max: float, quad: QuadratureRule,
                                    epsabs: float = PAIRING_EPSABS,
                                    epsrel: float = PAIRING_EPSREL) -> PairingResult:
    """Time-domain pairing of two single-mode ultrastatic families."""
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    pa = FrequencyIntegrator(profile_a, lam, quad, "filon")
    pb = FrequencyIntegrator(profile_b, lam, quad, "filon")
    ua = u0_a.as_array()
    ub = u0_b.as_array()

    def density(t: float) -> complex:
        return np.vdot(pa.matrix(t) @ ua, SIGMA3 @ (pb.matrix(t) @ ub))

    result = integrate_time_density(density, t_max, epsabs=epsabs, epsrel=epsrel)
    return PairingResult(value=complex(result.value), error=result.error, tail=result.tail)


def pairing_closed_form_ultrastatic(profile_a: MassProfile, u0_a: SpinorPair, profile_b: MassProfile,
                                    u0_b: SpinorPair, lam: float, quad: QuadratureRule) -> complex:
    """2*pi * integral of conj(eta_a) eta_b <u0_a, (Pi_+ - Pi_-) u0_b> dm."""
    _, pi_plus, pi_minus = projector_stack(lam, quad.nodes)
    signature = pi_plus - pi_minus
    inner = np.einsum("i,kij,j->k", u0_a.as_array().conj(), signature, u0_b.as_array())
    eta = np.conj(profile_a.value(quad.nodes)) * profile_b.value(quad.nodes)
    return complex(2.0 * math.pi * quad.integrate(eta * inner))
