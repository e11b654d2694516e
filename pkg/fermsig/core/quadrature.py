"""
Quadrature in the mass and time variables.

Mass integrals use one Gauss-Legendre rule per run. For large |t| the phase
factors e^{-imt} oscillate faster than the rule resolves, so oscillatory
weights (Legendre expansion of the phase, spherical Bessel coefficients) are
provided for the same nodes. Time integrals are adaptive (quad_vec) with an
analytic tail beyond +-t_max.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy import special
from scipy.integrate import quad_vec

from .intervals import MassInterval

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights on (lower, upper), with the reference rule on [-1, 1]."""
    lower: float
    upper: float
    reference_nodes: np.ndarray = field(repr=False)
    reference_weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"Quadrature interval must satisfy lower < upper, got ({self.lower}, {self.upper})")
        if len(self.reference_nodes) != len(self.reference_weights):
            raise ValueError("Quadrature nodes and weights differ in length")

    @property
    def size(self) -> int:
        return len(self.reference_nodes)

    @property
    def half_length(self) -> float:
        return 0.5 * (self.upper - self.lower)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.upper + self.lower)

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.midpoint + self.half_length * self.reference_nodes

    @cached_property
    def weights(self) -> np.ndarray:
        return self.half_length * self.reference_weights

    @cached_property
    def _legendre_table(self) -> np.ndarray:
        # row n holds (2n+1) P_n(x_k)
        n = np.arange(self.size)
        table = special.eval_legendre(n[:, None], self.reference_nodes[None, :])
        return (2 * n + 1)[:, None] * table

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Weighted sum over the first axis of `values` (one entry per node)."""
        values = np.asarray(values)
        return np.tensordot(self.weights, values, axes=(0, 0))


def gauss_legendre(interval: MassInterval, n: int) -> QuadratureRule:
    """
    Standard n-point Gauss-Legendre rule mapped to the interval.

    Args:
        interval: Mass interval
        n: Number of nodes (>= 1)

    Returns:
        QuadratureRule exact for polynomials of degree <= 2n - 1
    """
    return gauss_legendre_on(interval.m_lower, interval.m_upper, n)


def gauss_legendre_on(lower: float, upper: float, n: int) -> QuadratureRule:
    """Same as gauss_legendre for bare bounds (used for frequency variables)."""
    if int(n) != n or n <= 0:
        raise ValueError(f"Quadrature size must be a positive integer, got {n}")
    x, w = special.roots_legendre(int(n))
    return QuadratureRule(float(lower), float(upper), np.asarray(x, dtype=float), np.asarray(w, dtype=float))


def oscillatory_weights(quad: QuadratureRule, t: float, sign: int = 1) -> np.ndarray:
    """
    Complex weights for integrals against the phase e^{-i*sign*m*t}.

    sum_k w_k g(m_k) equals the integral of (Legendre interpolant of g) times
    the phase, exactly. At t = 0 the weights reduce to the plain rule.

    Args:
        quad: Rule on the integration variable m
        t: Time
        sign: +1 for e^{-imt}, -1 for e^{+imt}

    Returns:
        Complex array of length quad.size
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    kappa = sign * quad.half_length * t
    if kappa == 0.0:
        return quad.weights.astype(complex)
    n = np.arange(quad.size)
    bessel = special.spherical_jn(n, abs(kappa))
    coeff = (-1j * np.sign(kappa)) ** n * bessel
    # truncated Jacobi-Anger expansion of e^{-i kappa x} at the reference nodes
    phase_at_nodes = coeff @ quad._legendre_table
    carrier = np.exp(-1j * sign * quad.midpoint * t)
    return carrier * quad.weights * phase_at_nodes


@dataclass(frozen=True)
class TimeIntegral:
    """Result of a time integral over the real line."""
    value: np.ndarray
    quadrature_error: float
    tail: float
    t_max: float

    @property
    def error(self) -> float:
        return self.quadrature_error + self.tail


def tail_integral(t_max: float) -> float:
    """Integral of 1/(1+t^2)^2 from t_max to infinity."""
    return 0.5 * (math.atan(1.0 / t_max) - t_max / (1.0 + t_max * t_max))


def integrate_time_density(
    density: Callable[[float], np.ndarray],
    t_max: float,
    epsabs: float = 1e-12,
    epsrel: float = 1e-10,
    limit: int = 4000,
    tail_samples: int = 48,
) -> TimeIntegral:
    """
    Adaptive integral of a complex (array-valued) density over [-t_max, t_max].

    Beyond +-t_max the density is bounded by A/(1+t^2)^2 with A the sup of
    |g|(1+t^2)^2 over the last decade on each side; the analytic integral of
    that envelope is reported as the tail and counted in the error.
    """
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    at_zero = np.asarray(density(0.0), dtype=complex)
    shape = at_zero.shape

    def _real(t: float) -> np.ndarray:
        value = np.asarray(density(t), dtype=complex).reshape(-1)
        return np.concatenate([value.real, value.imag])

    result, err = quad_vec(_real, -t_max, t_max, epsabs=epsabs, epsrel=epsrel,
                           norm="max", limit=limit, points=(0.0,))
    half = result.size // 2
    value = (result[:half] + 1j * result[half:]).reshape(shape)

    decade = np.geomspace(t_max / 10.0, t_max, tail_samples)
    envelope = 0.0
    for t in np.concatenate([decade, -decade]):
        magnitude = float(np.max(np.abs(np.asarray(density(t)))))
        envelope = max(envelope, magnitude * (1.0 + t * t) ** 2)
    tail = 2.0 * envelope * tail_integral(t_max)
    logger.debug(f"Time integral on [-{t_max}, {t_max}]: quad error {err:.3e}, tail {tail:.3e}")
    return TimeIntegral(value=value, quadrature_error=float(err), tail=float(tail), t_max=float(t_max))


@dataclass(frozen=True)
class DecayReport:
    """Measured sup of (1+t^2)*||p(t)|| over sample times."""
    constant: float
    t_at_sup: float
    times: Tuple[float, ...]
    weighted: Tuple[float, ...]


def decay_constant(p: Callable[[float], np.ndarray], times: Sequence[float]) -> DecayReport:
    """
    Measure the decay constant of a mass-integrated solution.

    Args:
        p: Function returning the C^2 vector (p u)(t)
        times: Sample times

    Returns:
        DecayReport with the sup and where it was attained
    """
    times = tuple(float(t) for t in times)
    if not times:
        raise ValueError("decay_constant needs at least one sample time")
    weighted = tuple((1.0 + t * t) * float(np.linalg.norm(np.asarray(p(t)))) for t in times)
    idx = int(np.argmax(weighted))
    return DecayReport(constant=weighted[idx], t_at_sup=times[idx], times=times, weighted=weighted)
