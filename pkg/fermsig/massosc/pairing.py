"""
The space-time pairing of mass-integrated families and the mass oscillation bounds.

<p psi | p phi> = integral over t of conj(P_a u_a)_1 (P_b u_b)_1 - conj(P_a u_a)_2 (P_b u_b)_2,
evaluated with adaptive quadrature on [-t_max, t_max] plus a tail estimate.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from ..core.quadrature import QuadratureRule, integrate_time_density
from ..core.spinors import SIGMA3
from ..desitter.modes import DEFAULT_RTOL
from ..desitter.trajectories import TrajectoryCache, resolve_cache
from .family import MassFamily, MultiModeFamily
from .integration import MassIntegrator

logger = logging.getLogger(__name__)

DEFAULT_T_MAX = 200.0
PAIRING_EPSABS = 1e-10
PAIRING_EPSREL = 1e-8


@dataclass(frozen=True)
class PairingResult:
    """Pairing value with its error estimate (quadrature error plus tail)."""
    value: complex
    error: float
    tail: float

    def __add__(self, other: "PairingResult") -> "PairingResult":
        return PairingResult(self.value + other.value, self.error + other.error, self.tail + other.tail)


@dataclass(frozen=True, eq=False)
class PairingMatrix:
    """values[i, j] = <p(eta_a e_i) | p(eta_b e_j)> for the Cauchy basis data."""
    values: np.ndarray = field(repr=False)
    error: float
    tail: float


def _check_same_mode(a: MassFamily, b: MassFamily) -> None:
    if a.two_lambda != b.two_lambda:
        raise ValueError(
            f"Families live in different spatial modes (lambda={a.lam} vs {b.lam}); "
            "their pairing vanishes by orthogonality"
        )


def _check_t_max(t_max: float) -> None:
    if not t_max > 0:
        raise ValueError(f"t_max must be positive, got {t_max}")


def pairing_basis_matrix(profile_a, profile_b, two_lambda: int, t_max: float, quad: QuadratureRule,
                         rtol: float = DEFAULT_RTOL, cache: Optional[TrajectoryCache] = None,
                         epsabs: float = PAIRING_EPSABS, epsrel: float = PAIRING_EPSREL) -> PairingMatrix:
    """
    All four basis pairings of two profiles in one time integral.

    The density is P_a(t)^dagger sigma3 P_b(t).
    """
    _check_t_max(t_max)
    cache = resolve_cache(cache)
    pa = MassIntegrator(profile_a, two_lambda, quad, rtol, t_max, cache, "filon")
    pb = pa if profile_b is profile_a else MassIntegrator(profile_b, two_lambda, quad, rtol, t_max, cache, "filon")

    def density(t: float) -> np.ndarray:
        return pa.matrix(t).conj().T @ SIGMA3 @ pb.matrix(t)

    result = integrate_time_density(density, t_max, epsabs=epsabs, epsrel=epsrel)
    return PairingMatrix(values=result.value, error=result.error, tail=result.tail)


def pairing_time_domain(a: MassFamily, b: MassFamily, t_max: float, quad: QuadratureRule,
                        rtol: float = DEFAULT_RTOL, cache: Optional[TrajectoryCache] = None,
                        epsabs: float = PAIRING_EPSABS, epsrel: float = PAIRING_EPSREL) -> PairingResult:
    """
    Space-time pairing of two single-mode families.

    Args:
        a: First family (antilinear slot)
        b: Second family
        t_max: Half-length of the time window
        quad: Mass quadrature rule
        rtol: Integrator tolerance for the mode solutions
        cache: Optional trajectory cache shared across calls

    Returns:
        PairingResult with value, error estimate and tail

    Raises:
        ValueError: If the families carry different eigenvalues
    """
    _check_same_mode(a, b)
    _check_t_max(t_max)
    cache = resolve_cache(cache)
    pa = MassIntegrator(a.profile, a.two_lambda, quad, rtol, t_max, cache, "filon")
    pb = MassIntegrator(b.profile, b.two_lambda, quad, rtol, t_max, cache, "filon")
    ua = a.u0.as_array()
    ub = b.u0.as_array()

    def density(t: float) -> complex:
        va = pa.matrix(t) @ ua
        vb = pb.matrix(t) @ ub
        return np.vdot(va, SIGMA3 @ vb)

    result = integrate_time_density(density, t_max, epsabs=epsabs, epsrel=epsrel)
    logger.debug(f"Pairing at lambda={a.lam}: {complex(result.value)} +- {result.error:.2e}")
    return PairingResult(value=complex(result.value), error=result.error, tail=result.tail)


FamilyLike = Union[MassFamily, MultiModeFamily]


def _as_multimode(family: FamilyLike) -> MultiModeFamily:
    return family if isinstance(family, MultiModeFamily) else MultiModeFamily.single(family)


def pairing_multimode(a: MultiModeFamily, b: MultiModeFamily, t_max: float, quad: QuadratureRule,
                      rtol: float = DEFAULT_RTOL, cache: Optional[TrajectoryCache] = None) -> PairingResult:
    """Sum of the single-mode pairings over the keys both families share."""
    cache = resolve_cache(cache)
    total = PairingResult(0j, 0.0, 0.0)
    for key in a.keys() & b.keys():
        total = total + pairing_time_domain(a[key], b[key], t_max, quad, rtol, cache)
    return total


@dataclass(frozen=True)
class MopBoundReport:
    """Left and right side of a mass oscillation bound."""
    lhs: float
    rhs: float
    error: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs + self.error


def strong_mop_bound_check(a: FamilyLike, b: FamilyLike, quad: QuadratureRule,
                           t_max: float = DEFAULT_T_MAX, rtol: float = DEFAULT_RTOL,
                           cache: Optional[TrajectoryCache] = None) -> MopBoundReport:
    """
    |<p psi | p phi>| <= integral of ||psi_m|| ||phi_m|| dm (constant 1).

    ||psi_m||^2 = 2*pi sum over modes of |eta(m)|^2 ||u0||^2.

    Raises:
        ValueError: If two single-mode families carry different eigenvalues
    """
    if isinstance(a, MassFamily) and isinstance(b, MassFamily):
        _check_same_mode(a, b)
    ma, mb = _as_multimode(a), _as_multimode(b)
    pairing = pairing_multimode(ma, mb, t_max, quad, rtol, cache)
    rhs = float(quad.integrate(_pointwise_norm(ma, quad) * _pointwise_norm(mb, quad)))
    report = MopBoundReport(lhs=abs(pairing.value), rhs=rhs, error=pairing.error)
    logger.debug(f"Strong bound: lhs={report.lhs:.6g} rhs={report.rhs:.6g} margin={report.margin:.3g}")
    return report


def _pointwise_norm(family: MultiModeFamily, quad: QuadratureRule) -> np.ndarray:
    """||psi_m|| at the nodes of the rule."""
    squared = np.zeros(quad.size)
    for key in family.keys():
        component = family[key]
        squared += np.abs(component.profile.value(quad.nodes)) ** 2 * component.u0.norm() ** 2
    return np.sqrt(2.0 * math.pi * squared)


def weak_mop_bound_check(a: MassFamily, b: MassFamily, quad: QuadratureRule,
                         t_max: float = DEFAULT_T_MAX, rtol: float = DEFAULT_RTOL,
                         cache: Optional[TrajectoryCache] = None) -> MopBoundReport:
    """
    Schwarz step of the weak mass oscillation property.

    |<p psi | p phi>| <= sqrt(|I| / (2 pi)) ||phi|| integral of ||(p psi)(t)|| dt,
    with ||phi||^2 = integral of (phi_m | phi_m)_m dm.
    """
    _check_same_mode(a, b)
    cache = resolve_cache(cache)
    pairing = pairing_time_domain(a, b, t_max, quad, rtol, cache)
    pa = MassIntegrator(a.profile, a.two_lambda, quad, rtol, t_max, cache, "filon")
    ua = a.u0.as_array()
    l1 = integrate_time_density(lambda t: np.linalg.norm(pa.matrix(t) @ ua), t_max,
                                epsabs=PAIRING_EPSABS, epsrel=PAIRING_EPSREL)
    phi_norm = math.sqrt(float(quad.integrate(_pointwise_norm(MultiModeFamily.single(b), quad) ** 2)))
    length = quad.upper - quad.lower
    rhs = math.sqrt(length / (2.0 * math.pi)) * phi_norm * float(np.real(l1.value))
    return MopBoundReport(lhs=abs(pairing.value), rhs=rhs, error=pairing.error + l1.error)
