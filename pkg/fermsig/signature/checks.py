"""
Property checks on signature matrices: independence of the mass interval,
spatial normalization of the spectral projectors, and the interpolation
between the asymptotic frequency splittings.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.intervals import MassInterval, two_lambda_from
from ..core.profiles import MassProfile
from ..core.quadrature import gauss_legendre
from ..core.spinors import SpinorPair
from ..desitter.asymptotics import bogoliubov_coefficient, scattering_matrices
from ..desitter.modes import DEFAULT_RTOL, REFERENCE_METHOD, DeSitterMode, evolve_mode
from ..desitter.trajectories import TrajectoryCache, resolve_cache
from ..massosc.pairing import DEFAULT_T_MAX, pairing_basis_matrix
from .assembly import DEFAULT_EPS, assemble_signature, signature_from_pair
from .matrix import DEFAULT_ZERO_TOL, SpectralSplit, spectral_split

logger = logging.getLogger(__name__)

DEFAULT_WIDTHS = (0.2, 0.1, 0.05)
INDEPENDENCE_TOLERANCE = 2e-3
NODES_PER_WIDTH = 32
MIN_NODES = 64
CONTINUITY_STEP = 0.01


@dataclass(frozen=True, eq=False)
class WidthEstimate:
    """Normalized narrow-bump estimates of (e_i | S_m e_j)_m from two intervals."""
    width: float
    estimate_full: np.ndarray = field(repr=False)
    estimate_sub: np.ndarray = field(repr=False)
    difference: float
    distance_full: float
    distance_sub: float
    error: float


@dataclass(frozen=True)
class IntervalIndependenceReport:
    lam: float
    mass: float
    interval: MassInterval
    sub_interval: MassInterval
    estimates: Tuple[WidthEstimate, ...]
    continuity: float
    tolerance: float

    @property
    def final_difference(self) -> float:
        return self.estimates[-1].difference

    @property
    def passed(self) -> bool:
        return self.final_difference <= self.tolerance


def narrow_bump_rule_size(interval: MassInterval, width: float) -> int:
    """Rule size resolving a bump of the given width on the whole interval."""
    return max(MIN_NODES, math.ceil(NODES_PER_WIDTH * interval.length / width))


def narrow_bump_estimate(two_lambda: int, m: float, interval: MassInterval, width: float,
                         rtol: float = DEFAULT_RTOL, cache: Optional[TrajectoryCache] = None):
    """
    Time-domain pairing matrix of a bump of the given width centered at m,
    divided by the integral of eta^2.

    Returns:
        (estimate, error) with the estimate close to 2*pi*S_m for small widths
    """
    profile = MassProfile.bump(interval, center=m, width=width)
    quad = gauss_legendre(interval, narrow_bump_rule_size(interval, width))
    t_max = max(DEFAULT_T_MAX, 50.0 / width)
    result = pairing_basis_matrix(profile, profile, two_lambda, t_max, quad, rtol, cache)
    norm = float(quad.integrate(profile.value(quad.nodes) ** 2))
    return result.values / norm, result.error / norm


def continuity_defect(lam, m: float, step: float = CONTINUITY_STEP, eps: float = DEFAULT_EPS) -> float:
    """Largest entry change of S_m when m moves by +-step."""
    center = assemble_signature(lam, m, eps).entries
    return max(
        float(np.max(np.abs(assemble_signature(lam, m + sign * step, eps).entries - center)))
        for sign in (1, -1)
    )


def interval_independence_check(lam, m: float, interval: MassInterval, sub_interval: MassInterval,
                                widths: Sequence[float] = DEFAULT_WIDTHS,
                                tolerance: float = INDEPENDENCE_TOLERANCE,
                                rtol: float = DEFAULT_RTOL, eps: float = DEFAULT_EPS,
                                cache: Optional[TrajectoryCache] = None) -> IntervalIndependenceReport:
    """
    Compare narrow-bump estimates of the signature matrix obtained on I and on I_sub.

    S_m itself is assembled per mass and involves no interval; the estimates
    depend on the interval only through the mass quadrature.

    Raises:
        ValueError: If I_sub is not inside I, m is not in I_sub, or a bump leaves I_sub
    """
    if not interval.contains_interval(sub_interval):
        raise ValueError(f"{sub_interval} is not contained in {interval}")
    if not sub_interval.contains(m):
        raise ValueError(f"Mass {m} is outside the sub-interval {sub_interval}")
    if not widths:
        raise ValueError("interval_independence_check needs at least one bump width")
    two_lambda = two_lambda_from(lam)
    cache = resolve_cache(cache)
    reference = 2.0 * math.pi * assemble_signature(lam, m, eps).entries

    estimates: List[WidthEstimate] = []
    for width in sorted(widths, reverse=True):
        full, error_full = narrow_bump_estimate(two_lambda, m, interval, width, rtol, cache)
        sub, error_sub = narrow_bump_estimate(two_lambda, m, sub_interval, width, rtol, cache)
        estimate = WidthEstimate(
            width=float(width),
            estimate_full=full,
            estimate_sub=sub,
            difference=float(np.max(np.abs(full - sub))),
            distance_full=float(np.max(np.abs(full - reference))),
            distance_sub=float(np.max(np.abs(sub - reference))),
            error=error_full + error_sub,
        )
        logger.debug(f"Width {width}: difference {estimate.difference:.3e}, distance {estimate.distance_full:.3e}")
        estimates.append(estimate)

    report = IntervalIndependenceReport(
        lam=two_lambda / 2.0,
        mass=float(m),
        interval=interval,
        sub_interval=sub_interval,
        estimates=tuple(estimates),
        continuity=continuity_defect(lam, m, eps=eps),
        tolerance=tolerance,
    )
    logger.info(f"Interval independence at lambda={report.lam}, m={m}: "
                f"{'PASS' if report.passed else 'FAIL'} (difference {report.final_difference:.3e})")
    return report


@dataclass(frozen=True)
class SpatialNormalizationReport:
    lam: float
    mass: float
    t_check: float
    idempotence_defect: float
    orthogonality_defect: float
    symmetry_defect: float
    roundtrip_defect: float
    inconclusive: bool
    idempotence_tolerance: float = 1e-12
    roundtrip_tolerance: float = 1e-8
    symmetry_tolerance: float = 1e-8

    @property
    def passed(self) -> bool:
        if self.inconclusive:
            return False
        return (self.idempotence_defect < self.idempotence_tolerance
                and self.roundtrip_defect < self.roundtrip_tolerance
                and self.symmetry_defect < self.symmetry_tolerance)


def _symmetry_defect(p: np.ndarray) -> float:
    """max |(a | p b) - (p a | b)| over basis data; zero iff p is symmetric for the Cauchy product."""
    return float(np.max(np.abs(p - p.conj().T))) * 2.0 * math.pi


def spatial_normalization_check(lam, m: float, t_check: float = 3.0, eps: float = DEFAULT_EPS,
                                rtol: float = DEFAULT_RTOL, zero_tol: float = DEFAULT_ZERO_TOL
                                ) -> SpatialNormalizationReport:
    """
    Mode-level spatial normalization of the negative spectral projector.

    Cauchy data are evolved to t_check, projected with the evolved projector
    U p_minus U^{-1} and evolved back with the reference integrator; the result
    must equal p_minus applied at t = 0. The projector must also be symmetric
    for the Cauchy product both at t = 0 and at t_check.
    """
    s = assemble_signature(lam, m, eps)
    split = spectral_split(s, zero_tol)
    mode = DeSitterMode(two_lambda_from(lam), float(m))
    p = split.p_minus

    basis = [SpinorPair.basis(j) for j in (0, 1)]
    evolved = [evolve_mode(e, mode, 0.0, t_check, rtol) for e in basis]
    U = np.column_stack([v.as_array() for v in evolved])
    p_t = U @ p @ np.linalg.inv(U)

    roundtrip = 0.0
    for e, v in zip(basis, evolved):
        projected = SpinorPair.from_array(p_t @ v.as_array())
        back = evolve_mode(projected, mode, t_check, 0.0, rtol, REFERENCE_METHOD)
        roundtrip = max(roundtrip, float(np.linalg.norm(back.as_array() - p @ e.as_array())))

    report = SpatialNormalizationReport(
        lam=mode.lam,
        mass=float(m),
        t_check=float(t_check),
        idempotence_defect=float(np.linalg.norm(p @ p - p, 2)),
        orthogonality_defect=split.orthogonality_defect(),
        symmetry_defect=max(_symmetry_defect(p), _symmetry_defect(p_t)),
        roundtrip_defect=roundtrip,
        inconclusive=split.degenerate_flag,
    )
    if report.inconclusive:
        logger.warning(f"Spatial normalization at lambda={mode.lam}, m={m} is inconclusive (degenerate spectrum)")
    return report


@dataclass(frozen=True)
class InterpolationRow:
    """One mass sample of the interpolation between the in and out splittings."""
    two_lambda: int
    mass: float
    nu: float
    eigenvalues: Tuple[float, float]
    distance_plus: float
    distance_minus: float
    bogoliubov: float
    p_minus: Tuple[complex, complex, complex, complex]


def interpolation_profile(lam, mass_grid: Sequence[float], eps: float = DEFAULT_EPS,
                          zero_tol: float = DEFAULT_ZERO_TOL) -> List[InterpolationRow]:
    """
    nu(m) and the distances ||S_m - W_s^dagger sigma3 W_s|| to both asymptotic splittings.
    """
    two_lambda = two_lambda_from(lam)
    rows = []
    for m in mass_grid:
        if not m > 0:
            raise ValueError(f"Masses must be positive, got {m}")
        pair = scattering_matrices(DeSitterMode(two_lambda, float(m)), eps)
        s = signature_from_pair(pair)
        split: SpectralSplit = spectral_split(s, zero_tol)
        rows.append(InterpolationRow(
            two_lambda=two_lambda,
            mass=float(m),
            nu=split.nu,
            eigenvalues=split.eigenvalues,
            distance_plus=float(np.linalg.norm(s.entries - pair.asymptotic_signature(1), 2)),
            distance_minus=float(np.linalg.norm(s.entries - pair.asymptotic_signature(-1), 2)),
            bogoliubov=bogoliubov_coefficient(pair),
            p_minus=tuple(complex(x) for x in split.p_minus.reshape(-1)),
        ))
    return rows
