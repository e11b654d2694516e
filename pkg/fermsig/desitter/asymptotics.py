"""
Asymptotic in/out coefficients of de Sitter modes.

The phase-stripped amplitude f(t) converges as t -> +-infinity; the deviation
from the limit is bounded by ||f|| (exp(2|lambda| e^{-+t}) - 1). Integrating up
to the time T where that bound drops below eps gives certified coefficients.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.spinors import SIGMA3, SpinorPair
from .modes import (
    DEFAULT_METHOD,
    DEFAULT_RTOL,
    REFERENCE_METHOD,
    DeSitterMode,
    evolve_f,
    f_rhs,
    integrate,
)

logger = logging.getLogger(__name__)

UNITARITY_TOLERANCE = 1e-9
# rtol floor for asymptotic solves
MIN_ASYMPTOTIC_RTOL = 1e-13


@dataclass(frozen=True)
class AsymptoticData:
    """Coefficients f^+ (t -> +inf) and f^- (t -> -inf) of one solution."""
    f_plus: SpinorPair
    f_minus: SpinorPair
    T_plus: float
    T_minus: float
    tail_bound: float


@dataclass(frozen=True, eq=False)
class ScatteringPair:
    """Maps from Cauchy data at t = 0 to f^+ and f^-."""
    w_plus: np.ndarray = field(repr=False)
    w_minus: np.ndarray = field(repr=False)
    mode: DeSitterMode
    truncation_time: float
    tail_bound: float

    def unitarity_defect(self) -> float:
        """Largest ||W^dagger W - 1||_2 of the two matrices."""
        eye = np.eye(2)
        return max(
            float(np.linalg.norm(w.conj().T @ w - eye, 2))
            for w in (self.w_plus, self.w_minus)
        )

    def asymptotic_signature(self, sign: int) -> np.ndarray:
        """W_s^dagger sigma3 W_s, the frequency splitting seen at t -> s*infinity."""
        w = self.w_plus if sign > 0 else self.w_minus
        return w.conj().T @ SIGMA3 @ w


def gronwall_envelope(lam: float, f_norm: float, t: float, direction: int) -> float:
    """
    Certified bound f_norm * (exp(2|lambda| e^{-direction*t}) - 1) on ||f(t) - f^+-||.

    Args:
        lam: Spatial eigenvalue
        f_norm: Norm of the solution in f variables
        t: Time
        direction: +1 for t -> +inf, -1 for t -> -inf

    Returns:
        The envelope (inf where it overflows)
    """
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    if lam == 0:
        return 0.0
    with np.errstate(over="ignore"):
        return float(f_norm * np.expm1(2.0 * abs(lam) * np.exp(-direction * t)))


def truncation_time(lam: float, eps: float) -> float:
    """
    Smallest T >= 0 with exp(2|lambda| e^{-T}) - 1 <= eps.

    Raises:
        ValueError: If eps is not positive or below double precision
    """
    if not (np.isfinite(eps) and eps > 0):
        raise ValueError(f"eps must be positive and finite, got {eps}")
    if eps < np.finfo(float).eps:
        raise ValueError(f"eps={eps} is below double precision ({np.finfo(float).eps:.3g})")
    if lam == 0:
        return 0.0
    return max(0.0, math.log(2.0 * abs(lam) / math.log1p(eps)))


def asymptotic_rtol(eps: float) -> float:
    """Integrator tolerance matched to the truncation tolerance."""
    return min(DEFAULT_RTOL, max(eps, MIN_ASYMPTOTIC_RTOL))


def extract_asymptotics(u0: SpinorPair, mode: DeSitterMode, eps: float,
                        rtol: Optional[float] = None, method: str = DEFAULT_METHOD) -> AsymptoticData:
    """
    Integrate the f-equation from f(0) = u0 to +-T with certified truncation.

    Args:
        u0: Cauchy datum at t = 0 (u and f coincide there)
        mode: Eigenvalue and mass
        eps: Truncation tolerance
        rtol: Integrator tolerance (default matched to eps)
        method: solve_ivp method name

    Returns:
        AsymptoticData with f(+T), f(-T) and the Gronwall tail bound
    """
    T = truncation_time(mode.lam, eps)
    if rtol is None:
        rtol = asymptotic_rtol(eps)
    f_plus = evolve_f(u0, mode, 0.0, T, rtol, method)
    f_minus = evolve_f(u0, mode, 0.0, -T, rtol, method)
    tail = max(
        gronwall_envelope(mode.lam, f_plus.norm(), T, 1),
        gronwall_envelope(mode.lam, f_minus.norm(), -T, -1),
    )
    return AsymptoticData(f_plus=f_plus, f_minus=f_minus, T_plus=T, T_minus=-T, tail_bound=tail)


def scattering_matrices(mode: DeSitterMode, eps: float, rtol: Optional[float] = None,
                        method: str = DEFAULT_METHOD) -> ScatteringPair:
    """
    In/out scattering matrices of a mode.

    Column j of w_plus (w_minus) is f^+ (f^-) for the Cauchy datum e_j. Both
    columns are propagated together as a 2x2 fundamental matrix.
    """
    T = truncation_time(mode.lam, eps)
    if rtol is None:
        rtol = asymptotic_rtol(eps)
    if mode.two_lambda == 0 or T == 0.0:
        eye = np.eye(2, dtype=complex)
        return ScatteringPair(eye, eye.copy(), mode, T, 0.0)

    rhs = f_rhs(mode)
    y0 = np.eye(2, dtype=complex).reshape(-1)
    w_plus = integrate(rhs, y0, 0.0, T, rtol, method).y[:, -1].reshape(2, 2)
    w_minus = integrate(rhs, y0, 0.0, -T, rtol, method).y[:, -1].reshape(2, 2)
    # columns have unit norm up to integration error
    tail = gronwall_envelope(mode.lam, 1.0, T, 1)
    pair = ScatteringPair(w_plus, w_minus, mode, T, tail)
    defect = pair.unitarity_defect()
    if defect > UNITARITY_TOLERANCE:
        logger.warning(f"Unitarity defect {defect:.2e} for {mode} (eps={eps}, rtol={rtol})")
    return pair


def time_reversal_defect(mode: DeSitterMode, eps: float, rtol: Optional[float] = None) -> float:
    """
    ||W_+ - conj(W_-)||_2.

    R(t) = cosh t is even and the mode matrix is real, so t -> -t combined with
    complex conjugation maps solutions to solutions and W_+ = conj(W_-).
    W_+ comes from the default integrator and W_- from the reference method.
    """
    forward = scattering_matrices(mode, eps, rtol)
    backward = scattering_matrices(mode, eps, rtol, REFERENCE_METHOD)
    return float(np.linalg.norm(forward.w_plus - backward.w_minus.conj(), 2))


def bogoliubov_coefficient(pair: ScatteringPair) -> float:
    """
    |beta|^2 = |(W_+ W_-^dagger)_{12}|^2.

    W_+ W_-^dagger maps the in-coefficients f^- to the out-coefficients f^+;
    its off-diagonal entry mixes the two frequency components.
    """
    transfer = pair.w_plus @ pair.w_minus.conj().T
    return float(abs(transfer[0, 1]) ** 2)


# absolute floor for comparisons against the envelope in double precision
GRONWALL_FLOOR = 1e-14


@dataclass(frozen=True)
class GronwallSample:
    t: float
    residual: float
    envelope: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.envelope + GRONWALL_FLOOR


@dataclass(frozen=True)
class GronwallReport:
    """Measured ||f(t) - f^+-|| against the envelope at each sample time."""
    mode: DeSitterMode
    samples: Tuple[GronwallSample, ...]

    @property
    def violations(self) -> int:
        return sum(not s.passed for s in self.samples)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def worst_ratio(self) -> float:
        ratios = [s.residual / (s.envelope + GRONWALL_FLOOR) for s in self.samples]
        return max(ratios) if ratios else 0.0


def gronwall_check(u0: SpinorPair, mode: DeSitterMode, times: Sequence[float],
                   eps: float = 1e-15, rtol: float = MIN_ASYMPTOTIC_RTOL,
                   max_step: float = 0.25) -> GronwallReport:
    """
    Compare f(t) with its limit at sample times of both signs.

    f(t) and f(+-T) come from the same integration run so that integration
    error accumulated before t cancels in the residual.
    """
    T = truncation_time(mode.lam, eps)
    rhs = f_rhs(mode)
    samples: List[GronwallSample] = []
    for direction in (1, -1):
        picked = sorted(abs(float(t)) for t in times if np.sign(t) == direction and abs(t) < T)
        if not picked:
            continue
        t_eval = [direction * t for t in picked] + [direction * T]
        sol = integrate(rhs, u0.as_array(), 0.0, direction * T, rtol,
                        t_eval=t_eval, max_step=max_step)
        limit = sol.y[:, -1]
        f_norm = float(np.linalg.norm(limit))
        for k, t in enumerate(t_eval[:-1]):
            residual = float(np.linalg.norm(sol.y[:, k] - limit))
            envelope = gronwall_envelope(mode.lam, f_norm, t, direction)
            samples.append(GronwallSample(t, residual, envelope))
    samples.sort(key=lambda s: s.t)
    report = GronwallReport(mode, tuple(samples))
    if not report.passed:
        logger.warning(f"Gronwall envelope violated at {report.violations} samples for {mode}")
    return report


# 1e-2 halved down to about 1e-4
SMOOTHNESS_STEPS: Tuple[float, ...] = tuple(1e-2 / 2 ** k for k in range(8))
MIN_CONVERGENCE_ORDER = 1.5
# differences below NOISE_FACTOR * rtol / h are integrator noise, not truncation error
NOISE_FACTOR = 1e3


@dataclass(frozen=True)
class SmoothnessReport:
    """
    Central differences of W_+ and W_- in the mass under step refinement.

    differences[k] is the change of the estimate from steps[k] to steps[k+1];
    for a C^3 dependence on m it shrinks like steps[k]^2.
    """
    mode: DeSitterMode
    steps: Tuple[float, ...]
    differences: Tuple[float, ...]
    noise_floors: Tuple[float, ...]
    derivative_norm: float

    @property
    def orders(self) -> Tuple[float, ...]:
        """Observed convergence orders, stopping at the first difference lost in noise."""
        orders = []
        for k in range(len(self.differences) - 1):
            coarse, fine = self.differences[k], self.differences[k + 1]
            if coarse <= self.noise_floors[k] or fine <= self.noise_floors[k + 1]:
                break
            orders.append(math.log(coarse / fine) / math.log(self.steps[k] / self.steps[k + 1]))
        return tuple(orders)

    @property
    def below_noise(self) -> bool:
        return all(d <= floor for d, floor in zip(self.differences, self.noise_floors))

    @property
    def worst_order(self) -> float:
        orders = self.orders
        return min(orders) if orders else float("nan")

    @property
    def passed(self) -> bool:
        if self.below_noise:
            return True
        orders = self.orders
        return bool(orders) and min(orders) >= MIN_CONVERGENCE_ORDER


def _mass_derivative(mode: DeSitterMode, h: float, eps: float, rtol: float, method: str) -> np.ndarray:
    upper = scattering_matrices(replace(mode, mass=mode.mass + h), eps, rtol, method)
    lower = scattering_matrices(replace(mode, mass=mode.mass - h), eps, rtol, method)
    return np.stack([
        (upper.w_plus - lower.w_plus) / (2.0 * h),
        (upper.w_minus - lower.w_minus) / (2.0 * h),
    ])


def asymptotic_derivative_check(mode: DeSitterMode, steps: Sequence[float] = SMOOTHNESS_STEPS,
                                eps: float = 1e-12, rtol: float = MIN_ASYMPTOTIC_RTOL,
                                method: str = REFERENCE_METHOD) -> SmoothnessReport:
    """
    Second-order convergence of central differences of f^+- in the mass.

    The columns of W_+ and W_- are f^+- for the basis data, so differentiating
    the matrices covers every Cauchy datum.

    Args:
        mode: Eigenvalue and mass at which to differentiate
        steps: Strictly decreasing finite-difference steps, all below the mass
        eps: Truncation tolerance of the scattering matrices
        rtol: Integrator tolerance
        method: solve_ivp method name

    Returns:
        SmoothnessReport with the successive differences of the estimates

    Raises:
        ValueError: If fewer than three steps are given, they do not decrease
            or the largest step reaches m = 0
    """
    steps = tuple(float(h) for h in steps)
    if len(steps) < 3:
        raise ValueError(f"Need at least three steps, got {len(steps)}")
    if any(not h > 0 for h in steps) or any(a <= b for a, b in zip(steps, steps[1:])):
        raise ValueError(f"Steps must be positive and strictly decreasing, got {steps}")
    if steps[0] >= mode.mass:
        raise ValueError(f"Step {steps[0]} does not fit below the mass {mode.mass}")

    estimates = [_mass_derivative(mode, h, eps, rtol, method) for h in steps]
    differences = tuple(
        float(max(np.linalg.norm(a[i] - b[i], 2) for i in (0, 1)))
        for a, b in zip(estimates, estimates[1:])
    )
    noise_floors = tuple(NOISE_FACTOR * rtol / h for h in steps[1:])
    report = SmoothnessReport(
        mode=mode,
        steps=steps,
        differences=differences,
        noise_floors=noise_floors,
        derivative_norm=float(max(np.linalg.norm(estimates[-1][i], 2) for i in (0, 1))),
    )
    if not report.passed:
        logger.warning(f"Mass derivative of the asymptotics converges at order {report.worst_order:.3g} "
                       f"for {mode}")
    return report
