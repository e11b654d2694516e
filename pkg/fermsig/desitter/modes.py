"""
Single-mode Dirac dynamics in de Sitter space-time.

With R(t) = cosh t and a normalized eigenspinor of the Dirac operator on S^3
(eigenvalue lambda), the Dirac equation reduces to

    i du/dt = [[m, -lambda/R], [-lambda/R, -m]] u

Stripping the free phases, u = (e^{-imt} f1, e^{imt} f2), gives

    df/dt = i (lambda/R) [[0, e^{2imt}], [e^{-2imt}, 0]] f

which converges to constants as t -> +-infinity.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..core.intervals import two_lambda_from
from ..core.spinors import SpinorPair

logger = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
DEFAULT_METHOD = "RK45"
REFERENCE_METHOD = "DOP853"

# |lambda| <= 19/2; the Gronwall bound grows like exp(2|lambda|)
LAMBDA_BUDGET_TWO = 19


class IntegrationError(RuntimeError):
    """The ODE integrator stopped before reaching the requested time."""

    def __init__(self, message: str, last_good_time: float):
        super().__init__(f"{message} (last good time t={last_good_time:.6g})")
        self.last_good_time = last_good_time


@dataclass(frozen=True)
class DeSitterMode:
    """Spatial eigenvalue (as 2*lambda) and mass of a single mode."""
    two_lambda: int
    mass: float
    scale_factor: Callable[[float], float] = field(default=np.cosh, compare=False, repr=False)

    def __post_init__(self):
        if int(self.two_lambda) != self.two_lambda:
            raise ValueError(f"two_lambda must be an integer, got {self.two_lambda}")
        object.__setattr__(self, "two_lambda", int(self.two_lambda))
        if not (np.isfinite(self.mass) and self.mass > 0):
            raise ValueError(f"Mode mass must be positive and finite, got {self.mass}")
        if abs(self.two_lambda) > LAMBDA_BUDGET_TWO:
            logger.warning(
                f"|lambda|={abs(self.two_lambda) / 2} exceeds the budget {LAMBDA_BUDGET_TWO}/2; "
                "asymptotic estimates are not certified there"
            )

    @classmethod
    def from_lambda(cls, lam, mass: float) -> "DeSitterMode":
        return cls(two_lambda_from(lam), float(mass))

    @property
    def lam(self) -> float:
        return self.two_lambda / 2.0

    def hamiltonian(self, t: float) -> np.ndarray:
        c = -self.lam / self.scale_factor(t)
        return np.array([[self.mass, c], [c, -self.mass]], dtype=complex)


def tolerances(rtol: float) -> Tuple[float, float]:
    """(rtol, atol) pair; atol follows rtol below the defaults."""
    if not rtol > 0:
        raise ValueError(f"rtol must be positive, got {rtol}")
    return rtol, min(DEFAULT_ATOL, 1e-2 * rtol)


def _u_rhs(mode: DeSitterMode):
    m = mode.mass
    lam = mode.lam
    R = mode.scale_factor

    def rhs(t, y):
        c = -lam / R(t)
        Y = y.reshape(2, -1)
        out = np.empty_like(Y)
        out[0] = -1j * (m * Y[0] + c * Y[1])
        out[1] = -1j * (c * Y[0] - m * Y[1])
        return out.reshape(-1)

    return rhs


def _f_rhs(mode: DeSitterMode):
    m = mode.mass
    lam = mode.lam
    R = mode.scale_factor

    def rhs(t, y):
        coupling = 1j * lam / R(t)
        phase = np.exp(2j * m * t)
        Y = y.reshape(2, -1)
        out = np.empty_like(Y)
        out[0] = coupling * phase * Y[1]
        out[1] = coupling * np.conj(phase) * Y[0]
        return out.reshape(-1)

    return rhs


def integrate(rhs, y0: np.ndarray, t0: float, t1: float, rtol: float,
              method: str = DEFAULT_METHOD, dense_output: bool = False, **options):
    """
    Run solve_ivp on a complex linear system and check for failure.

    Raises:
        IntegrationError: If the solver stops early
    """
    rtol, atol = tolerances(rtol)
    if not (np.isfinite(t0) and np.isfinite(t1)):
        raise ValueError(f"Integration bounds must be finite, got ({t0}, {t1})")
    with np.errstate(over="ignore"):
        sol = solve_ivp(rhs, (float(t0), float(t1)), np.asarray(y0, dtype=complex), method=method,
                        rtol=rtol, atol=atol, dense_output=dense_output, **options)
    if not sol.success:
        raise IntegrationError(f"{method} failed: {sol.message}", last_good_time=float(sol.t[-1]))
    logger.debug(f"{method} on [{t0:.4g}, {t1:.4g}]: {sol.t.size - 1} steps, {sol.nfev} evaluations")
    return sol


def evolve_mode(u0: SpinorPair, mode: DeSitterMode, t0: float, t1: float,
                rtol: float = DEFAULT_RTOL, method: str = DEFAULT_METHOD) -> SpinorPair:
    """
    Solve the mode equation from u(t0) = u0 and return u(t1).

    Args:
        u0: Datum at t0
        mode: Eigenvalue and mass
        t0: Initial time
        t1: Final time
        rtol: Relative tolerance of the adaptive Runge-Kutta pair
        method: solve_ivp method name

    Returns:
        u(t1)
    """
    if t1 == t0:
        return u0
    sol = integrate(_u_rhs(mode), u0.as_array(), t0, t1, rtol, method)
    u1 = SpinorPair.from_array(sol.y[:, -1])
    drift = abs(u1.norm() - u0.norm())
    if drift > 10 * rtol * max(u0.norm(), 1.0):
        logger.warning(f"Norm drift {drift:.2e} exceeds 10*rtol for {mode} on [{t0}, {t1}]")
    return u1


def evolve_f(f0: SpinorPair, mode: DeSitterMode, t0: float, t1: float,
             rtol: float = DEFAULT_RTOL, method: str = DEFAULT_METHOD) -> SpinorPair:
    """Solve the phase-stripped equation from f(t0) = f0 and return f(t1)."""
    if t1 == t0 or mode.two_lambda == 0:
        return f0
    sol = integrate(_f_rhs(mode), f0.as_array(), t0, t1, rtol, method)
    return SpinorPair.from_array(sol.y[:, -1])


def dress(f: SpinorPair, mass: float, t: float) -> SpinorPair:
    """u = (e^{-imt} f1, e^{imt} f2)."""
    phase = np.exp(-1j * mass * t)
    return SpinorPair(phase * f.u1, np.conj(phase) * f.u2)


def strip(u: SpinorPair, mass: float, t: float) -> SpinorPair:
    """Inverse of dress."""
    phase = np.exp(1j * mass * t)
    return SpinorPair(phase * u.u1, np.conj(phase) * u.u2)


def f_rhs(mode: DeSitterMode):
    """Right side of the phase-stripped equation (vector or flattened 2x2 state)."""
    return _f_rhs(mode)
