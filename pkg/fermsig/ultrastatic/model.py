"""
Ultrastatic space-times: exact frequency splitting per spatial mode.

With a time-independent spatial Dirac operator of eigenvalue lambda, the mode
matrix [[m, lambda], [lambda, -m]] is constant. Its eigenvalues are +-omega,
omega = sqrt(lambda^2 + m^2), and the spectral projectors Pi_+- give the
evolution U(t) = e^{-i omega t} Pi_+ + e^{i omega t} Pi_- in closed form.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core.intervals import ModeIndex, s3_spectrum, two_lambda_from
from ..signature.matrix import SignatureMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UltrastaticModel:
    """Spatial operator given by its eigenvalues with multiplicities."""
    spectrum: Tuple[ModeIndex, ...]
    name: str = "custom"

    def __post_init__(self):
        spectrum = tuple(sorted(self.spectrum))
        eigenvalues = [mode.two_lambda for mode in spectrum]
        if len(set(eigenvalues)) != len(eigenvalues):
            raise ValueError(f"Ultrastatic spectrum has repeated eigenvalues: {eigenvalues}")
        object.__setattr__(self, "spectrum", spectrum)

    @classmethod
    def s3(cls, max_two_lambda: int) -> "UltrastaticModel":
        """Einstein universe R x S^3: lambda = +-3/2, +-5/2, ... with multiplicity lambda^2 - 1/4."""
        return cls(tuple(s3_spectrum(max_two_lambda)), name="s3")

    @classmethod
    def minkowski(cls, lambda_grid: Iterable[float]) -> "UltrastaticModel":
        """
        Minkowski space sampled on a grid of half-integer lambda values.

        The continuum of the spatial transform is represented only by these
        samples, each with multiplicity 1.
        """
        return cls(tuple(ModeIndex(two_lambda_from(lam)) for lam in lambda_grid), name="minkowski")

    @property
    def eigenvalues(self) -> List[float]:
        return [mode.lam for mode in self.spectrum]


@dataclass(frozen=True, eq=False)
class FrequencyData:
    """omega and the frequency projectors Pi_+ and Pi_-."""
    omega: float
    pi_plus: np.ndarray = field(repr=False)
    pi_minus: np.ndarray = field(repr=False)


def mode_matrix(lam: float, m: float) -> np.ndarray:
    return np.array([[m, lam], [lam, -m]], dtype=complex)


def _check_mass(m) -> None:
    if np.any(np.asarray(m) <= 0) or not np.all(np.isfinite(m)):
        raise ValueError(f"Mass must be positive and finite, got {m}")


def projector_stack(lam: float, masses: Sequence[float]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized frequency_split: omega (n,) and Pi_+, Pi_- stacked as (n, 2, 2)."""
    m = np.asarray(masses, dtype=float)
    _check_mass(m)
    omega = np.hypot(lam, m)
    h = np.empty(m.shape + (2, 2), dtype=complex)
    h[..., 0, 0] = m / omega
    h[..., 0, 1] = lam / omega
    h[..., 1, 0] = lam / omega
    h[..., 1, 1] = -m / omega
    eye = np.eye(2)
    return omega, 0.5 * (eye + h), 0.5 * (eye - h)


def frequency_split(lam: float, m: float) -> FrequencyData:
    """
    Frequency and spectral projectors of the mode matrix.

    Pi_+- = 1/2 +- (1/(2 omega)) [[m, lambda], [lambda, -m]].

    Raises:
        ValueError: If m <= 0
    """
    _check_mass(m)
    omega, pi_plus, pi_minus = projector_stack(lam, [m])
    return FrequencyData(float(omega[0]), pi_plus[0], pi_minus[0])


def evolution_matrix(lam: float, m: float, t: float) -> np.ndarray:
    """U(t) = e^{-i omega t} Pi_+ + e^{i omega t} Pi_-."""
    data = frequency_split(lam, m)
    phase = np.exp(-1j * data.omega * t)
    return phase * data.pi_plus + np.conj(phase) * data.pi_minus


def ultrastatic_signature(lam: float, m: float) -> SignatureMatrix:
    """Pi_+ - Pi_-, with spectrum {+1, -1} for every mode."""
    data = frequency_split(lam, m)
    return SignatureMatrix(data.pi_plus - data.pi_minus, lam=lam, mass=m)


@dataclass(frozen=True)
class SpectrumRow:
    two_lambda: int
    multiplicity: int
    mass: float
    eigenvalues: Tuple[float, float]


def signature_spectrum(model: UltrastaticModel, masses: Iterable[float]) -> List[SpectrumRow]:
    """Eigenvalues of Pi_+ - Pi_- for every mode of the model and every mass."""
    masses = [float(m) for m in masses]
    rows = []
    for mode in model.spectrum:
        for m in masses:
            s = ultrastatic_signature(mode.lam, m)
            rows.append(SpectrumRow(mode.two_lambda, mode.multiplicity, m, s.eigenvalues))
    logger.debug(f"Computed {len(rows)} ultrastatic spectrum rows for model {model.name}")
    return rows
