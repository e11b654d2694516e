"""
Mode-level signature matrices and their spectral projectors.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np

from ..core.spinors import SpinorPair, mode_scalar_product

logger = logging.getLogger(__name__)

DEFAULT_ZERO_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SignatureMatrix:
    """
    2x2 matrix of the signature operator in the Cauchy basis e_1, e_2 at t = 0.

    (e_i | S e_j)_m = 2*pi * entries[i, j].
    """
    entries: np.ndarray = field(repr=False)
    lam: float
    mass: float

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (2, 2):
            raise ValueError(f"SignatureMatrix needs a 2x2 matrix, got shape {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    @property
    def operator_norm(self) -> float:
        return float(np.linalg.norm(self.entries, 2))

    @cached_property
    def eigenvalues(self) -> Tuple[float, float]:
        values = np.linalg.eigvalsh(self.hermitian_part())
        return float(values[0]), float(values[1])

    @property
    def nu(self) -> float:
        low, high = self.eigenvalues
        return 0.5 * (high - low)

    def hermitian_part(self) -> np.ndarray:
        return 0.5 * (self.entries + self.entries.conj().T)

    def in_basis(self, basis: np.ndarray) -> "SignatureMatrix":
        """Matrix in the orthonormal basis given by the columns of `basis`."""
        basis = np.asarray(basis, dtype=complex)
        return SignatureMatrix(basis.conj().T @ self.entries @ basis, self.lam, self.mass)

    def pairing(self, a: SpinorPair, b: SpinorPair) -> complex:
        """(a | S b)_m."""
        return mode_scalar_product(a, SpinorPair.from_array(self.entries @ b.as_array()))


@dataclass(frozen=True, eq=False)
class SpectralSplit:
    """Spectral projectors onto the positive and negative eigenspaces."""
    nu: float
    p_plus: np.ndarray = field(repr=False)
    p_minus: np.ndarray = field(repr=False)
    degenerate_flag: bool
    eigenvalues: Tuple[float, float] = (0.0, 0.0)
    eigenvectors: np.ndarray = field(default=None, repr=False)

    def idempotence_defect(self) -> float:
        return max(
            float(np.linalg.norm(p @ p - p, 2)) for p in (self.p_plus, self.p_minus)
        )

    def orthogonality_defect(self) -> float:
        return float(np.linalg.norm(self.p_plus @ self.p_minus, 2))

    def completeness_defect(self) -> float:
        return float(np.linalg.norm(self.p_plus + self.p_minus - np.eye(2), 2))


def spectral_split(s: SignatureMatrix, zero_tol: float = DEFAULT_ZERO_TOL) -> SpectralSplit:
    """
    Eigendecomposition of a signature matrix.

    Eigenvalues with |value| < zero_tol belong to neither projector and set the
    degenerate flag.

    Args:
        s: Signature matrix
        zero_tol: Threshold below which an eigenvalue counts as zero

    Returns:
        SpectralSplit
    """
    values, vectors = np.linalg.eigh(s.hermitian_part())
    p_plus = np.zeros((2, 2), dtype=complex)
    p_minus = np.zeros((2, 2), dtype=complex)
    degenerate = False
    for k, value in enumerate(values):
        v = vectors[:, k:k + 1]
        if value >= zero_tol:
            p_plus += v @ v.conj().T
        elif value <= -zero_tol:
            p_minus += v @ v.conj().T
        else:
            degenerate = True
    if degenerate:
        logger.warning(f"Zero eigenvalue in signature matrix at lambda={s.lam}, m={s.mass}")
    return SpectralSplit(
        nu=0.5 * float(values[1] - values[0]),
        p_plus=p_plus,
        p_minus=p_minus,
        degenerate_flag=degenerate,
        eigenvalues=(float(values[0]), float(values[1])),
        eigenvectors=vectors,
    )


def mass_normalization_defect(split: SpectralSplit, s: SignatureMatrix) -> float:
    """
    ||S p_minus + nu p_minus||_2.

    The fermionic projector obeys P_m P_m' = delta(m - m') (-S) P_m; on the
    negative subspace -S acts as nu rather than 1, and this measures that factor.
    """
    return float(np.linalg.norm(s.entries @ split.p_minus + split.nu * split.p_minus, 2))
