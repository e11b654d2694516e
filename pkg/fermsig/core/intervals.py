"""
Mass intervals and spatial mode labels.

Eigenvalues of the spatial Dirac operator are half-integers on S^3, so mode
labels store 2*lambda as an integer.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

import numpy as np


@dataclass(frozen=True)
class MassInterval:
    """Open mass interval (m_lower, m_upper) bounded away from zero."""
    m_lower: float
    m_upper: float

    def __post_init__(self):
        if not (np.isfinite(self.m_lower) and np.isfinite(self.m_upper)):
            raise ValueError(f"Mass interval bounds must be finite, got ({self.m_lower}, {self.m_upper})")
        if not 0 < self.m_lower < self.m_upper:
            raise ValueError(
                f"Mass interval must satisfy 0 < m_lower < m_upper, got ({self.m_lower}, {self.m_upper})"
            )

    @property
    def length(self) -> float:
        return self.m_upper - self.m_lower

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.m_lower + self.m_upper)

    def contains(self, m: float) -> bool:
        """Strict containment (endpoints excluded)."""
        return self.m_lower < m < self.m_upper

    def contains_interval(self, other: "MassInterval") -> bool:
        return self.m_lower <= other.m_lower and other.m_upper <= self.m_upper


def two_lambda_from(value: Union[int, float, str, Fraction]) -> int:
    """
    Convert an eigenvalue to its doubled integer form.

    Args:
        value: Eigenvalue as float (1.5), string ("3/2", "1.5") or Fraction

    Returns:
        The integer 2*lambda

    Raises:
        ValueError: If the value is not exactly a half-integer
    """
    # floats convert exactly, so 1.5000001 is not snapped to 3/2
    try:
        frac = Fraction(value.strip()) if isinstance(value, str) else Fraction(value)
    except OverflowError as e:
        raise ValueError(f"Eigenvalue {value} is not finite") from e
    doubled = 2 * frac
    if doubled.denominator != 1:
        raise ValueError(f"Eigenvalue {value} is not a half-integer")
    return int(doubled)


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Spatial eigenvalue (stored as 2*lambda) with its multiplicity."""
    two_lambda: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"Multiplicity must be >= 1, got {self.multiplicity}")

    @property
    def lam(self) -> float:
        return self.two_lambda / 2.0

    @classmethod
    def s3(cls, two_lambda: int) -> "ModeIndex":
        """Mode of the Dirac operator on the unit S^3 (multiplicity lambda^2 - 1/4)."""
        if two_lambda % 2 == 0 or abs(two_lambda) < 3:
            raise ValueError(f"2*lambda={two_lambda} is not in the spectrum of the Dirac operator on S^3")
        # lambda^2 - 1/4 = (4 lambda^2 - 1) / 4
        return cls(two_lambda, (two_lambda * two_lambda - 1) // 4)


def s3_spectrum(max_two_lambda: int) -> List[ModeIndex]:
    """
    Eigenvalues +-3/2, +-5/2, ... of the Dirac operator on S^3 up to |2 lambda| <= max_two_lambda.

    Returns:
        Modes sorted by lambda
    """
    modes = []
    for k in range(3, max_two_lambda + 1, 2):
        modes.append(ModeIndex.s3(k))
        modes.append(ModeIndex.s3(-k))
    return sorted(modes)
