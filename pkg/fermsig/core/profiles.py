"""
Smooth mass weights eta(m).

A mass-indexed family of solutions is built from a profile eta and a Cauchy
datum u0: the mode data at mass m is eta(m) times the solution with datum u0.
Profiles vanish at and outside the ends of their support, so every family is
compactly supported in the mass interval.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial

from .intervals import MassInterval

ArrayLike = Union[float, np.ndarray]


class ProfileKind(str, Enum):
    """Shape of the envelope on the support."""
    BUMP = "bump"
    POLYNOMIAL_BUMP = "polynomial_bump"


@dataclass(frozen=True)
class MassProfile:
    """
    Weight eta(m) = envelope(x) * p(x) * q(m) on its support (a, b).

    x = (2m - a - b) / (b - a) maps the support onto (-1, 1). The envelope is
    exp(-1/(1 - x^2)) for BUMP and (1 - x^2)^order for POLYNOMIAL_BUMP; p has
    the coefficient list `coefficients` (in x) and q the list `mass_factor`
    (in m). Multiplication by m only touches q.
    """
    interval: MassInterval
    kind: ProfileKind = ProfileKind.BUMP
    center: Optional[float] = None
    width: Optional[float] = None
    coefficients: Tuple[float, ...] = (1.0,)
    order: int = 4
    mass_factor: Tuple[float, ...] = (1.0,)

    def __post_init__(self):
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        object.__setattr__(self, "mass_factor", tuple(float(c) for c in self.mass_factor))
        if (self.center is None) != (self.width is None):
            raise ValueError("MassProfile needs both center and width, or neither")
        if self.width is not None and self.width <= 0:
            raise ValueError(f"Profile width must be positive, got {self.width}")
        a, b = self.support
        if a < self.interval.m_lower - 1e-12 or b > self.interval.m_upper + 1e-12:
            raise ValueError(
                f"Profile support ({a}, {b}) leaves the mass interval "
                f"({self.interval.m_lower}, {self.interval.m_upper})"
            )
        if self.kind is ProfileKind.POLYNOMIAL_BUMP and self.order < 2:
            raise ValueError(f"polynomial_bump needs order >= 2, got {self.order}")
        if not self.coefficients or not self.mass_factor:
            raise ValueError("Profile coefficient lists must not be empty")

    @classmethod
    def bump(cls, interval: MassInterval, center: Optional[float] = None,
             width: Optional[float] = None) -> "MassProfile":
        return cls(interval=interval, kind=ProfileKind.BUMP, center=center, width=width)

    @property
    def support(self) -> Tuple[float, float]:
        if self.center is None:
            return self.interval.m_lower, self.interval.m_upper
        return self.center - 0.5 * self.width, self.center + 0.5 * self.width

    def reduced(self, m: ArrayLike) -> np.ndarray:
        a, b = self.support
        return (2.0 * np.asarray(m, dtype=float) - a - b) / (b - a)

    def value(self, m: ArrayLike) -> np.ndarray:
        """Evaluate eta at one mass or an array of masses."""
        shape = np.shape(m)
        m_arr = np.atleast_1d(np.asarray(m, dtype=float))
        x = self.reduced(m_arr)
        inside = np.abs(x) < 1.0
        out = np.zeros_like(x)
        xi = x[inside]
        if self.kind is ProfileKind.BUMP:
            envelope = np.exp(-1.0 / (1.0 - xi * xi))
        else:
            envelope = (1.0 - xi * xi) ** self.order
        out[inside] = envelope * Polynomial(self.coefficients)(xi) * Polynomial(self.mass_factor)(m_arr[inside])
        return out.reshape(shape)

    def times_mass(self) -> "MassProfile":
        """Profile of T*family, i.e. m * eta(m)."""
        q = Polynomial(self.mass_factor) * Polynomial([0.0, 1.0])
        return replace(self, mass_factor=tuple(q.coef))

    def overlaps(self, other: "MassProfile") -> bool:
        a, b = self.support
        c, d = other.support
        return max(a, c) < min(b, d)


def bump_value(profile: MassProfile, m: float) -> float:
    """Value of the profile at a single mass (zero at and beyond the support ends)."""
    return float(profile.value(m))
