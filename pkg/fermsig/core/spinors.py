"""
Two-component mode amplitudes and the inner products in mode variables.

A single spatial mode reduces the Dirac equation to a 2x2 system for
u = (u1, u2). Two forms act on these amplitudes:

- the Cauchy scalar product (.|.)_m = 2*pi <u, u~>_{C^2}, positive definite
- the space-time density  conj(u1) u1~ - conj(u2) u2~, indefinite; integrated
  over time it gives the space-time pairing
"""

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

SIGMA3 = np.diag([1.0, -1.0]).astype(complex)


@dataclass(frozen=True)
class SpinorPair:
    """Point (u1, u2) in C^2."""
    u1: complex
    u2: complex

    def __post_init__(self):
        for name in ("u1", "u2"):
            value = complex(getattr(self, name))
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ValueError(f"SpinorPair component {name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, values: Iterable[complex]) -> "SpinorPair":
        arr = np.asarray(list(values), dtype=complex).reshape(-1)
        if arr.shape != (2,):
            raise ValueError(f"SpinorPair needs exactly two components, got shape {arr.shape}")
        return cls(complex(arr[0]), complex(arr[1]))

    @classmethod
    def basis(cls, index: int) -> "SpinorPair":
        """Cauchy basis datum e_1 = (1, 0) or e_2 = (0, 1) (index 0 or 1)."""
        if index not in (0, 1):
            raise ValueError(f"Basis index must be 0 or 1, got {index}")
        return cls(1.0 if index == 0 else 0.0, 1.0 if index == 1 else 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.u1, self.u2], dtype=complex)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def scaled(self, factor: complex) -> "SpinorPair":
        return SpinorPair(factor * self.u1, factor * self.u2)


def mode_scalar_product(a: SpinorPair, b: SpinorPair) -> complex:
    """
    Cauchy scalar product 2*pi <a, b>_{C^2}, antilinear in the first slot.
    """
    return 2.0 * math.pi * (a.u1.conjugate() * b.u1 + a.u2.conjugate() * b.u2)


def mode_spacetime_density(a: SpinorPair, b: SpinorPair) -> complex:
    """Integrand of the space-time pairing before time integration."""
    return a.u1.conjugate() * b.u1 - a.u2.conjugate() * b.u2
