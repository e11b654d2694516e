"""
Mass-indexed families of de Sitter solutions.

A family is a profile eta(m) and a Cauchy datum u0 at t = 0 in one spatial
mode; its member at mass m is eta(m) times the solution with datum u0.
"""

from dataclasses import dataclass, replace
from typing import Dict, Iterable, Mapping, Tuple

from ..core.intervals import MassInterval, ModeIndex, two_lambda_from
from ..core.profiles import MassProfile
from ..core.spinors import SpinorPair
from ..desitter.modes import DeSitterMode

ModeKey = Tuple[int, int]


@dataclass(frozen=True)
class MassFamily:
    """Profile, datum and spatial eigenvalue (as 2*lambda)."""
    profile: MassProfile
    u0: SpinorPair
    two_lambda: int

    def __post_init__(self):
        object.__setattr__(self, "two_lambda", int(self.two_lambda))

    @classmethod
    def create(cls, profile: MassProfile, u0: SpinorPair, lam) -> "MassFamily":
        return cls(profile, u0, two_lambda_from(lam))

    @property
    def lam(self) -> float:
        return self.two_lambda / 2.0

    @property
    def interval(self) -> MassInterval:
        return self.profile.interval

    def mode_at(self, m: float) -> DeSitterMode:
        return DeSitterMode(self.two_lambda, float(m))

    def times_mass(self) -> "MassFamily":
        """The family multiplied by the mass operator T."""
        return replace(self, profile=self.profile.times_mass())

    def with_datum(self, u0: SpinorPair) -> "MassFamily":
        return replace(self, u0=u0)


def multiplicity_of(two_lambda: int) -> int:
    """Multiplicity of the eigenvalue on S^3; other values count once."""
    if two_lambda % 2 and abs(two_lambda) >= 3:
        return ModeIndex.s3(two_lambda).multiplicity
    return 1


class MultiModeFamily:
    """
    Finitely many single-mode families keyed by (2*lambda, k).

    k < multiplicity labels an orthonormal eigenspinor of the eigenspace;
    components with different keys are orthogonal.
    """

    def __init__(self, components: Mapping[ModeKey, MassFamily]):
        if not components:
            raise ValueError("MultiModeFamily needs at least one component")
        checked: Dict[ModeKey, MassFamily] = {}
        for key, family in components.items():
            two_lambda, k = key
            if family.two_lambda != two_lambda:
                raise ValueError(f"Component {key} carries 2*lambda={family.two_lambda}")
            if not 0 <= k < multiplicity_of(two_lambda):
                raise ValueError(f"Eigenspinor index {k} out of range for 2*lambda={two_lambda}")
            checked[(int(two_lambda), int(k))] = family
        self.components = dict(sorted(checked.items()))

    @classmethod
    def from_families(cls, families: Iterable[MassFamily]) -> "MultiModeFamily":
        """One component per family, each in the first eigenspinor of its eigenvalue."""
        components: Dict[ModeKey, MassFamily] = {}
        for family in families:
            key = (family.two_lambda, 0)
            if key in components:
                raise ValueError(f"Two families share the mode key {key}")
            components[key] = family
        return cls(components)

    @classmethod
    def single(cls, family: MassFamily) -> "MultiModeFamily":
        return cls({(family.two_lambda, 0): family})

    def keys(self):
        return self.components.keys()

    def __getitem__(self, key: ModeKey) -> MassFamily:
        return self.components[key]

    def __len__(self) -> int:
        return len(self.components)
