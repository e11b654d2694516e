"""
Configuration management for the fermsig command-line tool.

Configuration is loaded from (in priority order):
1. --set key=value overrides (highest priority)
2. Environment variables
3. Config file (JSON; parsed as YAML, of which JSON is a subset)
4. Defaults (lowest priority)
"""

import os
import re
from dataclasses import dataclass, field, fields, is_dataclass
from pathlib import Path
from typing import Any, List, Optional

import yaml

from ..core.intervals import MassInterval, two_lambda_from
from ..core.profiles import MassProfile, ProfileKind
from ..core.spinors import SpinorPair
from ..desitter.modes import LAMBDA_BUDGET_TWO

DEFAULT_CONFIG_PATH = Path(__file__).parent / "data" / "default_config.json"

SPACETIMES = ("desitter", "ultrastatic")
FORMATS = ("csv", "json")

_EXPONENT_FLOAT = re.compile(r"[-+]?(\d+\.?\d*|\.\d+)[eE][-+]?\d+")


class ConfigError(ValueError):
    """Invalid configuration file, override or value."""


@dataclass
class MassIntervalConfig:
    """Mass interval I = (lower, upper)."""
    lower: float = 1.0
    upper: float = 2.0

    def build(self) -> MassInterval:
        return MassInterval(float(self.lower), float(self.upper))


@dataclass
class ProfileConfig:
    """Mass profile; center/width default to the whole interval."""
    kind: str = "bump"
    center: Optional[float] = None
    width: Optional[float] = None
    order: int = 4

    def build(self, interval: MassInterval) -> MassProfile:
        return MassProfile(interval=interval, kind=ProfileKind(self.kind), center=self.center,
                           width=self.width, order=int(self.order))


@dataclass
class QuadratureConfig:
    """Mass quadrature."""
    nodes: int = 64
    refined_nodes: int = 128


@dataclass
class TolerancesConfig:
    """Integrator, truncation and spectral tolerances."""
    rtol: float = 1e-10
    eps: float = 1e-12
    zero_tol: float = 1e-10


@dataclass
class TimesConfig:
    """Time window and sample times."""
    t_max: float = 200.0
    t_start: float = 0.0
    t_stop: float = 10.0
    samples: int = 11


@dataclass
class VerifyConfig:
    """Parameters of the property suite."""
    decay_times: List[float] = field(default_factory=lambda: [10.0, 20.0, 40.0, 60.0, 80.0, 100.0])
    gronwall_times: List[float] = field(default_factory=lambda: [2.0, 5.0, 10.0, 20.0, 30.0])
    conservation_times: List[float] = field(default_factory=lambda: [-30.0, -10.0, -3.0, 3.0, 10.0, 30.0])
    oracle_tolerance: float = 1e-3
    decay_tolerance: float = 0.05
    check_mass: float = 1.5
    sub_interval: List[float] = field(default_factory=lambda: [1.3, 1.7])
    widths: List[float] = field(default_factory=lambda: [0.2, 0.1, 0.05])
    independence_lambdas: List[float] = field(default_factory=lambda: [1.5])
    t_check: float = 3.0


@dataclass
class OutputConfig:
    """Output format and path (None writes to stdout)."""
    format: str = "csv"
    path: Optional[str] = None


@dataclass
class RunConfig:
    """Main configuration container."""
    spacetime: str = "desitter"
    lambda_list: List[float] = field(default_factory=lambda: [0.0, 1.5])
    mass_grid: List[float] = field(default_factory=lambda: [1.1, 1.3, 1.5, 1.7, 1.9])
    datum: List[Any] = field(default_factory=lambda: [1.0, 0.0])
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    mass_interval: MassIntervalConfig = field(default_factory=MassIntervalConfig)
    profile: ProfileConfig = field(default_factory=ProfileConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    tolerances: TolerancesConfig = field(default_factory=TolerancesConfig)
    times: TimesConfig = field(default_factory=TimesConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def load(cls, config_path: Optional[Path] = None, overrides: Optional[List[str]] = None) -> "RunConfig":
        """
        Load configuration from file, environment variables and overrides.

        Args:
            config_path: Optional path to a JSON (or YAML) config file;
                the packaged default config is used when omitted
            overrides: Optional list of "dotted.key=value" strings

        Returns:
            Loaded RunConfig instance

        Raises:
            ConfigError: If the file or an override cannot be applied
        """
        config = cls()

        if config_path is None:
            config_path = DEFAULT_CONFIG_PATH
        config_path = Path(config_path)
        if not config_path.exists():
            raise ConfigError(f"Config file not found: {config_path}")
        config._load_from_file(config_path)

        # Environment variables override the file
        config._load_from_env()

        for override in overrides or []:
            config.apply_override(override)

        return config

    def _load_from_file(self, path: Path) -> None:
        """Load configuration from a JSON/YAML file."""
        try:
            with open(path, encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"Cannot parse config file {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"Config file {path} must contain a mapping")
        _merge(self, data, prefix="")

    def _load_from_env(self) -> None:
        """Load configuration from environment variables."""
        if threads := os.getenv("FERMSIG_THREADS"):
            try:
                self.threads = int(threads)
            except ValueError as e:
                raise ConfigError(f"FERMSIG_THREADS must be an integer, got {threads!r}") from e

    def apply_override(self, override: str) -> None:
        """Apply one "dotted.key=value" override; the value is parsed as YAML."""
        key, sep, raw = override.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"Override must look like key=value, got {override!r}")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"Cannot parse override value {raw!r}: {e}") from e
        target: Any = self
        parts = key.strip().split(".")
        for part in parts[:-1]:
            if not is_dataclass(target) or part not in _field_names(target):
                raise ConfigError(f"Unknown config section in {key!r}")
            target = getattr(target, part)
        if not is_dataclass(target) or parts[-1] not in _field_names(target):
            raise ConfigError(f"Unknown config key {key!r}")
        if is_dataclass(getattr(target, parts[-1])):
            if not isinstance(value, dict):
                raise ConfigError(f"Config section {key!r} needs a mapping")
            _merge(getattr(target, parts[-1]), value, prefix=key + ".")
        else:
            setattr(target, parts[-1], _coerce(value))

    def validate(self) -> list[str]:
        """
        Validate the configuration.

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if self.spacetime not in SPACETIMES:
            errors.append(f"spacetime must be one of {SPACETIMES}, got {self.spacetime!r}")

        if not isinstance(self.lambda_list, list) or not self.lambda_list:
            errors.append("lambda_list must be a non-empty list")
        else:
            for lam in self.lambda_list:
                try:
                    two_lambda = two_lambda_from(lam)
                except (TypeError, ValueError):
                    errors.append(f"lambda_list entry {lam!r} is not a half-integer")
                    continue
                if self.spacetime == "desitter" and abs(two_lambda) > LAMBDA_BUDGET_TWO:
                    errors.append(f"|lambda|={abs(two_lambda) / 2} exceeds the de Sitter budget {LAMBDA_BUDGET_TWO}/2")

        if not self.mass_grid or any(not _positive(m) for m in self.mass_grid):
            errors.append("mass_grid must be a non-empty list of positive masses")

        try:
            if not self.cauchy_datum().norm() > 0:
                errors.append("datum must not be zero")
        except (TypeError, ValueError) as e:
            errors.append(f"Invalid datum: {e}")

        try:
            interval = self.mass_interval.build()
            self.profile.build(interval)
        except (TypeError, ValueError) as e:
            errors.append(f"Invalid mass interval or profile: {e}")

        for name in ("rtol", "eps", "zero_tol"):
            if not _positive(getattr(self.tolerances, name)):
                errors.append(f"tolerances.{name} must be positive")

        if not _positive(self.times.t_max):
            errors.append("times.t_max must be positive")
        if not isinstance(self.times.samples, int) or self.times.samples < 1:
            errors.append("times.samples must be a positive integer")

        for name in ("nodes", "refined_nodes"):
            value = getattr(self.quadrature, name)
            if not isinstance(value, int) or value < 1:
                errors.append(f"quadrature.{name} must be a positive integer")

        if not isinstance(self.threads, int) or self.threads < 1:
            errors.append("threads must be a positive integer (FERMSIG_THREADS)")

        if self.output.format not in FORMATS:
            errors.append(f"output.format must be one of {FORMATS}, got {self.output.format!r}")

        errors.extend(self._validate_verify())

        return errors

    def _validate_verify(self) -> list[str]:
        """Sub-interval, check mass and bump widths of the interval-independence check."""
        verify = self.verify
        if not isinstance(verify.sub_interval, list) or len(verify.sub_interval) != 2:
            return ["verify.sub_interval must have two entries"]
        try:
            interval = self.interval()
        except (TypeError, ValueError):
            # reported with the mass interval
            return []
        try:
            sub = MassInterval(float(verify.sub_interval[0]), float(verify.sub_interval[1]))
        except (TypeError, ValueError) as e:
            return [f"Invalid verify.sub_interval: {e}"]
        errors = []
        if not interval.contains_interval(sub):
            errors.append(f"verify.sub_interval {verify.sub_interval} is not inside the mass interval")
        if not _positive(verify.check_mass) or not sub.contains(verify.check_mass):
            errors.append(f"verify.check_mass {verify.check_mass!r} is not inside verify.sub_interval")
            return errors
        if not isinstance(verify.widths, list) or not verify.widths:
            errors.append("verify.widths must be a non-empty list")
            return errors
        for width in verify.widths:
            if not _positive(width):
                errors.append(f"verify.widths entry {width!r} must be positive")
                continue
            try:
                MassProfile.bump(sub, center=float(verify.check_mass), width=float(width))
            except ValueError:
                errors.append(f"A bump of width {width} around m={verify.check_mass} leaves verify.sub_interval")
        for lam in verify.independence_lambdas:
            try:
                two_lambda_from(lam)
            except (TypeError, ValueError):
                errors.append(f"verify.independence_lambdas entry {lam!r} is not a half-integer")
        return errors

    def interval(self) -> MassInterval:
        return self.mass_interval.build()

    def mass_profile(self) -> MassProfile:
        return self.profile.build(self.interval())

    def sample_times(self) -> List[float]:
        if self.times.samples == 1:
            return [float(self.times.t_start)]
        step = (self.times.t_stop - self.times.t_start) / (self.times.samples - 1)
        return [self.times.t_start + k * step for k in range(self.times.samples)]

    def cauchy_datum(self) -> SpinorPair:
        """
        Cauchy datum u0 at t = 0.

        Each entry is a real number, a [re, im] pair or a complex string such as "0.6+0.8j".

        Raises:
            ValueError: If the datum does not have two valid entries
        """
        if not isinstance(self.datum, list) or len(self.datum) != 2:
            raise ValueError(f"datum must have two entries, got {self.datum!r}")
        return SpinorPair(_complex_entry(self.datum[0]), _complex_entry(self.datum[1]))

    def to_dict(self) -> dict:
        return _as_dict(self)

    def report_dict(self) -> dict:
        """Settings that determine the results; threads and output location are left out."""
        data = self.to_dict()
        data.pop("threads")
        data.pop("output")
        return data


def _positive(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


def _field_names(obj) -> set:
    return {f.name for f in fields(obj)}


def _merge(target, data: dict, prefix: str) -> None:
    """Copy known keys of `data` onto the dataclass `target`, recursing into sections."""
    names = _field_names(target)
    for key, value in data.items():
        if key not in names:
            raise ConfigError(f"Unknown config key {prefix}{key!r}")
        current = getattr(target, key)
        if is_dataclass(current):
            if not isinstance(value, dict):
                raise ConfigError(f"Config section {prefix}{key} needs a mapping")
            _merge(current, value, prefix=f"{prefix}{key}.")
        else:
            setattr(target, key, _coerce(value))


def _as_dict(obj) -> Any:
    if is_dataclass(obj):
        return {f.name: _as_dict(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, list):
        return [_as_dict(v) for v in obj]
    return obj


def _coerce(value: Any) -> Any:
    """YAML reads exponent-only floats such as 1e-10 as strings; convert them back."""
    if isinstance(value, list):
        return [_coerce(v) for v in value]
    if isinstance(value, str) and _EXPONENT_FLOAT.fullmatch(value.strip()):
        return float(value)
    return value


def _complex_entry(value: Any) -> complex:
    """One datum component: a real number, a [re, im] pair or a complex string."""
    if isinstance(value, bool):
        raise ValueError(f"datum entry must be a number, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
        return complex(value[0], value[1])
    if isinstance(value, str):
        return complex(value.strip().replace(" ", ""))
    raise ValueError(f"datum entry must be a number, a [re, im] pair or a complex string, got {value!r}")
