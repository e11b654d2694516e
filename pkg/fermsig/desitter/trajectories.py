"""
Dense fundamental solutions and a per-mode trajectory cache.

The time integral of the space-time pairing samples every mass node at
thousands of times. Each node is solved once for the 2x2 fundamental matrix
of the f-equation (dense output, forward and backward from t = 0) and every
later sample is an interpolation.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from ..core.spinors import SpinorPair
from .modes import DEFAULT_METHOD, DEFAULT_RTOL, DeSitterMode, f_rhs, integrate

logger = logging.getLogger(__name__)


class FundamentalSolution:
    """
    F(t) with f(t) = F(t) f(0) on [-horizon, horizon].

    The u-picture follows by dressing: U(t) = diag(e^{-imt}, e^{imt}) F(t).
    """

    def __init__(self, mode: DeSitterMode, horizon: float, forward=None, backward=None):
        self.mode = mode
        self.horizon = horizon
        self._forward = forward
        self._backward = backward

    def _check(self, t: float) -> None:
        if abs(t) > self.horizon * (1 + 1e-12):
            raise ValueError(f"t={t} is outside the solved range [-{self.horizon}, {self.horizon}]")

    def f_matrix(self, t: float) -> np.ndarray:
        self._check(t)
        if self._forward is None:
            return np.eye(2, dtype=complex)
        branch = self._forward if t >= 0 else self._backward
        return np.asarray(branch(t), dtype=complex).reshape(2, 2)

    def u_matrix(self, t: float) -> np.ndarray:
        phase = np.exp(-1j * self.mode.mass * t)
        return np.array([[phase], [np.conj(phase)]]) * self.f_matrix(t)

    def f_at(self, f0: SpinorPair, t: float) -> SpinorPair:
        return SpinorPair.from_array(self.f_matrix(t) @ f0.as_array())

    def u_at(self, u0: SpinorPair, t: float) -> SpinorPair:
        return SpinorPair.from_array(self.u_matrix(t) @ u0.as_array())


def fundamental_solution(mode: DeSitterMode, horizon: float, rtol: float = DEFAULT_RTOL,
                         method: str = DEFAULT_METHOD) -> FundamentalSolution:
    """
    Solve the f-equation for the identity datum with dense output.

    Args:
        mode: Eigenvalue and mass
        horizon: Solutions are available for |t| <= horizon
        rtol: Integrator tolerance
        method: solve_ivp method name

    Returns:
        FundamentalSolution (exact identity at lambda = 0)
    """
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if mode.two_lambda == 0:
        return FundamentalSolution(mode, horizon)
    rhs = f_rhs(mode)
    y0 = np.eye(2, dtype=complex).reshape(-1)
    forward = integrate(rhs, y0, 0.0, horizon, rtol, method, dense_output=True).sol
    backward = integrate(rhs, y0, 0.0, -horizon, rtol, method, dense_output=True).sol
    return FundamentalSolution(mode, horizon, forward, backward)


@dataclass(frozen=True)
class TrajectoryKey:
    two_lambda: int
    mass: float
    rtol: float
    horizon: float
    method: str
    # compared by identity
    scale_factor: Callable[[float], float]


class TrajectoryCache:
    """
    FundamentalSolution per (2*lambda, m, rtol, horizon, method, scale factor).

    Builds are single-writer per key; a finished entry is shared read-only.
    """

    def __init__(self):
        self._entries: Dict[TrajectoryKey, FundamentalSolution] = {}
        self._locks: Dict[TrajectoryKey, threading.Lock] = {}
        self._guard = threading.Lock()
        self.builds = 0
        self.hits = 0

    def _lock_for(self, key: TrajectoryKey) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(key, threading.Lock())

    def _lookup(self, key: TrajectoryKey) -> Optional[FundamentalSolution]:
        with self._guard:
            entry = self._entries.get(key)
            if entry is not None:
                self.hits += 1
            return entry

    def get(self, mode: DeSitterMode, horizon: float, rtol: float = DEFAULT_RTOL,
            method: str = DEFAULT_METHOD) -> FundamentalSolution:
        key = TrajectoryKey(mode.two_lambda, float(mode.mass), float(rtol), float(horizon), method,
                            mode.scale_factor)
        entry = self._lookup(key)
        if entry is not None:
            return entry
        with self._lock_for(key):
            entry = self._lookup(key)
            if entry is not None:
                return entry
            entry = fundamental_solution(mode, horizon, rtol, method)
            with self._guard:
                self._entries[key] = entry
                self.builds += 1
                # later callers find the entry before asking for a lock
                self._locks.pop(key, None)
            logger.debug(f"Built trajectory for {key}")
            return entry

    def __len__(self) -> int:
        with self._guard:
            return len(self._entries)

    def clear(self) -> None:
        with self._guard:
            self._entries.clear()
            self._locks.clear()


def resolve_cache(cache: Optional[TrajectoryCache]) -> TrajectoryCache:
    """The given cache, or a fresh one for a single call."""
    return cache if cache is not None else TrajectoryCache()
