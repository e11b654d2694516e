"""
Scattering diagnostics over (lambda, m) grids (`fermsig sweep`).

One row per mode: truncation time, Gronwall tail bound, unitarity and
time-reversal defects, |beta|^2 and nu, plus the decay constant measured for
the configured profile in that spatial mode.
"""

import logging
from typing import Dict, Tuple

import numpy as np

from ...core.intervals import two_lambda_from
from ...core.quadrature import gauss_legendre
from ...core.spinors import SpinorPair
from ...desitter.asymptotics import bogoliubov_coefficient, scattering_matrices, time_reversal_defect
from ...desitter.modes import DeSitterMode
from ...desitter.trajectories import TrajectoryCache
from ...massosc.family import MassFamily, multiplicity_of
from ...massosc.integration import decay_report
from ...signature.assembly import signature_from_pair
from ...ultrastatic.integration import ultrastatic_decay_report
from ...ultrastatic.model import evolution_matrix, ultrastatic_signature
from ..config import RunConfig
from ..output.writers import Table, write_table
from .workers import run_tasks

logger = logging.getLogger(__name__)

COLUMNS = [
    "two_lambda", "lambda", "multiplicity", "mass", "truncation_time", "tail_bound",
    "unitarity_defect", "time_reversal_defect", "bogoliubov", "nu", "decay_constant",
]


def desitter_mode_row(two_lambda: int, mass: float, eps: float) -> Tuple:
    mode = DeSitterMode(two_lambda, mass)
    pair = scattering_matrices(mode, eps)
    return (
        pair.truncation_time, pair.tail_bound, pair.unitarity_defect(),
        time_reversal_defect(mode, eps), bogoliubov_coefficient(pair), signature_from_pair(pair).nu,
    )


def ultrastatic_mode_row(two_lambda: int, mass: float, t: float) -> Tuple:
    """No truncation is needed; unitarity and time reversal are measured on U(t)."""
    lam = two_lambda / 2.0
    u = evolution_matrix(lam, mass, t)
    unitarity = float(np.linalg.norm(u.conj().T @ u - np.eye(2), 2))
    reversal = float(np.linalg.norm(u - evolution_matrix(lam, mass, -t).conj(), 2))
    return 0.0, 0.0, unitarity, reversal, 0.0, ultrastatic_signature(lam, mass).nu


def sweep_table(config: RunConfig) -> Table:
    eps = config.tolerances.eps
    rtol = config.tolerances.rtol
    profile = config.mass_profile()
    quad = gauss_legendre(config.interval(), config.quadrature.nodes)
    times = config.verify.decay_times
    datum = SpinorPair.basis(0)
    cache = TrajectoryCache()

    mode_tasks = []
    decay_tasks = []
    for lam in config.lambda_list:
        two_lambda = two_lambda_from(lam)
        if config.spacetime == "desitter":
            family = MassFamily(profile, datum, two_lambda)
            decay_tasks.append((two_lambda, lambda f=family: decay_report(f, times, quad, rtol, cache).constant))
        else:
            decay_tasks.append((two_lambda, lambda tl=two_lambda: ultrastatic_decay_report(
                profile, datum, tl / 2.0, times, quad).constant))
        for mass in config.mass_grid:
            mass = float(mass)
            if config.spacetime == "desitter":
                fn = (lambda tl=two_lambda, m=mass: desitter_mode_row(tl, m, eps))
            else:
                fn = (lambda tl=two_lambda, m=mass: ultrastatic_mode_row(tl, m, config.times.t_stop))
            mode_tasks.append(((two_lambda, mass), fn))

    decay: Dict[int, float] = dict(run_tasks(decay_tasks, config.threads))
    table = Table(list(COLUMNS))
    for (two_lambda, mass), values in run_tasks(mode_tasks, config.threads):
        table.add(two_lambda, two_lambda / 2.0, multiplicity_of(two_lambda), mass, *values, decay[two_lambda])
    return table


def cmd_sweep(config: RunConfig) -> int:
    logger.info(f"Sweeping {len(config.lambda_list)} x {len(config.mass_grid)} {config.spacetime} modes")
    table = sweep_table(config)
    write_table(table, config.output.format, config.output.path, "sweep",
                {"spacetime": config.spacetime, "config": config.report_dict()})
    return 0
