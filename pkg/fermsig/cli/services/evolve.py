"""Trajectory tables for single modes (`fermsig evolve`)."""

import logging
from typing import List, Tuple

from ...core.intervals import two_lambda_from
from ...core.spinors import SpinorPair, mode_scalar_product
from ...desitter.modes import DeSitterMode, evolve_mode
from ...ultrastatic.model import evolution_matrix
from ..config import RunConfig
from ..output.writers import Table, write_table
from .workers import run_tasks

logger = logging.getLogger(__name__)

COLUMNS = ["two_lambda", "lambda", "mass", "t", "u1_re", "u1_im", "u2_re", "u2_im", "norm", "current"]

Row = Tuple


def _row(two_lambda: int, mass: float, t: float, u: SpinorPair) -> Row:
    return (
        two_lambda, two_lambda / 2.0, mass, float(t),
        u.u1.real, u.u1.imag, u.u2.real, u.u2.imag,
        u.norm(), float(mode_scalar_product(u, u).real),
    )


def desitter_trajectory(two_lambda: int, mass: float, u0: SpinorPair, times: List[float],
                        rtol: float) -> List[Row]:
    """u(t) at the sample times, each leg integrated from the previous sample."""
    mode = DeSitterMode(two_lambda, mass)
    rows = []
    t_prev, u = 0.0, u0
    for t in sorted(times):
        u = evolve_mode(u, mode, t_prev, t, rtol)
        t_prev = t
        rows.append(_row(two_lambda, mass, t, u))
    return rows


def ultrastatic_trajectory(two_lambda: int, mass: float, u0: SpinorPair, times: List[float]) -> List[Row]:
    """U(t) u0 from the closed-form evolution."""
    lam = two_lambda / 2.0
    return [
        _row(two_lambda, mass, t, SpinorPair.from_array(evolution_matrix(lam, mass, t) @ u0.as_array()))
        for t in sorted(times)
    ]


def evolve_table(config: RunConfig) -> Table:
    u0 = config.cauchy_datum()
    times = config.sample_times()
    rtol = config.tolerances.rtol
    tasks = []
    for lam in config.lambda_list:
        two_lambda = two_lambda_from(lam)
        for mass in config.mass_grid:
            mass = float(mass)
            if config.spacetime == "desitter":
                fn = (lambda tl=two_lambda, m=mass: desitter_trajectory(tl, m, u0, times, rtol))
            else:
                fn = (lambda tl=two_lambda, m=mass: ultrastatic_trajectory(tl, m, u0, times))
            tasks.append(((two_lambda, mass), fn))

    table = Table(list(COLUMNS))
    for _, rows in run_tasks(tasks, config.threads):
        for row in rows:
            table.add(*row)
    return table


def cmd_evolve(config: RunConfig) -> int:
    logger.info(f"Evolving {len(config.lambda_list)} x {len(config.mass_grid)} {config.spacetime} modes")
    table = evolve_table(config)
    write_table(table, config.output.format, config.output.path, "evolve",
                {"spacetime": config.spacetime, "config": config.report_dict()})
    logger.info(f"Wrote {len(table.rows)} trajectory rows")
    return 0

