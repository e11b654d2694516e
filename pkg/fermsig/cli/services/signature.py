"""Signature tables over (lambda, m) grids (`fermsig signature`)."""

import logging
from typing import Tuple

from ...core.intervals import two_lambda_from
from ...signature.checks import InterpolationRow, interpolation_profile
from ...signature.matrix import spectral_split
from ...ultrastatic.model import ultrastatic_signature
from ..config import RunConfig
from ..output.writers import Table, write_table
from .workers import run_tasks

logger = logging.getLogger(__name__)

PROJECTOR_COLUMNS = [
    f"p_minus_{i}{j}_{part}" for i in (1, 2) for j in (1, 2) for part in ("re", "im")
]
COLUMNS = [
    "two_lambda", "lambda", "mass", "nu", "eig_low", "eig_high",
    "distance_plus", "distance_minus", "bogoliubov",
] + PROJECTOR_COLUMNS


def _row(row: InterpolationRow) -> Tuple:
    projector = []
    for value in row.p_minus:
        projector.extend((value.real, value.imag))
    return (
        row.two_lambda, row.two_lambda / 2.0, row.mass, row.nu, row.eigenvalues[0], row.eigenvalues[1],
        row.distance_plus, row.distance_minus, row.bogoliubov, *projector,
    )


def desitter_row(two_lambda: int, mass: float, eps: float, zero_tol: float) -> InterpolationRow:
    return interpolation_profile(two_lambda / 2.0, [mass], eps, zero_tol)[0]


def ultrastatic_row(two_lambda: int, mass: float, zero_tol: float) -> InterpolationRow:
    """Ultrastatic modes have no mixing: both asymptotic splittings equal Pi_+ - Pi_-."""
    s = ultrastatic_signature(two_lambda / 2.0, mass)
    split = spectral_split(s, zero_tol)
    return InterpolationRow(
        two_lambda=two_lambda,
        mass=mass,
        nu=split.nu,
        eigenvalues=split.eigenvalues,
        distance_plus=0.0,
        distance_minus=0.0,
        bogoliubov=0.0,
        p_minus=tuple(complex(x) for x in split.p_minus.reshape(-1)),
    )


def signature_table(config: RunConfig) -> Table:
    eps = config.tolerances.eps
    zero_tol = config.tolerances.zero_tol
    tasks = []
    for lam in config.lambda_list:
        two_lambda = two_lambda_from(lam)
        for mass in config.mass_grid:
            mass = float(mass)
            if config.spacetime == "desitter":
                fn = (lambda tl=two_lambda, m=mass: desitter_row(tl, m, eps, zero_tol))
            else:
                fn = (lambda tl=two_lambda, m=mass: ultrastatic_row(tl, m, zero_tol))
            tasks.append(((two_lambda, mass), fn))

    table = Table(list(COLUMNS))
    for _, row in run_tasks(tasks, config.threads):
        table.add(*_row(row))
    return table


def cmd_signature(config: RunConfig) -> int:
    logger.info(f"Computing {config.spacetime} signature matrices on "
                f"{len(config.lambda_list)} x {len(config.mass_grid)} modes")
    table = signature_table(config)
    write_table(table, config.output.format, config.output.path, "signature",
                {"spacetime": config.spacetime, "config": config.report_dict()})
    return 0
