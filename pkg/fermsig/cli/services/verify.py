"""
Property suite (`fermsig verify`).

Every check produces a CheckResult with a PASS/FAIL verdict and the measured
quantities behind it. Failed properties are reported, never raised; only
numerical breakdowns (IntegrationError, ArithmeticError) abort the run.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ...core.intervals import MassInterval, two_lambda_from
from ...core.profiles import MassProfile
from ...core.quadrature import QuadratureRule, gauss_legendre
from ...core.spinors import SpinorPair
from ...desitter.asymptotics import (
    MIN_ASYMPTOTIC_RTOL,
    UNITARITY_TOLERANCE,
    asymptotic_derivative_check,
    gronwall_check,
    scattering_matrices,
    time_reversal_defect,
)
from ...desitter.modes import REFERENCE_METHOD, DeSitterMode, evolve_mode
from ...desitter.trajectories import TrajectoryCache
from ...massosc.family import MassFamily
from ...massosc.integration import decay_report
from ...massosc.pairing import pairing_basis_matrix, strong_mop_bound_check, weak_mop_bound_check
from ...signature.assembly import closed_form_basis_matrix, signature_from_pair
from ...signature.checks import interval_independence_check, spatial_normalization_check
from ...signature.matrix import spectral_split
from ...ultrastatic.integration import (
    pairing_closed_form_ultrastatic,
    pairing_time_domain_ultrastatic,
    ultrastatic_decay_report,
)
from ...ultrastatic.model import evolution_matrix, ultrastatic_signature
from ..config import RunConfig
from ..output.writers import SCHEMA_VERSION, render_json, write_text
from .workers import run_tasks

logger = logging.getLogger(__name__)

STRUCTURE_TOLERANCE = 1e-12
NORM_SLACK = 1e-9
CONSERVATION_TOLERANCE = 1e-9
CONSERVATION_RTOL = 1e-12
TIME_REVERSAL_TOLERANCE = 1e-9
SPECTRUM_TOLERANCE = 1e-13
PROJECTOR_TOLERANCE = 1e-14
SYMMETRY_FLOOR = 1e-5


@dataclass(frozen=True)
class CheckResult:
    """Verdict of one property at one (lambda, m); mass is None for per-lambda checks."""
    name: str
    two_lambda: int
    mass: Optional[float]
    passed: bool
    measured: Dict[str, float] = field(default_factory=dict)

    @property
    def sort_key(self) -> Tuple:
        return self.two_lambda, -1.0 if self.mass is None else self.mass, self.name

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "two_lambda": self.two_lambda,
            "lambda": self.two_lambda / 2.0,
            "mass": self.mass,
            "status": "PASS" if self.passed else "FAIL",
            "measured": dict(self.measured),
        }


@dataclass
class VerifyContext:
    """Everything the checks share; read-only apart from the trajectory cache."""
    config: RunConfig
    profile: MassProfile
    interval: MassInterval
    quad: QuadratureRule
    refined: QuadratureRule
    cache: TrajectoryCache

    @classmethod
    def from_config(cls, config: RunConfig) -> "VerifyContext":
        interval = config.interval()
        return cls(
            config=config,
            profile=config.mass_profile(),
            interval=interval,
            quad=gauss_legendre(interval, config.quadrature.nodes),
            refined=gauss_legendre(interval, config.quadrature.refined_nodes),
            cache=TrajectoryCache(),
        )

    @property
    def rtol(self) -> float:
        return self.config.tolerances.rtol

    @property
    def eps(self) -> float:
        return self.config.tolerances.eps

    @property
    def t_max(self) -> float:
        return self.config.times.t_max


def _relative(difference: float, scale: float) -> float:
    return difference / scale if scale > 0 else difference


# de Sitter, per mode

def check_unitarity(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    pair = scattering_matrices(DeSitterMode(two_lambda, m), ctx.eps)
    defect = pair.unitarity_defect()
    return CheckResult("unitarity", two_lambda, m, defect < UNITARITY_TOLERANCE,
                       {"defect": defect, "tolerance": UNITARITY_TOLERANCE,
                        "margin": UNITARITY_TOLERANCE - defect})


def check_conservation(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    """Gram matrix of the evolved Cauchy basis stays the identity."""
    mode = DeSitterMode(two_lambda, m)
    basis = [SpinorPair.basis(j) for j in (0, 1)]
    drift = 0.0
    for t in ctx.config.verify.conservation_times:
        u = np.column_stack([
            evolve_mode(e, mode, 0.0, float(t), CONSERVATION_RTOL, REFERENCE_METHOD).as_array() for e in basis
        ])
        drift = max(drift, float(np.linalg.norm(u.conj().T @ u - np.eye(2), 2)))
    return CheckResult("conservation", two_lambda, m, drift < CONSERVATION_TOLERANCE,
                       {"drift": drift, "tolerance": CONSERVATION_TOLERANCE,
                        "margin": CONSERVATION_TOLERANCE - drift})


def check_gronwall(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    mode = DeSitterMode(two_lambda, m)
    times = [s * float(t) for t in ctx.config.verify.gronwall_times for s in (1, -1)]
    reports = [gronwall_check(SpinorPair.basis(j), mode, times) for j in (0, 1)]
    violations = sum(r.violations for r in reports)
    return CheckResult("gronwall", two_lambda, m, violations == 0,
                       {"violations": violations,
                        "samples": sum(len(r.samples) for r in reports),
                        "worst_ratio": max(r.worst_ratio for r in reports)})


def check_structure(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    """Hermitian, trace-free, norm at most 1, eigenvalues +-nu."""
    pair = scattering_matrices(DeSitterMode(two_lambda, m), ctx.eps, MIN_ASYMPTOTIC_RTOL, REFERENCE_METHOD)
    s = signature_from_pair(pair)
    low, high = s.eigenvalues
    measured = {
        "hermiticity_defect": s.hermiticity_defect,
        "trace": abs(s.trace),
        "norm": s.operator_norm,
        "pair_defect": abs(low + high),
        "nu": s.nu,
    }
    passed = (measured["hermiticity_defect"] < STRUCTURE_TOLERANCE
              and measured["trace"] < STRUCTURE_TOLERANCE
              and measured["norm"] <= 1.0 + NORM_SLACK
              and measured["pair_defect"] < STRUCTURE_TOLERANCE)
    return CheckResult("structure", two_lambda, m, passed, measured)


def check_time_reversal(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    defect = time_reversal_defect(DeSitterMode(two_lambda, m), ctx.eps, MIN_ASYMPTOTIC_RTOL)
    return CheckResult("time_reversal", two_lambda, m, defect < TIME_REVERSAL_TOLERANCE,
                       {"defect": defect, "tolerance": TIME_REVERSAL_TOLERANCE,
                        "margin": TIME_REVERSAL_TOLERANCE - defect})


def check_smoothness(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    """Central differences of f^+- in m converge at second order."""
    report = asymptotic_derivative_check(DeSitterMode(two_lambda, m), eps=ctx.eps)
    return CheckResult("smoothness", two_lambda, m, report.passed,
                       {"worst_order": report.worst_order, "levels": len(report.orders),
                        "finest_difference": report.differences[-1],
                        "derivative_norm": report.derivative_norm})


# de Sitter, per eigenvalue

def check_decay(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    family = MassFamily(ctx.profile, SpinorPair.basis(0), two_lambda)
    times = ctx.config.verify.decay_times
    coarse = decay_report(family, times, ctx.quad, ctx.rtol, ctx.cache)
    fine = decay_report(family, times, ctx.refined, ctx.rtol, ctx.cache)
    return _decay_result(ctx, two_lambda, coarse.constant, fine.constant)


def _decay_result(ctx: VerifyContext, two_lambda: int, coarse: float, fine: float) -> CheckResult:
    change = _relative(abs(fine - coarse), abs(fine))
    tolerance = ctx.config.verify.decay_tolerance
    passed = math.isfinite(coarse) and math.isfinite(fine) and change < tolerance
    return CheckResult("decay", two_lambda, None, passed,
                       {"constant": fine, "constant_coarse": coarse, "relative_change": change,
                        "tolerance": tolerance, "margin": tolerance - change})


def check_oracle(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    """Time-domain pairing matrix against the closed form from the signature matrices."""
    time_domain = pairing_basis_matrix(ctx.profile, ctx.profile, two_lambda, ctx.t_max, ctx.quad,
                                       ctx.rtol, ctx.cache)
    closed = closed_form_basis_matrix(ctx.profile, ctx.profile, two_lambda, ctx.quad, ctx.eps)
    scale = float(np.max(np.abs(closed)))
    relative = _relative(float(np.max(np.abs(time_domain.values - closed))), scale)
    tolerance = ctx.config.verify.oracle_tolerance
    return CheckResult("oracle", two_lambda, None, relative <= tolerance,
                       {"relative_difference": relative,
                        "error_estimate": _relative(time_domain.error, scale),
                        "tolerance": tolerance, "margin": tolerance - relative})


def check_t_symmetry(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    """<p T psi | p phi> = <p psi | p T phi> for all basis data."""
    weighted = ctx.profile.times_mass()
    left = pairing_basis_matrix(weighted, ctx.profile, two_lambda, ctx.t_max, ctx.quad, ctx.rtol, ctx.cache)
    right = pairing_basis_matrix(ctx.profile, weighted, two_lambda, ctx.t_max, ctx.quad, ctx.rtol, ctx.cache)
    return _symmetry_result(two_lambda, left.values, right.values, left.error + right.error)


def _symmetry_result(two_lambda: int, left: np.ndarray, right: np.ndarray, error: float) -> CheckResult:
    difference = float(np.max(np.abs(left - right)))
    tolerance = error + SYMMETRY_FLOOR * float(np.max(np.abs(left)))
    return CheckResult("t_symmetry", two_lambda, None, difference <= tolerance,
                       {"difference": difference, "tolerance": tolerance, "margin": tolerance - difference})


def _mop_families(ctx: VerifyContext, two_lambda: int) -> Tuple[MassFamily, MassFamily]:
    a = MassFamily(ctx.profile, SpinorPair.basis(0), two_lambda)
    b = MassFamily(ctx.profile, SpinorPair(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)), two_lambda)
    return a, b


def check_strong_mop(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    a, b = _mop_families(ctx, two_lambda)
    report = strong_mop_bound_check(a, b, ctx.quad, ctx.t_max, ctx.rtol, ctx.cache)
    return CheckResult("strong_mop", two_lambda, None, report.passed,
                       {"lhs": report.lhs, "rhs": report.rhs, "error": report.error, "margin": report.margin})


def check_weak_mop(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    a, b = _mop_families(ctx, two_lambda)
    report = weak_mop_bound_check(a, b, ctx.quad, ctx.t_max, ctx.rtol, ctx.cache)
    return CheckResult("weak_mop", two_lambda, None, report.passed,
                       {"lhs": report.lhs, "rhs": report.rhs, "error": report.error, "margin": report.margin})


def check_spatial_normalization(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    verify = ctx.config.verify
    report = spatial_normalization_check(two_lambda / 2.0, verify.check_mass, verify.t_check, ctx.eps,
                                         ctx.rtol, ctx.config.tolerances.zero_tol)
    return CheckResult("spatial_normalization", two_lambda, float(verify.check_mass), report.passed,
                       {"idempotence_defect": report.idempotence_defect,
                        "roundtrip_defect": report.roundtrip_defect,
                        "symmetry_defect": report.symmetry_defect,
                        "inconclusive": report.inconclusive})


def check_interval_independence(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    verify = ctx.config.verify
    lower, upper = verify.sub_interval
    report = interval_independence_check(two_lambda / 2.0, verify.check_mass, ctx.interval,
                                         MassInterval(float(lower), float(upper)), verify.widths,
                                         rtol=ctx.rtol, eps=ctx.eps, cache=ctx.cache)
    return CheckResult("interval_independence", two_lambda, float(verify.check_mass), report.passed,
                       {"difference": report.final_difference,
                        "distance": report.estimates[-1].distance_full,
                        "continuity": report.continuity,
                        "tolerance": report.tolerance,
                        "margin": report.tolerance - report.final_difference})


# ultrastatic

def check_ultrastatic_spectrum(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    """Pi_+ - Pi_- has spectrum {+1, -1}; its projectors are exact."""
    s = ultrastatic_signature(two_lambda / 2.0, m)
    split = spectral_split(s, ctx.config.tolerances.zero_tol)
    low, high = s.eigenvalues
    spectrum = max(abs(low + 1.0), abs(high - 1.0))
    projector = max(split.idempotence_defect(), split.orthogonality_defect(), split.completeness_defect())
    passed = spectrum < SPECTRUM_TOLERANCE and projector < PROJECTOR_TOLERANCE
    return CheckResult("spectrum", two_lambda, m, passed,
                       {"spectrum_defect": spectrum, "projector_defect": projector, "nu": s.nu})


def check_ultrastatic_unitarity(ctx: VerifyContext, two_lambda: int, m: float) -> CheckResult:
    """U(t) is unitary and U(t1) U(t2) = U(t1 + t2)."""
    lam = two_lambda / 2.0
    t1 = float(ctx.config.verify.t_check)
    t2 = float(ctx.config.times.t_stop)
    u = evolution_matrix(lam, m, t1)
    unitarity = float(np.linalg.norm(u.conj().T @ u - np.eye(2), 2))
    group = float(np.linalg.norm(u @ evolution_matrix(lam, m, t2) - evolution_matrix(lam, m, t1 + t2), 2))
    defect = max(unitarity, group)
    return CheckResult("unitarity", two_lambda, m, defect < CONSERVATION_TOLERANCE,
                       {"unitarity_defect": unitarity, "group_law_defect": group,
                        "tolerance": CONSERVATION_TOLERANCE, "margin": CONSERVATION_TOLERANCE - defect})


def check_ultrastatic_decay(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    times = ctx.config.verify.decay_times
    datum = SpinorPair.basis(0)
    coarse = ultrastatic_decay_report(ctx.profile, datum, two_lambda / 2.0, times, ctx.quad)
    fine = ultrastatic_decay_report(ctx.profile, datum, two_lambda / 2.0, times, ctx.refined)
    return _decay_result(ctx, two_lambda, coarse.constant, fine.constant)


def _ultrastatic_pairings(ctx: VerifyContext, two_lambda: int, profile_a: MassProfile,
                          profile_b: MassProfile) -> Tuple[np.ndarray, float]:
    lam = two_lambda / 2.0
    basis = [SpinorPair.basis(j) for j in (0, 1)]
    values = np.zeros((2, 2), dtype=complex)
    error = 0.0
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            result = pairing_time_domain_ultrastatic(profile_a, a, profile_b, b, lam, ctx.t_max, ctx.quad)
            values[i, j] = result.value
            error += result.error
    return values, error


def check_plancherel(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    """Time-domain ultrastatic pairing against 2*pi times the integral of <u, (Pi_+ - Pi_-) u~>."""
    values, error = _ultrastatic_pairings(ctx, two_lambda, ctx.profile, ctx.profile)
    basis = [SpinorPair.basis(j) for j in (0, 1)]
    closed = np.array([
        [pairing_closed_form_ultrastatic(ctx.profile, a, ctx.profile, b, two_lambda / 2.0, ctx.quad)
         for b in basis]
        for a in basis
    ])
    scale = float(np.max(np.abs(closed)))
    relative = _relative(float(np.max(np.abs(values - closed))), scale)
    tolerance = ctx.config.verify.oracle_tolerance
    return CheckResult("plancherel", two_lambda, None, relative <= tolerance,
                       {"relative_difference": relative, "error_estimate": _relative(error, scale),
                        "tolerance": tolerance, "margin": tolerance - relative})


def check_ultrastatic_t_symmetry(ctx: VerifyContext, two_lambda: int) -> CheckResult:
    weighted = ctx.profile.times_mass()
    left, error_left = _ultrastatic_pairings(ctx, two_lambda, weighted, ctx.profile)
    right, error_right = _ultrastatic_pairings(ctx, two_lambda, ctx.profile, weighted)
    return _symmetry_result(two_lambda, left, right, error_left + error_right)


ModeCheck = Callable[[VerifyContext, int, float], CheckResult]
LambdaCheck = Callable[[VerifyContext, int], CheckResult]

DESITTER_MODE_CHECKS: Tuple[ModeCheck, ...] = (
    check_unitarity, check_conservation, check_gronwall, check_structure, check_time_reversal,
    check_smoothness,
)
DESITTER_LAMBDA_CHECKS: Tuple[LambdaCheck, ...] = (
    check_decay, check_oracle, check_t_symmetry, check_strong_mop, check_weak_mop, check_spatial_normalization,
)
ULTRASTATIC_MODE_CHECKS: Tuple[ModeCheck, ...] = (check_ultrastatic_spectrum, check_ultrastatic_unitarity)
ULTRASTATIC_LAMBDA_CHECKS: Tuple[LambdaCheck, ...] = (
    check_ultrastatic_decay, check_plancherel, check_ultrastatic_t_symmetry,
)


def run_checks(config: RunConfig) -> List[CheckResult]:
    """Run the suite for the configured space-time; results sorted by lambda, then m, then name."""
    ctx = VerifyContext.from_config(config)
    if config.spacetime == "desitter":
        mode_checks, lambda_checks = DESITTER_MODE_CHECKS, DESITTER_LAMBDA_CHECKS
    else:
        mode_checks, lambda_checks = ULTRASTATIC_MODE_CHECKS, ULTRASTATIC_LAMBDA_CHECKS

    tasks = []
    two_lambdas = sorted({two_lambda_from(lam) for lam in config.lambda_list})
    for two_lambda in two_lambdas:
        for check in lambda_checks:
            tasks.append(((two_lambda, -1.0, check.__name__), lambda c=check, tl=two_lambda: c(ctx, tl)))
        for mass in sorted({float(m) for m in config.mass_grid}):
            for check in mode_checks:
                tasks.append(((two_lambda, mass, check.__name__),
                              lambda c=check, tl=two_lambda, m=mass: c(ctx, tl, m)))
    if config.spacetime == "desitter":
        for two_lambda in sorted({two_lambda_from(lam) for lam in config.verify.independence_lambdas}):
            tasks.append(((two_lambda, -1.0, "interval_independence"),
                          lambda tl=two_lambda: check_interval_independence(ctx, tl)))

    results = [result for _, result in run_tasks(tasks, config.threads)]
    results.sort(key=lambda r: r.sort_key)
    for result in results:
        where = f"2*lambda={result.two_lambda}" + ("" if result.mass is None else f", m={result.mass}")
        level = logging.INFO if result.passed else logging.WARNING
        logger.log(level, f"{result.name} ({where}): {'PASS' if result.passed else 'FAIL'}")
    return results


def verify_report(config: RunConfig, results: List[CheckResult]) -> dict:
    failed = [r for r in results if not r.passed]
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "spacetime": config.spacetime,
        "config": config.report_dict(),
        "checks": [r.to_dict() for r in results],
        "summary": {
            "total": len(results),
            "failed": len(failed),
            "status": "PASS" if not failed else "FAIL",
        },
    }


def cmd_verify(config: RunConfig) -> int:
    logger.info(f"Running the {config.spacetime} property suite")
    results = run_checks(config)
    report = verify_report(config, results)
    write_text(render_json(report), config.output.path)
    failed = report["summary"]["failed"]
    if failed:
        logger.warning(f"{failed} of {len(results)} checks failed")
        return 1
    logger.info(f"All {len(results)} checks passed")
    return 0
