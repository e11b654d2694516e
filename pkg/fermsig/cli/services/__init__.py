"""Command implementations for the fermsig CLI."""

from .evolve import cmd_evolve, evolve_table
from .signature import cmd_signature, signature_table
from .sweep import cmd_sweep, sweep_table
from .verify import CheckResult, cmd_verify, run_checks, verify_report
from .workers import run_tasks

__all__ = [
    "cmd_evolve",
    "evolve_table",
    "cmd_signature",
    "signature_table",
    "cmd_sweep",
    "sweep_table",
    "CheckResult",
    "cmd_verify",
    "run_checks",
    "verify_report",
    "run_tasks",
]
