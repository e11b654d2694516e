import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from fermsig.cli.config import FORMATS, ConfigError, RunConfig
from fermsig.cli.services import cmd_evolve, cmd_signature, cmd_sweep, cmd_verify
from fermsig.desitter.modes import IntegrationError
from fermsig.logging_config import setup_logging

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "evolve": cmd_evolve,
    "signature": cmd_signature,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}

HELP = {
    "evolve": "Mode trajectories u(t) at the sample times",
    "signature": "Signature matrices, nu(m) and spectral projectors",
    "verify": "Run the property suite and write a JSON report",
    "sweep": "Scattering diagnostics and decay constants",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermsig", description="Fermionic signature operators on mode grids")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in HELP.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", help="JSON config file (default: packaged default config)")
        sub.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                         help="Override a config value, e.g. tolerances.rtol=1e-8 (repeatable)")
        sub.add_argument("--out", help="Output path (default: stdout)")
        sub.add_argument("--format", choices=FORMATS, help="Output format for tables")
        sub.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default: FERMSIG_LOG_LEVEL or INFO)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    # Setup logging
    try:
        setup_logging(args.log_level)
    except ValueError as e:
        print(f"fermsig: {e}", file=sys.stderr)
        return EXIT_CONFIG
    logger = logging.getLogger("fermsig")

    # Load configuration
    try:
        config = RunConfig.load(args.config, args.overrides)
    except ConfigError as e:
        logger.error(f"Failed to load configuration: {e}")
        return EXIT_CONFIG
    if args.out:
        config.output.path = args.out
    if args.format:
        config.output.format = args.format

    errors = config.validate()
    if errors:
        for error in errors:
            logger.error(f"Invalid configuration: {error}")
        return EXIT_CONFIG

    try:
        return COMMANDS[args.command](config)
    except (IntegrationError, ArithmeticError) as e:
        logger.error(f"Numerical failure in {args.command}: {e}")
        return EXIT_NUMERIC
    except ValueError as e:
        logger.error(f"Invalid input for {args.command}: {e}")
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
