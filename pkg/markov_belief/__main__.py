"""Entry point of the application, run with python -m markov_belief or qmb."""

import os
import sys
from typing import Sequence

from loguru import logger

from markov_belief.cli_helper import parse_args, process_args
from markov_belief.commands import EXIT_INCONSISTENT, EXIT_INVALID, run_command
from markov_belief.errors import InconsistentEvidenceError, QmbError

LOG_FORMAT = "<level>{level: <8}</level> | {name}:{function}:{line} - {message}\n{exception}"
ERROR_FORMAT = "error: {message}\n"
ERROR_LEVEL = logger.level("ERROR").no


def configure_logging(level: str):
    """
    Send diagnostics to stderr at the given level; QMB_COLOR=0|1 forces colour off or on.

    Args:
        level: The loguru level name.
    """
    colorize = {"0": False, "1": True}.get(os.environ.get("QMB_COLOR", ""))
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), colorize=colorize, format=_format_record)


def _format_record(record: dict) -> str:
    """Errors reach the user as plain ``error: <message>`` lines, everything else as diagnostics."""
    return ERROR_FORMAT if record["level"].no >= ERROR_LEVEL else LOG_FORMAT


def _fail(err: Exception, code: int) -> int:
    logger.error(str(err))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """
    Main entry point.

    Args:
        argv: Command line arguments, defaults to sys.argv[1:].

    Returns:
        The exit code: 0 on success, 2 on invalid input, 3 on inconsistent evidence.
    """
    args = parse_args(argv)
    configure_logging("WARNING")
    try:
        settings = process_args(args)
    except (OSError, ValueError) as err:
        return _fail(err, EXIT_INVALID)
    configure_logging(settings.log_level)

    try:
        output = run_command(args, settings)
    except InconsistentEvidenceError as err:
        return _fail(err, EXIT_INCONSISTENT)
    except (QmbError, ValueError, OSError) as err:
        return _fail(err, EXIT_INVALID)

    for line in output.lines:
        print(line)
    return output.exit_code


def run():  # pragma: no cover
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
