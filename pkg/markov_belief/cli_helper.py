"""Various helper functions for the command-line interface."""

import argparse
from typing import Dict, Sequence

from markov_belief.settings import Settings


def check_valid_overrides(overrides_str: str) -> Dict[str, str]:
    """
    Checks whether the string format of setting overrides is valid.

    Args:
        overrides_str: The string containing the overrides, e.g. ``atom_cap=8,strict_filter=false``.

    Returns:
        A dictionary containing the key-value pairs for the overrides.
    """
    result = {}
    for item in overrides_str.split(","):
        separated_items = item.split("=")
        if len(separated_items) != 2 or not separated_items[0]:
            raise argparse.ArgumentTypeError(f"not a valid override: {item!r}")
        result[separated_items[0]] = separated_items[1]
    return result


def check_time_index(value: str) -> int:
    """
    Checks whether a time index is a non-negative integer.

    Args:
        value: The command-line string.

    Returns:
        The time index.
    """
    if not value.isdigit():
        raise argparse.ArgumentTypeError(f"not a valid time index: {value!r}")
    return int(value)


def _add_query_options(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--at",
        type=check_time_index,
        required=True,
        help="The time index the proposition is evaluated at (0 is the initial state).",
        metavar="N",
    )
    parser.add_argument(
        "--prop",
        type=str,
        required=True,
        help="The proposition, as a comma-separated set of states, e.g. PF,PE.",
        metavar="STATES",
    )


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with every subcommand.

    Returns:
        The parser.
    """
    parser = argparse.ArgumentParser(
        prog="qmb",
        description="Qualitative Markovian belief change: filter observations through "
        "plausibility models and decide what is believed, also when only an order on "
        "transition plausibilities is known.",
    )
    parser.add_argument(
        "-c",
        "--config",
        type=str,
        default=None,
        help="The relative path to the configuration file to use. Defaults to ./config/default_qmb.yaml.",
        metavar="PATH",
    )
    parser.add_argument(
        "--overrides",
        type=check_valid_overrides,
        default=None,
        help="A way to override values found in the configuration file. "
        "Format: PARAM1=VALUE1,PARAM2=VALUE2...",
        metavar="VALUES",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Check that every row of a model sums to top.")
    validate.add_argument("model", help="Model file.")

    filter_cmd = commands.add_parser("filter", help="Filter observations through a model.")
    filter_cmd.add_argument("model", help="Model file.")
    filter_cmd.add_argument("obs", help="Observation file.")
    filter_cmd.add_argument("--trace", action="store_true", help="Print the vector of every time step.")
    filter_cmd.add_argument(
        "--lenient",
        action="store_true",
        help="Print the trace up to an inconsistent observation instead of only failing.",
    )
    filter_cmd.add_argument(
        "--normalize",
        action="store_true",
        help="Shift kappa ranks so the least finite one is 0, for display.",
    )

    believe = commands.add_parser("believe", help="Decide whether a proposition is believed.")
    believe.add_argument("model", help="Model file.")
    believe.add_argument("obs", help="Observation file.")
    _add_query_options(believe)
    believe.add_argument("--oracle", action="store_true", help="Decide by prefix enumeration only.")

    rank = commands.add_parser("rank", help="Conditional rank of a proposition in a kappa model.")
    rank.add_argument("model", help="Model file.")
    rank.add_argument("obs", help="Observation file.")
    _add_query_options(rank)

    qualitative = commands.add_parser(
        "qualitative", help="Check the prior a model induces on its n-prefixes."
    )
    qualitative.add_argument("model", help="Model file.")
    qualitative.add_argument("--n", type=check_time_index, required=True, help="The horizon.", metavar="N")
    qualitative.add_argument(
        "--obs",
        default=None,
        help="Observation file of horizon N; closure is checked for the beliefs given it.",
        metavar="PATH",
    )

    cons = commands.add_parser("cons", help="Reason with a constraint set.")
    cons_commands = cons.add_subparsers(dest="cons_command", required=True)
    safe = cons_commands.add_parser("safe", help="Check that the constraint set is satisfiable.")
    safe.add_argument("constraints", help="Constraint file.")
    compare = cons_commands.add_parser("compare", help="Compare two prefixes.")
    compare.add_argument("constraints", help="Constraint file.")
    compare.add_argument("--lhs", required=True, help="Left prefix, s0>s1>...", metavar="PREFIX")
    compare.add_argument("--rhs", required=True, help="Right prefix, s0>s1>...", metavar="PREFIX")
    cons_max = cons_commands.add_parser("max", help="List the maximal prefixes given the observations.")
    cons_max.add_argument("constraints", help="Constraint file.")
    cons_max.add_argument("obs", help="Observation file.")
    cons_max.add_argument("--n", type=check_time_index, required=True, help="The horizon.", metavar="N")
    cons_believe = cons_commands.add_parser("believe", help="What the constraints entail about a belief.")
    cons_believe.add_argument("constraints", help="Constraint file.")
    cons_believe.add_argument("obs", help="Observation file.")
    _add_query_options(cons_believe)
    sample = cons_commands.add_parser("sample", help="Print a kappa model consistent with the constraints.")
    sample.add_argument("constraints", help="Constraint file.")
    sample.add_argument("--seed", type=int, required=True, help="Seed of the sampler.", metavar="K")

    demo = commands.add_parser("demo", help="Run a packaged scenario.")
    demo.add_argument("scenario", choices=["stolen-car", "borrowed-car", "chain"])
    demo.add_argument("--constraints", action="store_true", help="Use constraint sets instead of ranks.")
    demo.add_argument("--oracle", action="store_true", help="Use the enumeration-only code paths.")

    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Args:
        argv: The arguments, defaults to sys.argv[1:].

    Returns:
        An argparse namespace object, containing the parsed arguments.
    """
    return build_parser().parse_args(argv)


def process_args(args: argparse.Namespace) -> Settings:
    """
    Load the settings the command line selects.

    Args:
        args: The command line arguments.

    Returns:
        The Settings, with overrides applied.
    """
    return Settings.load(args.config, args.overrides)
