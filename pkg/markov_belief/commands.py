"""Implementation of every qmb subcommand; each returns the lines it prints on stdout."""

import argparse
from dataclasses import dataclass, field
from typing import Hashable

from loguru import logger

from markov_belief.constraints import (
    check_safe,
    compare_prefixes,
    entailed_belief,
    max_prefixes,
    sample_consistent_kappa,
)
from markov_belief.demos import run_demo
from markov_belief.domains.kappa import format_rank
from markov_belief.filtering import filter_believes, format_trace, run_filter
from markov_belief.helper import read_text
from markov_belief.model import (
    Evidence,
    StateSpace,
    TransitionModel,
    believes,
    format_prefix,
    validate_model,
)
from markov_belief.oracle import conditional_kappa, oracle_believes
from markov_belief.parsing import (
    format_model,
    parse_constraints,
    parse_evidence,
    parse_model,
    parse_prefix,
    parse_proposition,
)
from markov_belief.prior import (
    CheckResult,
    check_closure_under_conjunction,
    check_qualitative,
    model_to_prior,
)
from markov_belief.settings import Settings

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


@dataclass
class CommandOutput:
    """Lines for stdout and the exit code of a command."""

    lines: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK


def _load(args: argparse.Namespace) -> tuple[TransitionModel, Evidence]:
    m = parse_model(read_text(args.model))
    return m, parse_evidence(read_text(args.obs), m.space)


def validate(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print ``OK`` or one diagnostic per unnormalized row."""
    report = validate_model(parse_model(read_text(args.model), validate=False))
    return CommandOutput(report.lines(), EXIT_OK if report else EXIT_INVALID)


def filter_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print the final filter vector, or the whole trace."""
    m, e = _load(args)
    strict = settings.strict_filter and not args.lenient
    trace = run_filter(m, e, strict)
    lines = format_trace(trace, args.normalize)
    if not trace[-1].consistent:
        logger.error(f"inconsistent evidence at time {trace[-1].time}")
        return CommandOutput(lines, EXIT_INCONSISTENT)
    return CommandOutput(lines if args.trace else lines[-1:])


def believe(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print ``BELIEVED`` or ``NOT-BELIEVED``."""
    m, e = _load(args)
    a = parse_proposition(args.prop, m.space)
    cap = settings.enumeration_cap
    if args.oracle:
        verdict = oracle_believes(m, e, a, args.at, cap)
    elif args.at == e.horizon:
        verdict = filter_believes(run_filter(m, e)[-1], a)
    else:
        verdict = believes(m, e, a, args.at, cap)
    logger.info(f"{sorted(a)} at time {args.at}: believed={verdict}")
    return CommandOutput(["BELIEVED" if verdict else "NOT-BELIEVED"])


def rank(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print the conditional rank of a proposition."""
    m, e = _load(args)
    a = parse_proposition(args.prop, m.space)
    return CommandOutput(
        [format_rank(conditional_kappa(m, e, a, args.at, settings.enumeration_cap))]
    )


def cons(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Dispatch the constraint subcommands."""
    c = parse_constraints(read_text(args.constraints))
    cap = settings.enumeration_cap
    match args.cons_command:
        case "safe":
            return CommandOutput([str(check_safe(c))])
        case "compare":
            lhs = parse_prefix(args.lhs, c.space)
            rhs = parse_prefix(args.rhs, c.space)
            return CommandOutput([compare_prefixes(c, lhs, rhs).value])
        case "max":
            e = parse_evidence(read_text(args.obs), c.space)
            return CommandOutput(
                [format_prefix(p) for p in max_prefixes(c, args.n, e, cap)]
            )
        case "believe":
            e = parse_evidence(read_text(args.obs), c.space)
            a = parse_proposition(args.prop, c.space)
            return CommandOutput([entailed_belief(c, e, a, args.at, cap).value])
        case "sample":
            m = sample_consistent_kappa(c, args.seed, settings.max_sample_gap)
            return CommandOutput(format_model(m).splitlines())
    raise ValueError(f"unknown constraint command: {args.cons_command!r}")


def _format_event(space: StateSpace, event) -> str:
    return "{" + ",".join(format_prefix(p) for p in sorted(event, key=space.sort_key)) + "}"


def _verdict(space: StateSpace, result: CheckResult, names: str) -> str:
    if result:
        return "yes"
    pairs = zip(names, result.witness or ())
    return "no " + " ".join(f"{name}={_format_event(space, ev)}" for name, ev in pairs)


def qualitative(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """
    Check the prior a model induces on its n-prefixes.

    Prints whether the prior is qualitative and whether the beliefs given the
    observations (all prefixes without ``--obs``) are closed under conjunction.
    """
    m = parse_model(read_text(args.model))
    prior = model_to_prior(m, args.n, settings.enumeration_cap)
    evidence: list[Hashable] | None = None
    if args.obs is not None:
        e = parse_evidence(read_text(args.obs), m.space)
        if e.horizon != args.n:
            raise ValueError(f"evidence has horizon {e.horizon}, expected {args.n}")
        evidence = [p for p in prior.atoms if e.admits(p)]
    qualitative_result = check_qualitative(prior, settings.atom_cap)
    closure = check_closure_under_conjunction(prior, evidence, settings.atom_cap)
    return CommandOutput(
        [
            f"qualitative: {_verdict(m.space, qualitative_result, 'ABC')}",
            f"closed under conjunction: {_verdict(m.space, closure, 'AB')}",
        ]
    )


def demo(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Run a packaged scenario."""
    return CommandOutput(run_demo(args.scenario, settings, args.constraints, args.oracle))


COMMANDS = {
    "validate": validate,
    "filter": filter_command,
    "believe": believe,
    "rank": rank,
    "qualitative": qualitative,
    "cons": cons,
    "demo": demo,
}


def run_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """
    Run the subcommand selected on the command line.

    Args:
        args: The parsed arguments.
        settings: The loaded settings.

    Returns:
        The CommandOutput.
    """
    logger.info(f"Running {args.command}")
    return COMMANDS[args.command](args, settings)

