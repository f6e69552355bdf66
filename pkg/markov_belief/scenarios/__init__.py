"""Packaged scenario files: the parked-car story as models, constraint sets and observation sequences."""

from importlib import resources

from markov_belief.constraints import ConstraintSet
from markov_belief.model import Evidence, StateSpace, TransitionModel
from markov_belief.parsing import parse_constraints, parse_evidence, parse_model


def load_text(filename: str) -> str:
    """
    Read a packaged scenario file.

    Args:
        filename: File name inside the scenarios package, e.g. ``car.qmb``.

    Returns:
        The file contents.

    Raises:
        FileNotFoundError: If no such scenario file is packaged.
    """
    return resources.files(__name__).joinpath(filename).read_text(encoding="utf-8")


def load_model(name: str) -> TransitionModel:
    """Parse the packaged model ``<name>.qmb``."""
    return parse_model(load_text(f"{name}.qmb"))


def load_constraints(name: str) -> ConstraintSet:
    """Parse the packaged constraint set ``<name>.qmc``."""
    return parse_constraints(load_text(f"{name}.qmc"))


def load_evidence(name: str, space: StateSpace) -> Evidence:
    """Parse the packaged observation sequence ``<name>.obs``."""
    return parse_evidence(load_text(f"{name}.obs"), space)
