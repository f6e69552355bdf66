"""Exceptions raised by the markov_belief package."""

from typing import Any


class QmbError(Exception):
    """Base class of every error raised by this package."""

    pass


class DomainMismatchError(QmbError):
    """Signals that two plausibility values (or a model and an operation) live in different domains."""

    pass


class UnknownStateError(QmbError):
    """Signals a reference to a state identifier outside the state space."""

    pass


class InvalidPrefixError(QmbError):
    """Signals a prefix that does not start at the initial state."""

    pass


class LengthMismatchError(QmbError):
    """Signals that two prefixes which should be compared have different lengths."""

    pass


class CapExceededError(QmbError):
    """Signals that an exhaustive enumeration would exceed its configured cap."""

    pass


class ConstraintCycleError(QmbError):
    """Signals a constraint set whose strict relations contradict its closure."""

    pass


class InconsistentEvidenceError(QmbError):
    """Signals that every run consistent with the evidence has plausibility bottom."""

    def __init__(self, message: str, time: int | None = None):
        """
        Initialize the error.

        Args:
            message: Description of the failure.
            time: The time step at which the evidence became inconsistent, if known.
        """
        super().__init__(message)
        self.time = time


class UnsafeConstraintsError(QmbError):
    """Signals that a constraint set is unsafe and therefore unsatisfiable."""

    def __init__(self, message: str, witness: Any = None):
        """
        Initialize the error.

        Args:
            message: Description of the failure.
            witness: The SafetyWitness proving the set unsafe.
        """
        super().__init__(message)
        self.witness = witness


class KappaWitnessError(QmbError):
    """Signals that no ranking model could be built for a safe constraint set."""

    pass


class ModelValidationError(QmbError):
    """Signals a transition model whose rows are not normalized."""

    def __init__(self, message: str, report: Any = None):
        """
        Initialize the error.

        Args:
            message: Description of the failure.
            report: The ValidationReport describing every invalid row.
        """
        super().__init__(message)
        self.report = report


class ParseError(QmbError):
    """Signals a syntax or semantic error in a model, constraint or observation file."""

    def __init__(self, message: str, line: int | None = None):
        """
        Initialize the error.

        Args:
            message: Description of the failure.
            line: The 1-based line number of the offending line, if known.
        """
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
        self.reason = message
