"""Readers and writers for the line-oriented model, constraint and observation files."""

import re
from typing import Iterator

from markov_belief.constraints import Constraint, ConstraintSet, Relation, Variable
from markov_belief.domains import DomainKind, PlausValue, domain_for, str_to_domain
from markov_belief.errors import ModelValidationError, ParseError
from markov_belief.model import (
    Evidence,
    Prefix,
    Proposition,
    StateSpace,
    TransitionModel,
    validate_model,
)

STATE_ID = re.compile(r"[^\s>,#*]+")
RELATIONS = {r.value: r for r in Relation}


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        words = line.split("#", 1)[0].split()
        if words:
            yield number, words


class _Header:
    """Collects the ``states`` and ``init`` directives shared by model and constraint files."""

    def __init__(self):
        self.states: list[str] | None = None
        self.init: str | None = None
        self.space: StateSpace | None = None

    def accept(self, number: int, words: list[str]) -> bool:
        keyword, args = words[0], words[1:]
        if keyword == "states":
            if self.states is not None:
                raise ParseError("duplicate states directive", number)
            if not args:
                raise ParseError("states needs at least one identifier", number)
            for s in args:
                if not STATE_ID.fullmatch(s):
                    raise ParseError(f"invalid state identifier {s!r}", number)
            if len(set(args)) != len(args):
                raise ParseError("duplicate state identifiers", number)
            self.states = args
            return True
        if keyword == "init":
            if self.states is None:
                raise ParseError("init before states", number)
            if self.init is not None or len(args) > 1:
                raise ParseError(
                    "multiple initial states are not supported: every run starts in one shared initial state",
                    number,
                )
            if not args:
                raise ParseError("init needs a state", number)
            if args[0] not in self.states:
                raise ParseError(f"unknown state {args[0]!r}", number)
            self.init = args[0]
            return True
        return False

    def require_space(self, number: int | None = None) -> StateSpace:
        if self.states is None:
            raise ParseError("missing states", number)
        if self.init is None:
            raise ParseError("missing init", number)
        if self.space is None:
            self.space = StateSpace(self.states, self.init)
        return self.space

    def state(self, name: str, number: int) -> str:
        space = self.require_space(number)
        if name not in space:
            raise ParseError(f"unknown state {name!r}", number)
        return name


def parse_model(text: str, validate: bool = True) -> TransitionModel:
    """
    Parse a model file.

    Grammar, one directive per line, ``#`` starts a comment::

        domain kappa|possibility|kappa_product <K>
        states <id>+
        init <id>
        trans <from> <to> <value>

    Args:
        text: The file contents.
        validate: Reject models whose rows do not sum to top.

    Returns:
        The TransitionModel.

    Raises:
        ParseError: On a syntax error, with the line number.
        ModelValidationError: If validate is set and a row is not normalized.
    """
    header = _Header()
    kind: DomainKind | None = None
    table: dict[tuple[str, str], PlausValue] = {}
    for number, words in _lines(text):
        if header.accept(number, words):
            continue
        keyword, args = words[0], words[1:]
        if keyword == "domain":
            if kind is not None:
                raise ParseError("duplicate domain directive", number)
            try:
                kind = str_to_domain(" ".join(args))
            except ValueError as err:
                raise ParseError(str(err), number) from err
        elif keyword == "trans":
            if kind is None:
                raise ParseError("missing domain", number)
            if len(args) != 3:
                raise ParseError("trans takes <from> <to> <value>", number)
            pair = (header.state(args[0], number), header.state(args[1], number))
            if pair in table:
                raise ParseError(f"duplicate transition {args[0]} {args[1]}", number)
            try:
                table[pair] = domain_for(kind).parse(args[2])
            except ValueError as err:
                raise ParseError(str(err), number) from err
        else:
            raise ParseError(f"unknown directive {keyword!r}", number)
    if kind is None:
        raise ParseError("missing domain")
    model = TransitionModel(header.require_space(), kind, table)
    if validate:
        report = validate_model(model)
        if not report:
            raise ModelValidationError("; ".join(report.lines()), report)
    return model


def _variable(header: _Header, number: int, source: str, target: str) -> Variable:
    return header.state(source, number), header.state(target, number)


def parse_constraints(text: str) -> ConstraintSet:
    """
    Parse a constraint file.

    Grammar: ``states`` and ``init`` as in model files, plus::

        impossible <from> <to>
        order <f1> <t1> (<|<=|=) <f2> <t2>

    Args:
        text: The file contents.

    Returns:
        The ConstraintSet, with its closure computed.

    Raises:
        ParseError: On a syntax error or unknown state, with the line number.
        ConstraintCycleError: If a strict relation contradicts the closure.
    """
    header = _Header()
    relations: list[Constraint] = []
    impossible: list[Variable] = []
    for number, words in _lines(text):
        if header.accept(number, words):
            continue
        keyword, args = words[0], words[1:]
        if keyword == "impossible":
            if len(args) != 2:
                raise ParseError("impossible takes <from> <to>", number)
            impossible.append(_variable(header, number, *args))
        elif keyword == "order":
            if len(args) != 5 or args[2] not in RELATIONS:
                raise ParseError("order takes <f1> <t1> (<|<=|=) <f2> <t2>", number)
            relations.append(
                Constraint(
                    _variable(header, number, args[0], args[1]),
                    RELATIONS[args[2]],
                    _variable(header, number, args[3], args[4]),
                )
            )
        else:
            raise ParseError(f"unknown directive {keyword!r}", number)
    return ConstraintSet(header.require_space(), relations, impossible)


def parse_evidence(text: str, space: StateSpace) -> Evidence:
    """
    Parse an observation file: one ``obs <id>+`` or ``obs *`` line per time step, from time 1.

    Args:
        text: The file contents.
        space: The state space observations range over.

    Returns:
        The Evidence.

    Raises:
        ParseError: On a syntax error, an unknown state or an empty observation.
    """
    observations: list[Proposition] = []
    for number, words in _lines(text):
        if words[0] != "obs":
            raise ParseError(f"unknown directive {words[0]!r}", number)
        args = words[1:]
        if not args:
            raise ParseError("empty observation", number)
        if args == ["*"]:
            observations.append(space.full)
            continue
        for s in args:
            if s not in space:
                raise ParseError(f"unknown state {s!r}", number)
        observations.append(frozenset(args))
    return Evidence(tuple(observations))


def parse_proposition(text: str, space: StateSpace) -> Proposition:
    """
    Parse a comma-separated state set such as ``PF,PE``; the empty string is the empty set.

    Raises:
        UnknownStateError: If a state is not in the space.
    """
    names = [s.strip() for s in text.split(",") if s.strip()]
    return space.proposition(names)


def parse_prefix(text: str, space: StateSpace) -> Prefix:
    """
    Parse a prefix written as ``s0>s1>...>sn``.

    Raises:
        UnknownStateError: If a state is not in the space.
        InvalidPrefixError: If it does not start at the initial state.
    """
    p = tuple(s.strip() for s in text.split(">"))
    space.check_prefix(p)
    return p


def format_model(m: TransitionModel) -> str:
    """
    Render a model in the model file grammar, listing non-bottom transitions in row-major order.

    Args:
        m: The model.

    Returns:
        Text that parse_model reads back into an equal model.
    """
    lines = [
        f"domain {m.kind}",
        f"states {' '.join(m.space.states)}",
        f"init {m.space.init}",
    ]
    lines += [f"trans {s} {s2} {v}" for s, s2, v in m.entries()]
    return "\n".join(lines) + "\n"
