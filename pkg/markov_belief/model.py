"""State spaces, transition models, prefixes, evidence and belief queries by joint-plausibility comparison."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

from loguru import logger

from markov_belief.domains import (
    AlgebraicDomain,
    CompareResult,
    DomainKind,
    PlausValue,
    domain_for,
)
from markov_belief.errors import (
    CapExceededError,
    InconsistentEvidenceError,
    InvalidPrefixError,
    UnknownStateError,
)

DEFAULT_ENUMERATION_CAP = 10_000_000

Proposition = frozenset[str]
Prefix = tuple[str, ...]


class StateSpace:
    """An ordered set of state identifiers with a distinguished initial state."""

    def __init__(self, states: Iterable[str], init: str):
        """
        Initialize the state space.

        Args:
            states: Distinct, nonempty identifiers without whitespace, in declaration order.
            init: The initial state every run starts in.

        Raises:
            ValueError: If identifiers are empty, duplicated or contain whitespace.
            UnknownStateError: If init is not one of the states.
        """
        self.states: tuple[str, ...] = tuple(states)
        if not self.states:
            raise ValueError("a state space needs at least one state")
        for s in self.states:
            if not s or any(c.isspace() for c in s):
                raise ValueError(f"invalid state identifier: {s!r}")
        if len(set(self.states)) != len(self.states):
            raise ValueError(f"duplicate state identifiers in {list(self.states)}")
        if init not in self.states:
            raise UnknownStateError(f"initial state {init!r} is not a declared state")
        if len(self.states) == 1:
            logger.warning(
                f"State space has a single state {init!r}, every query is degenerate"
            )
        self.init = init
        self._index = {s: i for i, s in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, state: object) -> bool:
        return state in self._index

    def __iter__(self):
        return iter(self.states)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateSpace):
            return NotImplemented
        return self.states == other.states and self.init == other.init

    def __hash__(self) -> int:
        return hash((self.states, self.init))

    def __repr__(self) -> str:
        return f"StateSpace(states={list(self.states)}, init={self.init!r})"

    def index(self, state: str) -> int:
        """
        Position of a state in declaration order.

        Raises:
            UnknownStateError: If the state is not in the space.
        """
        try:
            return self._index[state]
        except KeyError as err:
            raise UnknownStateError(f"unknown state: {state!r}") from err

    def proposition(self, states: Iterable[str]) -> Proposition:
        """
        Build a proposition, checking that every member belongs to the space.

        Raises:
            UnknownStateError: If a member is not in the space.
        """
        result = frozenset(states)
        for s in result:
            self.index(s)
        return result

    def complement(self, a: Proposition) -> Proposition:
        """The states not in a."""
        return frozenset(s for s in self.states if s not in a)

    @property
    def full(self) -> Proposition:
        """The proposition containing every state."""
        return frozenset(self.states)

    def check_prefix(self, p: Prefix):
        """
        Validate a prefix against the space.

        Raises:
            InvalidPrefixError: If the prefix is empty or does not start at init.
            UnknownStateError: If it mentions an unknown state.
        """
        if not p:
            raise InvalidPrefixError("a prefix holds at least the initial state")
        for s in p:
            self.index(s)
        if p[0] != self.init:
            raise InvalidPrefixError(
                f"prefix {format_prefix(p)} does not start at the initial state {self.init}"
            )

    def sort_key(self, p: Prefix) -> tuple[int, ...]:
        """Key sorting prefixes lexicographically by state declaration order."""
        return tuple(self._index[s] for s in p)


def format_prefix(p: Prefix) -> str:
    """Render a prefix as ``s0>s1>...>sn``."""
    return ">".join(p)


@dataclass(frozen=True)
class Evidence:
    """Observations O1..On, one per time step starting at time 1."""

    observations: tuple[Proposition, ...] = ()

    def __post_init__(self):
        """
        Validate the observations.

        Raises:
            ValueError: If an observation is empty.
        """
        object.__setattr__(
            self, "observations", tuple(frozenset(o) for o in self.observations)
        )
        for t, o in enumerate(self.observations, start=1):
            if not o:
                raise ValueError(f"empty observation at time {t}")

    @property
    def horizon(self) -> int:
        """Number of observed time steps."""
        return len(self.observations)

    def allows(self, time: int, state: str) -> bool:
        """Whether the observation at a time (1-based) admits a state; time 0 admits anything."""
        return time == 0 or state in self.observations[time - 1]

    def admits(self, p: Prefix) -> bool:
        """Whether a prefix of length horizon+1 is consistent with every observation."""
        return all(s in o for s, o in zip(p[1:], self.observations))

    @classmethod
    def vacuous(cls, space: StateSpace, n: int) -> Evidence:
        """Evidence of horizon n that observes nothing."""
        return cls(tuple(space.full for _ in range(n)))


class TransitionModel:
    """
    A state space and a transition-plausibility table over one algebraic domain.

    Pairs missing from the table have plausibility bottom.
    """

    def __init__(
        self,
        space: StateSpace,
        kind: DomainKind,
        table: Mapping[tuple[str, str], PlausValue] | None = None,
    ):
        """
        Initialize the model.

        Args:
            space: The state space.
            kind: The domain all transition values belong to.
            table: Explicit transition values keyed by (from, to).

        Raises:
            UnknownStateError: If the table mentions an unknown state.
            DomainMismatchError: If a value belongs to another kind.
        """
        self.space = space
        self.kind = kind
        self.domain: AlgebraicDomain = domain_for(kind)
        self._table: dict[tuple[str, str], PlausValue] = {}
        for (s, s2), value in (table or {}).items():
            space.index(s)
            space.index(s2)
            self.domain.check(value)
            self._table[(s, s2)] = value

    def t(self, s: str, s2: str) -> PlausValue:
        """Plausibility of moving from s to s2 in one step."""
        return self._table.get((s, s2), self.domain.bottom)

    def row(self, s: str) -> dict[str, PlausValue]:
        """All outgoing transition values of s, in declaration order."""
        return {s2: self.t(s, s2) for s2 in self.space}

    def entries(self) -> list[tuple[str, str, PlausValue]]:
        """Non-bottom transitions in row-major declaration order."""
        return [
            (s, s2, self.t(s, s2))
            for s in self.space
            for s2 in self.space
            if not self.domain.is_bottom(self.t(s, s2))
        ]

    def successors(self, s: str) -> list[str]:
        """States reachable from s by one non-bottom transition."""
        return [s2 for s2 in self.space if not self.domain.is_bottom(self.t(s, s2))]

    def __repr__(self) -> str:
        return f"TransitionModel(kind={self.kind}, space={self.space!r})"


@dataclass
class ValidationReport:
    """Outcome of validate_model."""

    row_sums: dict[str, PlausValue] = field(default_factory=dict)
    invalid_rows: list[str] = field(default_factory=list)
    unreachable: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.invalid_rows

    def lines(self) -> list[str]:
        """Diagnostic lines, ``OK`` when the model is valid."""
        if not self.invalid_rows:
            return ["OK"]
        return [
            f"row {s}: sums to {self.row_sums[s]}, expected top"
            for s in self.invalid_rows
        ]


def validate_model(m: TransitionModel) -> ValidationReport:
    """
    Check that every row of a model plus-sums to top, and find unreachable states.

    Args:
        m: The model.

    Returns:
        A ValidationReport; it is truthy iff every row is normalized.
    """
    report = ValidationReport()
    for s in m.space:
        total = m.domain.sum(m.row(s).values())
        report.row_sums[s] = total
        if not m.domain.is_top(total):
            report.invalid_rows.append(s)

    seen = {m.space.init}
    queue = deque([m.space.init])
    while queue:
        for s2 in m.successors(queue.popleft()):
            if s2 not in seen:
                seen.add(s2)
                queue.append(s2)
    report.unreachable = [s for s in m.space if s not in seen]
    for s in report.unreachable:
        logger.warning(f"State {s} is unreachable from {m.space.init}")
    return report


def prefix_plausibility(m: TransitionModel, p: Prefix) -> PlausValue:
    """
    Plausibility of an n-prefix: the times-product of its transitions.

    Args:
        m: The model.
        p: The prefix, starting at the initial state.

    Returns:
        The prefix plausibility; top for the prefix holding only the initial state.

    Raises:
        UnknownStateError: If p mentions an unknown state.
        InvalidPrefixError: If p does not start at the initial state.
    """
    m.space.check_prefix(p)
    return m.domain.product(m.t(a, b) for a, b in zip(p, p[1:]))


def _check_query(n: int, e: Evidence, at: int):
    if n < 0:
        raise ValueError(f"horizon must be non-negative, got {n}")
    if e.horizon != n:
        raise ValueError(f"evidence has horizon {e.horizon}, expected {n}")
    if not 0 <= at <= n:
        raise ValueError(f"time {at} is outside 0..{n}")


def check_enumeration_cap(space: StateSpace, n: int, cap: int):
    """
    Refuse enumerations over more than cap prefixes.

    Raises:
        CapExceededError: If |S|^n exceeds cap.
    """
    if len(space) ** n > cap:
        raise CapExceededError(
            f"{len(space)}^{n} prefixes exceed the enumeration cap of {cap}"
        )


def event_plausibility(
    m: TransitionModel,
    n: int,
    e: Evidence,
    a: Proposition | None = None,
    at: int | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> PlausValue:
    """
    Plausibility of the event "E holds and the run is in a at time at", by brute force over all n-prefixes.

    Args:
        m: The model.
        n: The horizon.
        e: Evidence of horizon n.
        a: A proposition, or None for no restriction.
        at: The time a is evaluated at, defaults to n.
        cap: Largest number of prefixes to enumerate.

    Returns:
        The plus-sum of all consistent prefix plausibilities, bottom when none is consistent.

    Raises:
        ValueError: If the evidence horizon or time is out of range.
        CapExceededError: If |S|^n exceeds cap.
    """
    at = n if at is None else at
    _check_query(n, e, at)
    check_enumeration_cap(m.space, n, cap)
    if a is not None:
        m.space.proposition(a)
    total = m.domain.bottom
    for tail in product(m.space.states, repeat=n):
        p = (m.space.init, *tail)
        if not e.admits(p) or (a is not None and p[at] not in a):
            continue
        total = m.domain.plus(total, prefix_plausibility(m, p))
    return total


def compare_joint(
    m: TransitionModel,
    e: Evidence,
    a: Proposition,
    at: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> CompareResult:
    """
    Compare Pl(a at time at, E) with Pl(not-a at time at, E).

    Args:
        m: The model.
        e: The evidence.
        a: The proposition.
        at: The time index.
        cap: Largest number of prefixes to enumerate.

    Returns:
        The domain comparison of the two joint plausibilities.

    Raises:
        InconsistentEvidenceError: If both joint plausibilities are bottom.
    """
    a = m.space.proposition(a)
    pl_a = event_plausibility(m, e.horizon, e, a, at, cap)
    pl_not_a = event_plausibility(m, e.horizon, e, m.space.complement(a), at, cap)
    if m.domain.is_bottom(pl_a) and m.domain.is_bottom(pl_not_a):
        raise InconsistentEvidenceError(
            "the evidence is inconsistent with the model", e.horizon
        )
    return m.domain.compare(pl_a, pl_not_a)


def believes(
    m: TransitionModel,
    e: Evidence,
    a: Proposition,
    at: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> bool:
    """
    Whether the agent believes the run is in a at time at, given the evidence.

    Args:
        m: The model.
        e: The evidence.
        a: The proposition.
        at: The time index, at most the evidence horizon.
        cap: Largest number of prefixes to enumerate.

    Returns:
        True iff the joint plausibility of a is strictly greater than that of its complement.

    Raises:
        InconsistentEvidenceError: If no prefix consistent with e has non-bottom plausibility.
    """
    result = compare_joint(m, e, a, at, cap)
    if result is CompareResult.INCOMPARABLE:
        logger.info(
            f"Joint plausibilities of {sorted(a)} and its complement at time {at} are incomparable"
        )
    return result is CompareResult.GREATER
