"""Reference semantics by prefix enumeration, and Markovianization of ranking priors over histories."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from loguru import logger

from markov_belief.domains import KAPPA, CompareResult, PlausValue
from markov_belief.errors import DomainMismatchError, InconsistentEvidenceError
from markov_belief.model import (
    DEFAULT_ENUMERATION_CAP,
    Evidence,
    Prefix,
    Proposition,
    StateSpace,
    TransitionModel,
    ValidationReport,
    check_enumeration_cap,
    format_prefix,
)
from markov_belief.prior import FinitePrior

HISTORY_SEPARATOR = ">"


@dataclass
class PrefixTable:
    """Every non-bottom n-prefix consistent with some evidence, with its plausibility."""

    model: TransitionModel
    horizon: int
    rows: dict[Prefix, PlausValue] = field(default_factory=dict)

    @property
    def kind(self):
        """Domain of the values."""
        return self.model.kind

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[tuple[Prefix, PlausValue]]:
        return iter(self.rows.items())

    def total(self, a: Proposition | None = None, at: int | None = None) -> PlausValue:
        """Plus-sum of the rows passing through a at time at (all rows when a is None)."""
        at = self.horizon if at is None else at
        return self.model.domain.sum(
            v for p, v in self.rows.items() if a is None or p[at] in a
        )

    def best(self) -> list[Prefix]:
        """Rows no other row is strictly more plausible than."""
        d = self.model.domain
        return [
            p
            for p, v in self.rows.items()
            if not any(d.compare(w, v) is CompareResult.GREATER for w in self.rows.values())
        ]


def enumerate_prefixes(
    m: TransitionModel,
    n: int,
    e: Evidence | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> PrefixTable:
    """
    Enumerate every n-prefix with non-bottom plausibility, consistent with the evidence.

    The search extends prefixes depth first in state declaration order and cuts a branch as
    soon as it becomes bottom or contradicts an observation, so rows come out sorted.

    Args:
        m: The model.
        n: The horizon.
        e: Evidence of horizon n, or None.
        cap: Largest |S|^n allowed.

    Returns:
        The PrefixTable.

    Raises:
        ValueError: If the evidence horizon differs from n.
        CapExceededError: If |S|^n exceeds cap.
    """
    if n < 0:
        raise ValueError(f"horizon must be non-negative, got {n}")
    if e is not None and e.horizon != n:
        raise ValueError(f"evidence has horizon {e.horizon}, expected {n}")
    check_enumeration_cap(m.space, n, cap)
    d = m.domain
    table = PrefixTable(m, n)
    stack: list[tuple[Prefix, PlausValue]] = [((m.space.init,), d.top)]
    while stack:
        p, value = stack.pop()
        if len(p) == n + 1:
            table.rows[p] = value
            continue
        time = len(p)
        for s in reversed(m.space.states):
            if e is not None and not e.allows(time, s):
                continue
            t = m.t(p[-1], s)
            if d.is_bottom(t):
                continue
            stack.append(((*p, s), d.times(value, t)))
    logger.debug(f"Enumerated {len(table)} non-bottom {n}-prefixes")
    return table


def dump_table(t: PrefixTable) -> str:
    """Render a table as ``s0>...>sn<TAB>value`` lines, sorted by state declaration order."""
    rows = sorted(t.rows.items(), key=lambda row: t.model.space.sort_key(row[0]))
    return "".join(f"{format_prefix(p)}\t{v}\n" for p, v in rows)


def _joint_pair(
    m: TransitionModel, e: Evidence, a: Proposition, at: int, cap: int
) -> tuple[PlausValue, PlausValue]:
    a = m.space.proposition(a)
    if not 0 <= at <= e.horizon:
        raise ValueError(f"time {at} is outside 0..{e.horizon}")
    table = enumerate_prefixes(m, e.horizon, e, cap)
    if not table.rows:
        raise InconsistentEvidenceError(
            "the evidence is inconsistent with the model", e.horizon
        )
    return table.total(a, at), table.total(m.space.complement(a), at)


def oracle_believes(
    m: TransitionModel,
    e: Evidence,
    a: Proposition,
    at: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> bool:
    """
    Belief query computed from the enumerated prefix table only.

    Args:
        m: The model.
        e: The evidence.
        a: The proposition.
        at: The time index.
        cap: Largest |S|^n allowed.

    Returns:
        True iff Pl(a at time at, E) is strictly greater than Pl(not-a at time at, E).

    Raises:
        InconsistentEvidenceError: If no prefix consistent with e is possible.
    """
    pl_a, pl_not_a = _joint_pair(m, e, a, at, cap)
    return m.domain.compare(pl_a, pl_not_a) is CompareResult.GREATER


def _require_kappa(kind) -> None:
    if kind != KAPPA:
        raise DomainMismatchError(f"conditional ranks need the kappa domain, not {kind}")


def _subtract(x: float, y: float) -> float:
    return math.inf if x == math.inf else x - y


def conditional_kappa(
    m: TransitionModel,
    e: Evidence,
    a: Proposition,
    at: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> int | float:
    """
    Conditional rank kappa(a at time at | E) = kappa(a, E) - kappa(E).

    Args:
        m: A kappa model.
        e: The evidence.
        a: The proposition.
        at: The time index.
        cap: Largest |S|^n allowed.

    Returns:
        The rank, math.inf when a is impossible given E.

    Raises:
        DomainMismatchError: If the model is not kappa-valued.
        InconsistentEvidenceError: If E has rank infinity.
    """
    _require_kappa(m.kind)
    pl_a, pl_not_a = _joint_pair(m, e, a, at, cap)
    evidence_rank = min(pl_a.raw, pl_not_a.raw)
    return _subtract(pl_a.raw, evidence_rank)


def conditional_prefix_kappa(
    m: TransitionModel, e: Evidence, p: Prefix, cap: int = DEFAULT_ENUMERATION_CAP
) -> int | float:
    """
    Conditional rank of a whole n-prefix given the evidence.

    Raises:
        DomainMismatchError: If the model is not kappa-valued.
        InconsistentEvidenceError: If E has rank infinity.
    """
    _require_kappa(m.kind)
    m.space.check_prefix(p)
    if len(p) != e.horizon + 1:
        raise ValueError(f"prefix {format_prefix(p)} does not have horizon {e.horizon}")
    table = enumerate_prefixes(m, e.horizon, e, cap)
    if not table.rows:
        raise InconsistentEvidenceError(
            "the evidence is inconsistent with the model", e.horizon
        )
    value = table.rows.get(p, m.domain.bottom)
    return _subtract(value.raw, table.total().raw)


def history_id(h: Prefix) -> str:
    """State identifier of a history."""
    return HISTORY_SEPARATOR.join(h)


class HistoryModel:
    """A transition model whose states are histories of a source model, up to a fixed horizon."""

    def __init__(
        self, model: TransitionModel, source: StateSpace, horizon: int, histories: dict[str, Prefix]
    ):
        """
        Initialize the history model.

        Args:
            model: The transition model over history identifiers.
            source: The source state space.
            horizon: Largest history length minus one.
            histories: Source prefix of every history identifier.
        """
        self.model = model
        self.source = source
        self.horizon = horizon
        self.histories = histories

    def project(self, h: str) -> str:
        """Last source state of a history."""
        return self.histories[h][-1]

    def project_prefix(self, hp: Prefix) -> Prefix:
        """The source prefix a history-model prefix simulates."""
        return self.histories[hp[-1]]

    def lift_prefix(self, p: Prefix) -> Prefix:
        """The history-model prefix simulating a source prefix."""
        self.source.check_prefix(p)
        return tuple(history_id(p[: i + 1]) for i in range(len(p)))

    def lift_proposition(self, a: Proposition) -> Proposition:
        """All histories ending in a state of a."""
        return frozenset(h for h, p in self.histories.items() if p[-1] in a)

    def lift_evidence(self, e: Evidence) -> Evidence:
        """
        Evidence over histories observing the same source states.

        Raises:
            ValueError: If e reaches beyond the horizon.
        """
        if e.horizon > self.horizon:
            raise ValueError(
                f"evidence of horizon {e.horizon} exceeds the history horizon {self.horizon}"
            )
        return Evidence(tuple(self.lift_proposition(o) for o in e.observations))

    def validate(self) -> ValidationReport:
        """Check that every interior (non-leaf) history row sums to top."""
        report = ValidationReport()
        d = self.model.domain
        for h, p in self.histories.items():
            if len(p) > self.horizon:
                continue
            total = d.sum(self.model.row(h).values())
            report.row_sums[h] = total
            if not d.is_top(total):
                report.invalid_rows.append(h)
        return report


def markovianize_kappa(p: FinitePrior, n: int | None = None) -> HistoryModel:
    """
    Build a Markovian model over histories that reproduces a ranking prior up to horizon n.

    The rank of a history is the least rank of its extensions to the prior's horizon; a
    transition h -> h.s gets rank(h.s) - rank(h), with inf - inf taken as 0.

    Args:
        p: A kappa prior over n-prefixes whose least rank is 0.
        n: The horizon to simulate, defaults to the prior's horizon.

    Returns:
        The HistoryModel.

    Raises:
        DomainMismatchError: If the prior is not kappa-valued.
        ValueError: If the prior is not over prefixes, n exceeds its horizon, no rank is 0,
            or a state identifier contains the history separator.
    """
    _require_kappa(p.kind)
    if p.horizon is None or p.space is None:
        raise ValueError("markovianization needs a prior over n-prefixes of a state space")
    n = p.horizon if n is None else n
    if not 0 <= n <= p.horizon:
        raise ValueError(f"horizon {n} is outside 0..{p.horizon}")
    if min((v.raw for v in p.values.values()), default=math.inf) != 0:
        raise ValueError("the least rank of the prior must be 0")
    clashing = [s for s in p.space if HISTORY_SEPARATOR in s]
    if clashing:
        raise ValueError(
            f"state identifiers {clashing} contain the history separator {HISTORY_SEPARATOR!r}"
        )

    space = p.space
    rank: dict[Prefix, float] = {}
    for tail_length in range(n + 1):
        for tail in product(space.states, repeat=tail_length):
            h = (space.init, *tail)
            rank[h] = min(
                (v.raw for q, v in p.values.items() if q[: len(h)] == h),  # type: ignore[index]
                default=math.inf,
            )

    histories = {history_id(h): h for h in rank}
    table: dict[tuple[str, str], PlausValue] = {}
    d = p.domain
    for h, r in rank.items():
        if len(h) > n:
            continue
        for s in space:
            child = (*h, s)
            value = 0 if r == math.inf else _subtract(rank[child], r)
            table[(history_id(h), history_id(child))] = d.value(value)

    model = TransitionModel(
        StateSpace(histories, history_id((space.init,))), p.kind, table
    )
    logger.debug(f"Markovianized a horizon-{n} prior into {len(histories)} histories")
    return HistoryModel(model, space, n, histories)
