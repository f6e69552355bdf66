"""Forward filtering: maintain Pl(S_n = s, E_n) for every state across a stream of observations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from loguru import logger

from markov_belief.domains import KAPPA, CompareResult, PlausValue
from markov_belief.errors import InconsistentEvidenceError
from markov_belief.model import Evidence, Proposition, TransitionModel


@dataclass(frozen=True)
class FilterState:
    """Immutable snapshot of the joint plausibility of each state and the evidence so far."""

    model: TransitionModel
    time: int
    vector: Mapping[str, PlausValue]
    consistent: bool

    def __hash__(self) -> int:
        return hash((id(self.model), self.time, tuple(self.vector.items())))


def _make_state(m: TransitionModel, time: int, vector: dict[str, PlausValue]) -> FilterState:
    consistent = not all(m.domain.is_bottom(v) for v in vector.values())
    return FilterState(m, time, MappingProxyType(vector), consistent)


def init_filter(m: TransitionModel) -> FilterState:
    """
    Filter state at time 0: top at the initial state, bottom elsewhere.

    Args:
        m: A validated model.

    Returns:
        The time-0 FilterState.
    """
    d = m.domain
    return _make_state(
        m, 0, {s: d.top if s == m.space.init else d.bottom for s in m.space}
    )


def step(f: FilterState, o: Iterable[str], strict: bool = True) -> FilterState:
    """
    Advance one time step: predict with the transition table, then prune states outside the observation.

    Args:
        f: The current state; must be consistent.
        o: The observation at the new time.
        strict: Raise when the new vector is all bottom instead of returning a dead state.

    Returns:
        The FilterState at time f.time + 1.

    Raises:
        InconsistentEvidenceError: If f is inconsistent, or strict is set and the new vector is all bottom.
        UnknownStateError: If the observation mentions an unknown state.
    """
    m = f.model
    observed = m.space.proposition(o)
    if not f.consistent:
        raise InconsistentEvidenceError(
            f"cannot step past inconsistent evidence at time {f.time}", f.time
        )
    d = m.domain
    vector = {}
    for s in m.space:
        if s not in observed:
            vector[s] = d.bottom
        else:
            vector[s] = d.sum(d.times(m.t(prev, s), f.vector[prev]) for prev in m.space)
    result = _make_state(m, f.time + 1, vector)
    logger.debug(f"Filter vector at time {result.time}: {format_vector(result)}")
    if not result.consistent:
        if strict:
            raise InconsistentEvidenceError(
                f"inconsistent evidence at time {result.time}", result.time
            )
        logger.warning(f"Evidence became inconsistent at time {result.time}")
    return result


def _joint(f: FilterState, a: Iterable[str]) -> PlausValue:
    return f.model.domain.sum(f.vector[s] for s in a)


def filter_believes(f: FilterState, a: Iterable[str]) -> bool:
    """
    Whether the current state is believed to lie in a.

    Args:
        f: A consistent FilterState.
        a: The proposition.

    Returns:
        True iff the plus-sum over a strictly exceeds the plus-sum over its complement.

    Raises:
        InconsistentEvidenceError: If f is inconsistent.
    """
    if not f.consistent:
        raise InconsistentEvidenceError(
            f"no beliefs after inconsistent evidence at time {f.time}", f.time
        )
    space = f.model.space
    prop: Proposition = space.proposition(a)
    result = f.model.domain.compare(_joint(f, prop), _joint(f, space.complement(prop)))
    if result is CompareResult.INCOMPARABLE:
        logger.info(f"Filter plausibilities of {sorted(prop)} and its complement are incomparable")
    return result is CompareResult.GREATER


def run_filter(
    m: TransitionModel, e: Evidence, strict: bool = True
) -> list[FilterState]:
    """
    Filter a whole evidence sequence.

    In lenient mode the trace stops at the first inconsistent state.

    Args:
        m: A validated model.
        e: The evidence.
        strict: Raise on inconsistent evidence instead of ending the trace.

    Returns:
        The trace from time 0 up to the horizon (or the first dead state).

    Raises:
        InconsistentEvidenceError: In strict mode, carrying the offending time.
    """
    trace = [init_filter(m)]
    for o in e.observations:
        trace.append(step(trace[-1], o, strict))
        if not trace[-1].consistent:
            break
    return trace


def format_vector(f: FilterState, normalize: bool = False) -> str:
    """
    Render a filter vector as tab-separated ``state=value`` pairs.

    Args:
        f: The state.
        normalize: Shift kappa ranks so the smallest finite one is 0, for display only.

    Returns:
        The rendered line.

    Raises:
        ValueError: If normalize is requested for a domain other than kappa.
    """
    values = dict(f.vector)
    if normalize:
        if f.model.kind != KAPPA:
            raise ValueError("only kappa vectors can be normalized")
        finite = [v.raw for v in values.values() if v.raw != math.inf]
        shift = min(finite, default=0)
        values = {
            s: f.model.domain.value(v.raw - shift if v.raw != math.inf else v.raw)
            for s, v in values.items()
        }
    return "\t".join(f"{s}={v}" for s, v in values.items())


def format_trace(trace: list[FilterState], normalize: bool = False) -> list[str]:
    """Render a trace, one line per time step."""
    return [format_vector(f, normalize) for f in trace]
