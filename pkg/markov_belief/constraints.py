"""Partially specified transition plausibilities: constraint sets over transition variables and what they entail."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable

import networkx as nx
from loguru import logger

from markov_belief.domains import KAPPA, CompareResult, PlausValue, domain_for
from markov_belief.errors import (
    ConstraintCycleError,
    InconsistentEvidenceError,
    KappaWitnessError,
    LengthMismatchError,
    UnsafeConstraintsError,
)
from markov_belief.model import (
    DEFAULT_ENUMERATION_CAP,
    Evidence,
    Prefix,
    Proposition,
    StateSpace,
    TransitionModel,
    check_enumeration_cap,
    format_prefix,
    validate_model,
)

Variable = tuple[str, str]

DEFAULT_MAX_GAP = 3


class Relation(Enum):
    """Relation between two transition variables; the left side is never more plausible than the right."""

    LE = "<="
    LT = "<"
    EQ = "="


class PrefixOrder(Enum):
    """Verdict of comparing two prefixes under a constraint set."""

    BELOW = "BELOW"
    ABOVE = "ABOVE"
    EQUIVALENT = "EQUIV"
    INCOMPARABLE = "INCOMPARABLE"


class EntailedBelief(Enum):
    """What a constraint set entails about a belief."""

    BELIEVED = "BELIEVED"
    NOT_BELIEVED = "NOT-BELIEVED"
    UNDETERMINED = "UNDETERMINED"


@dataclass(frozen=True)
class Constraint:
    """``lhs relation rhs`` between two transition variables."""

    lhs: Variable
    relation: Relation
    rhs: Variable

    def __str__(self) -> str:
        return f"{','.join(self.lhs)} {self.relation.value} {','.join(self.rhs)}"


@dataclass(frozen=True)
class SafetyResult:
    """Outcome of check_safe; an unsafe set names a state and a variable dominating its whole row."""

    safe: bool
    state: str | None = None
    dominator: Variable | None = None

    def __bool__(self) -> bool:
        return self.safe

    def __str__(self) -> str:
        if self.safe:
            return "SAFE"
        dominator = "top" if self.dominator is None else ",".join(self.dominator)
        return f"UNSAFE state={self.state} dominator={dominator}"


class ConstraintSet:
    """
    A partial order on transition variables plus a set of impossible variables.

    The reflexive-transitive closure of the order is computed once at construction.
    Anything below an impossible variable is impossible as well.
    """

    def __init__(
        self,
        space: StateSpace,
        relations: Iterable[Constraint] = (),
        impossible: Iterable[Variable] = (),
    ):
        """
        Initialize the set and compute its closure.

        Args:
            space: The state space the variables range over.
            relations: The order constraints.
            impossible: Variables whose transitions have plausibility bottom.

        Raises:
            UnknownStateError: If a variable mentions an unknown state.
            ConstraintCycleError: If a strict relation contradicts the closure.
        """
        self.space = space
        self.relations = list(relations)
        self.variables: list[Variable] = list(product(space.states, repeat=2))

        graph = nx.DiGraph()
        graph.add_nodes_from(self.variables)
        for c in self.relations:
            for v in (c.lhs, c.rhs):
                space.index(v[0])
                space.index(v[1])
            graph.add_edge(c.lhs, c.rhs)
            if c.relation is Relation.EQ:
                graph.add_edge(c.rhs, c.lhs)
        self.closure: nx.DiGraph = nx.transitive_closure(graph, reflexive=True)

        declared = set()
        for v in impossible:
            space.index(v[0])
            space.index(v[1])
            declared.add(v)
        self.declared_impossible = frozenset(declared)
        self.impossible = frozenset(
            x for x in self.variables if any(self.closure.has_edge(x, y) for y in declared)
        )

        for c in self.relations:
            if c.relation is not Relation.LT:
                continue
            if c.rhs in self.impossible:
                raise ConstraintCycleError(
                    f"{c} puts a variable strictly below an impossible one"
                )
            if self.closure.has_edge(c.rhs, c.lhs):
                raise ConstraintCycleError(f"{c} contradicts the derived order")
        self._below_cache: dict[tuple[tuple[Variable, ...], tuple[Variable, ...]], bool] = {}
        logger.debug(
            f"Constraint closure has {self.closure.number_of_edges()} pairs, "
            f"{len(self.impossible)} impossible variables"
        )

    def is_possible(self, x: Variable) -> bool:
        """Whether x is not marked impossible."""
        return x not in self.impossible

    def le(self, x: Variable, y: Variable) -> bool:
        """Whether x <= y is entailed; impossible variables lie below everything."""
        if x in self.impossible:
            return True
        if y in self.impossible:
            return False
        return self.closure.has_edge(x, y)

    def lt(self, x: Variable, y: Variable) -> bool:
        """Whether x < y is entailed."""
        return self.le(x, y) and not self.le(y, x)


def entails(c: ConstraintSet, x: Variable, relation: Relation, y: Variable) -> bool:
    """
    Decide whether a constraint set entails ``x relation y``.

    Args:
        c: The constraint set.
        x: Left variable.
        relation: One of <=, <, =.
        y: Right variable.

    Returns:
        Whether the relation follows from the closure.

    Raises:
        UnknownStateError: If a variable mentions an unknown state.
    """
    for v in (x, y):
        c.space.index(v[0])
        c.space.index(v[1])
    if relation is Relation.LE:
        return c.le(x, y)
    if relation is Relation.LT:
        return c.lt(x, y)
    return c.le(x, y) and c.le(y, x)


def check_safe(c: ConstraintSet) -> SafetyResult:
    """
    Check that no variable strictly dominates every outgoing variable of some state.

    Args:
        c: The constraint set.

    Returns:
        A SafetyResult naming the first offending state and dominator.
    """
    possible = [y for y in c.variables if c.is_possible(y)]
    for s in c.space:
        row = [(s, s2) for s2 in c.space]
        if not possible and not any(c.is_possible(x) for x in row):
            return SafetyResult(False, s, None)
        for y in possible:
            if all(c.lt(x, y) for x in row):
                return SafetyResult(False, s, y)
    return SafetyResult(True)


def _transitions(p: Prefix) -> tuple[Variable, ...]:
    return tuple(zip(p, p[1:]))


def _below(c: ConstraintSet, p: Prefix, q: Prefix) -> bool:
    xs = _transitions(p)
    if any(not c.is_possible(x) for x in xs):
        return True
    ys = _transitions(q)
    if not xs:
        return True
    key = (tuple(sorted(xs)), tuple(sorted(ys)))
    if key not in c._below_cache:
        graph = nx.Graph()
        left = [("p", i) for i in range(len(xs))]
        graph.add_nodes_from(left, bipartite=0)
        graph.add_nodes_from((("q", j) for j in range(len(ys))), bipartite=1)
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                if c.le(x, y):
                    graph.add_edge(("p", i), ("q", j))
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=left)
        c._below_cache[key] = sum(1 for node in matching if node[0] == "p") == len(xs)
    return c._below_cache[key]


def compare_prefixes(c: ConstraintSet, p: Prefix, q: Prefix) -> PrefixOrder:
    """
    Compare two prefixes of equal length.

    p is below q when p has an impossible transition, or when its transitions can be matched
    one to one with those of q so that each is entailed to be no more plausible than its match.

    Args:
        c: The constraint set.
        p: Left prefix.
        q: Right prefix.

    Returns:
        BELOW, ABOVE, EQUIVALENT or INCOMPARABLE.

    Raises:
        LengthMismatchError: If the prefixes differ in length.
        InvalidPrefixError: If a prefix does not start at the initial state.
    """
    if len(p) != len(q):
        raise LengthMismatchError(
            f"cannot compare {format_prefix(p)} with {format_prefix(q)}: lengths differ"
        )
    c.space.check_prefix(p)
    c.space.check_prefix(q)
    below, above = _below(c, p, q), _below(c, q, p)
    if below and above:
        return PrefixOrder.EQUIVALENT
    if below:
        return PrefixOrder.BELOW
    if above:
        return PrefixOrder.ABOVE
    return PrefixOrder.INCOMPARABLE


def _candidates(
    c: ConstraintSet, n: int, e: Evidence, exhaustive: bool
) -> list[Prefix]:
    if exhaustive:
        return [
            p
            for tail in product(c.space.states, repeat=n)
            if e.admits(p := (c.space.init, *tail))
            and all(c.is_possible(x) for x in _transitions(p))
        ]
    found = []
    stack: list[Prefix] = [(c.space.init,)]
    while stack:
        p = stack.pop()
        if len(p) == n + 1:
            found.append(p)
            continue
        for s in reversed(c.space.states):
            if e.allows(len(p), s) and c.is_possible((p[-1], s)):
                stack.append((*p, s))
    return found


def max_prefixes(
    c: ConstraintSet,
    n: int,
    e: Evidence,
    cap: int = DEFAULT_ENUMERATION_CAP,
    exhaustive: bool = False,
) -> list[Prefix]:
    """
    The maximal possible n-prefixes consistent with the evidence.

    Args:
        c: The constraint set.
        n: The horizon.
        e: Evidence of horizon n.
        cap: Largest |S|^n allowed.
        exhaustive: Scan every n-prefix instead of searching possible ones depth first.

    Returns:
        The prefixes no other candidate is strictly above, sorted by state declaration order.

    Raises:
        ValueError: If the evidence horizon differs from n.
        CapExceededError: If |S|^n exceeds cap.
    """
    if e.horizon != n:
        raise ValueError(f"evidence has horizon {e.horizon}, expected {n}")
    check_enumeration_cap(c.space, n, cap)
    candidates = _candidates(c, n, e, exhaustive)
    maxima = [
        p
        for p in candidates
        if not any(compare_prefixes(c, p, q) is PrefixOrder.BELOW for q in candidates)
    ]
    logger.debug(f"{len(maxima)} of {len(candidates)} candidate prefixes are maximal")
    return sorted(maxima, key=c.space.sort_key)


def all_equivalent(c: ConstraintSet, prefixes: list[Prefix]) -> bool:
    """Whether the prefixes are pairwise equivalent."""
    return all(
        compare_prefixes(c, p, q) is PrefixOrder.EQUIVALENT
        for i, p in enumerate(prefixes)
        for q in prefixes[i + 1 :]
    )


def entailed_belief(
    c: ConstraintSet,
    e: Evidence,
    a: Proposition,
    at: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    exhaustive: bool = False,
) -> EntailedBelief:
    """
    What every model consistent with the constraints believes about a at time at.

    Args:
        c: A safe constraint set.
        e: The evidence.
        a: The proposition.
        at: The time index.
        cap: Largest |S|^n allowed.
        exhaustive: Passed on to max_prefixes.

    Returns:
        BELIEVED if every maximal prefix is in a at time at; NOT_BELIEVED if not and all
        maximal prefixes are equivalent; UNDETERMINED otherwise.

    Raises:
        UnsafeConstraintsError: If c is unsafe.
        InconsistentEvidenceError: If no possible prefix is consistent with e.
    """
    safety = check_safe(c)
    if not safety:
        raise UnsafeConstraintsError(f"constraint set is unsafe: {safety}", safety)
    a = c.space.proposition(a)
    if not 0 <= at <= e.horizon:
        raise ValueError(f"time {at} is outside 0..{e.horizon}")
    maxima = max_prefixes(c, e.horizon, e, cap, exhaustive)
    if not maxima:
        raise InconsistentEvidenceError(
            "no possible prefix is consistent with the evidence", e.horizon
        )
    if all(p[at] in a for p in maxima):
        return EntailedBelief.BELIEVED
    if all_equivalent(c, maxima):
        return EntailedBelief.NOT_BELIEVED
    return EntailedBelief.UNDETERMINED


def is_consistent_with(m: TransitionModel, c: ConstraintSet) -> bool:
    """
    Whether a fully specified model satisfies every constraint of a set.

    Args:
        m: The model, over the same state space as c.
        c: The constraint set.

    Returns:
        True iff every relation holds in the model's domain order and impossible variables are bottom.

    Raises:
        ValueError: If the state spaces differ.
    """
    if m.space != c.space:
        raise ValueError("model and constraint set range over different state spaces")
    for x in c.impossible:
        if not m.domain.is_bottom(m.t(*x)):
            return False
    allowed = {
        Relation.LE: (CompareResult.LESS, CompareResult.EQUAL),
        Relation.LT: (CompareResult.LESS,),
        Relation.EQ: (CompareResult.EQUAL,),
    }
    return all(
        m.domain.compare(m.t(*r.lhs), m.t(*r.rhs)) in allowed[r.relation]
        for r in c.relations
    )


def sample_consistent_kappa(
    c: ConstraintSet, seed: int, max_gap: int = DEFAULT_MAX_GAP
) -> TransitionModel:
    """
    Draw a concrete ranking model consistent with a safe constraint set.

    Classes of equal variables are ranked bottom up: a class nothing lies above gets rank 0,
    any other class gets the largest rank of the classes above it plus a gap drawn from
    1..max_gap. Rows are then shifted so their least rank is 0.

    Args:
        c: A safe constraint set.
        seed: Seed of the random gaps; equal seeds give equal models.
        max_gap: Largest gap between a class and the classes above it.

    Returns:
        A validated kappa TransitionModel consistent with c.

    Raises:
        UnsafeConstraintsError: If c is unsafe.
        KappaWitnessError: If shifting the rows breaks a relation between rows.
    """
    if max_gap < 1:
        raise ValueError(f"max_gap must be positive, got {max_gap}")
    safety = check_safe(c)
    if not safety:
        raise UnsafeConstraintsError(f"constraint set is unsafe: {safety}", safety)

    order = {x: i for i, x in enumerate(c.variables)}
    possible = [x for x in c.variables if c.is_possible(x)]
    dag = nx.condensation(c.closure.subgraph(possible))
    members = dag.graph["mapping"]
    classes = sorted(dag.nodes, key=lambda k: min(order[x] for x in dag.nodes[k]["members"]))

    rng = random.Random(seed)
    gaps = {k: rng.randint(1, max_gap) for k in classes if dag.out_degree(k) > 0}
    logger.debug(f"Sampled class gaps {list(gaps.values())} with seed {seed}")

    rank: dict[int, int] = {}
    for k in reversed(list(nx.topological_sort(dag))):
        above = [rank[j] for j in dag.successors(k)]
        rank[k] = max(above) + gaps[k] if above else 0

    d = domain_for(KAPPA)
    table: dict[tuple[str, str], PlausValue] = {}
    for s in c.space:
        row = {x: rank[members[x]] for x in possible if x[0] == s}
        shift = min(row.values())
        for x, r in row.items():
            table[x] = d.value(r - shift)
    model = TransitionModel(c.space, KAPPA, table)
    if not is_consistent_with(model, c) or not validate_model(model):
        raise KappaWitnessError(
            "no ranking model with a top transition in every row satisfies the constraints"
        )
    return model
