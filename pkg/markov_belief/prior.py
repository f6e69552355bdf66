"""Finite-horizon priors and the qualitativeness checks run on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Hashable, Iterable, Mapping

from loguru import logger

from markov_belief.domains import (
    POSSIBILITY,
    CompareResult,
    DomainKind,
    PlausValue,
    domain_for,
)
from markov_belief.errors import CapExceededError, InconsistentEvidenceError
from markov_belief.model import (
    Evidence,
    Prefix,
    Proposition,
    StateSpace,
    TransitionModel,
    check_enumeration_cap,
    prefix_plausibility,
)

DEFAULT_ATOM_CAP = 12

Event = frozenset[Any]


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a property check, with a witness when the property fails."""

    holds: bool
    witness: tuple[Event, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


class FinitePrior:
    """
    A plausibility measure given by its values on finitely many atoms.

    Events are sets of atoms. Ordinarily an event's plausibility is the plus-sum of its
    atoms; an additive prior sums exact rationals instead, which gives probability-like
    measures ordered numerically.
    """

    def __init__(
        self,
        kind: DomainKind,
        values: Mapping[Hashable, PlausValue],
        horizon: int | None = None,
        space: StateSpace | None = None,
        additive: bool = False,
    ):
        """
        Initialize the prior.

        Args:
            kind: Domain of the values.
            values: Plausibility of every atom; atoms are n-prefixes when horizon is set.
            horizon: The prefix length minus one, for priors over runs.
            space: The state space the prefixes range over.
            additive: Combine atoms by rational addition instead of the domain's plus.

        Raises:
            ValueError: If the atom values are not normalized, or additive is set for a non-possibility kind.
            DomainMismatchError: If a value belongs to another kind.
        """
        self.kind = kind
        self.domain = domain_for(kind)
        self.values: dict[Hashable, PlausValue] = dict(values)
        self.horizon = horizon
        self.space = space
        self.additive = additive
        if additive and kind != POSSIBILITY:
            raise ValueError("additive priors take possibility-valued atoms")
        self.domain.check(*self.values.values())
        total = self.measure(self.values)
        if total != self.domain.top:
            raise ValueError(f"prior is not normalized: all atoms together have {total}")

    @property
    def atoms(self) -> list[Hashable]:
        """All atoms, in insertion order."""
        return list(self.values)

    def measure(self, event: Iterable[Hashable]) -> PlausValue:
        """
        Plausibility of a set of atoms; atoms missing from the prior count as bottom.

        Args:
            event: The atoms.

        Returns:
            The plausibility of the event.
        """
        picked = [self.values[a] for a in set(event) if a in self.values]
        if self.additive:
            return PlausValue(self.kind, sum((v.raw for v in picked), Fraction(0)))
        return self.domain.sum(picked)

    def event_plausibility(
        self, e: Evidence, a: Proposition | None = None, at: int | None = None
    ) -> PlausValue:
        """
        Plausibility of "E holds and the run is in a at time at" for a prior over n-prefixes.

        Raises:
            ValueError: If the prior is not over prefixes or the evidence horizon differs.
        """
        if self.horizon is None or e.horizon != self.horizon:
            raise ValueError(
                f"evidence of horizon {e.horizon} does not fit a prior of horizon {self.horizon}"
            )
        at = self.horizon if at is None else at
        return self.measure(
            p
            for p in self.values
            if e.admits(p) and (a is None or p[at] in a)  # type: ignore[index]
        )

    def believes(self, e: Evidence, a: Proposition, at: int) -> bool:
        """
        Whether a holds at time at is believed given the evidence, by comparing joint plausibilities.

        Raises:
            InconsistentEvidenceError: If the evidence has plausibility bottom.
        """
        if self.space is None:
            raise ValueError("belief queries need a prior over a state space")
        pl_a = self.event_plausibility(e, a, at)
        pl_not_a = self.event_plausibility(e, self.space.complement(a), at)
        if self.domain.is_bottom(pl_a) and self.domain.is_bottom(pl_not_a):
            raise InconsistentEvidenceError(
                "the evidence is inconsistent with the prior", e.horizon
            )
        return self.domain.compare(pl_a, pl_not_a) is CompareResult.GREATER


def model_to_prior(m: TransitionModel, n: int, cap: int = 10_000_000) -> FinitePrior:
    """
    Restrict the Markovian prior of a model to its n-prefixes.

    Args:
        m: A validated model.
        n: The horizon.
        cap: Largest number of prefixes to enumerate.

    Returns:
        A FinitePrior over every n-prefix.

    Raises:
        CapExceededError: If |S|^n exceeds cap.
    """
    check_enumeration_cap(m.space, n, cap)
    values: dict[Prefix, PlausValue] = {}
    for tail in product(m.space.states, repeat=n):
        p = (m.space.init, *tail)
        values[p] = prefix_plausibility(m, p)
    return FinitePrior(m.kind, values, horizon=n, space=m.space)


class _MaskTable:
    """Plausibility of every set of possible atoms, indexed by bitmask."""

    def __init__(self, p: FinitePrior, cap: int):
        self.prior = p
        self.atoms = [a for a in p.atoms if not p.domain.is_bottom(p.values[a])]
        if len(self.atoms) > cap:
            raise CapExceededError(
                f"{len(self.atoms)} atoms exceed the atom cap of {cap}"
            )
        k = len(self.atoms)
        raws = [p.values[a].raw for a in self.atoms]
        plus = (lambda x, y: x + y) if p.additive else p.domain.plus_raw
        table = [Fraction(0) if p.additive else p.domain.bottom_raw()] * (1 << k)
        for mask in range(1, 1 << k):
            low = mask & -mask
            table[mask] = plus(table[mask ^ low], raws[low.bit_length() - 1])
        self.pl = table
        self.compare_raw = p.domain.compare_raw

    def greater(self, x: int, y: int) -> bool:
        return self.compare_raw(self.pl[x], self.pl[y]) is CompareResult.GREATER

    def event(self, mask: int) -> Event:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)


def check_qualitative(p: FinitePrior, cap: int = DEFAULT_ATOM_CAP) -> CheckResult:
    """
    Check that for pairwise disjoint A, B, C: Pl(A u B) > Pl(C) and Pl(A u C) > Pl(B) imply Pl(A) > Pl(B u C).

    Bottom atoms are left out, they cannot change the verdict.

    Args:
        p: The prior.
        cap: Largest number of non-bottom atoms.

    Returns:
        A CheckResult whose witness is (A, B, C) on failure.

    Raises:
        CapExceededError: If p has more than cap non-bottom atoms.
    """
    t = _MaskTable(p, cap)
    k = len(t.atoms)
    # colour 0 leaves an atom out, 1/2/3 put it in A/B/C
    for colouring in product(range(4), repeat=k):
        sets = [0, 0, 0, 0]
        for i, colour in enumerate(colouring):
            sets[colour] |= 1 << i
        a, b, c = sets[1], sets[2], sets[3]
        if (
            t.greater(a | b, c)
            and t.greater(a | c, b)
            and not t.greater(a, b | c)
        ):
            witness = (t.event(a), t.event(b), t.event(c))
            logger.debug(f"Qualitativeness fails on {witness}")
            return CheckResult(False, witness)
    return CheckResult(True)


def check_closure_under_conjunction(
    p: FinitePrior, e: Iterable[Hashable] | None = None, cap: int = DEFAULT_ATOM_CAP
) -> CheckResult:
    """
    Check that the beliefs given evidence e are closed under conjunction.

    A is believed given e iff Pl(A n e) > Pl(not-A n e), so only the part of A inside e matters.

    Args:
        p: The prior.
        e: The evidence event as a set of atoms, defaults to every atom.
        cap: Largest number of non-bottom atoms.

    Returns:
        A CheckResult whose witness is (A, B), both believed while their intersection is not.

    Raises:
        CapExceededError: If p has more than cap non-bottom atoms.
    """
    t = _MaskTable(p, cap)
    evidence = set(p.atoms if e is None else e)
    e_mask = sum(1 << i for i, a in enumerate(t.atoms) if a in evidence)

    believed = []
    sub = e_mask
    while True:
        if t.greater(sub, e_mask & ~sub):
            believed.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & e_mask
    believed_set = set(believed)
    for x in believed:
        for y in believed:
            if x & y not in believed_set:
                return CheckResult(False, (t.event(x), t.event(y)))
    return CheckResult(True)
