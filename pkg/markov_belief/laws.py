"""Exhaustive law checking of algebraic domains over finite sample sets."""

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from loguru import logger

from markov_belief.domains import (
    AlgebraicDomain,
    CompareResult,
    DomainKind,
    PlausValue,
    domain_for,
)

GE = (CompareResult.GREATER, CompareResult.EQUAL)


@dataclass(frozen=True)
class LawViolation:
    """A law that fails on a concrete tuple of sample values."""

    law: str
    witness: tuple[PlausValue, ...]
    expected: bool

    def __str__(self) -> str:
        values = ", ".join(str(v) for v in self.witness)
        suffix = " (expected)" if self.expected else ""
        return f"{self.law}: ({values}){suffix}"


@dataclass
class LawReport:
    """Result of check_domain_laws: one entry per violated law, with its first witness."""

    kind: DomainKind
    checked: list[str] = field(default_factory=list)
    violations: list[LawViolation] = field(default_factory=list)

    @property
    def unexpected(self) -> list[LawViolation]:
        """Violations that the domain does not document as exempt."""
        return [v for v in self.violations if not v.expected]

    def __bool__(self) -> bool:
        return not self.unexpected


def _sample_set(domain: AlgebraicDomain, samples: Iterable[PlausValue]) -> list[PlausValue]:
    values: list[PlausValue] = []
    for v in [*samples, domain.top, domain.bottom]:
        domain_value = domain.value(v.raw) if v.kind == domain.kind else v
        if domain_value not in values:
            values.append(domain_value)
    return values


def _laws(d: AlgebraicDomain) -> dict[str, tuple[int, Callable[..., bool]]]:
    def geq(a, b) -> bool:
        return d.compare(a, b) in GE

    def greater(a, b) -> bool:
        return d.compare(a, b) is CompareResult.GREATER

    return {
        "plus.commutative": (2, lambda a, b: d.plus(a, b) == d.plus(b, a)),
        "plus.associative": (
            3,
            lambda a, b, c: d.plus(d.plus(a, b), c) == d.plus(a, d.plus(b, c)),
        ),
        "plus.monotone": (
            3,
            lambda a, b, c: not geq(a, b) or geq(d.plus(a, c), d.plus(b, c)),
        ),
        "plus.bottom_identity": (1, lambda a: d.plus(a, d.bottom) == a),
        "plus.top_absorbing": (1, lambda a: d.plus(a, d.top) == d.top),
        "times.commutative": (2, lambda a, b: d.times(a, b) == d.times(b, a)),
        "times.associative": (
            3,
            lambda a, b, c: d.times(d.times(a, b), c) == d.times(a, d.times(b, c)),
        ),
        "times.top_identity": (1, lambda a: d.times(a, d.top) == a),
        "times.bottom_preserving": (1, lambda a: d.times(a, d.bottom) == d.bottom),
        "times.monotone": (
            3,
            lambda a, b, c: not geq(a, b) or geq(d.times(a, c), d.times(b, c)),
        ),
        "times.strictly_monotone": (
            3,
            lambda a, b, c: not greater(a, b)
            or d.is_bottom(c)
            or greater(d.times(a, c), d.times(b, c)),
        ),
        "times.distributes_over_plus": (
            3,
            lambda a, b, c: d.times(a, d.plus(b, c))
            == d.plus(d.times(a, b), d.times(a, c)),
        ),
        "order.reflexive": (1, lambda a: d.compare(a, a) is CompareResult.EQUAL),
        "order.antisymmetric": (
            2,
            lambda a, b: not (geq(a, b) and geq(b, a)) or a == b,
        ),
        "order.converse": (
            2,
            lambda a, b: d.compare(b, a) is d.compare(a, b).flipped(),
        ),
        "order.transitive": (
            3,
            lambda a, b, c: not (geq(a, b) and geq(b, c)) or geq(a, c),
        ),
        "order.total": (
            2,
            lambda a, b: not d.totally_ordered
            or d.compare(a, b) is not CompareResult.INCOMPARABLE,
        ),
        "order.bounded": (1, lambda a: geq(d.top, a) and geq(a, d.bottom)),
    }


def check_domain_laws(kind: DomainKind, samples: Iterable[PlausValue]) -> LawReport:
    """
    Check every algebraic-domain law over all tuples drawn from a sample set.

    Top and bottom are always added to the samples. Laws listed in the domain's
    exempt_laws are still checked, but their violations are marked as expected.

    Args:
        kind: The domain to check.
        samples: Values of that kind.

    Returns:
        A LawReport with the first witness of every violated law.

    Raises:
        DomainMismatchError: If a sample belongs to another kind.
    """
    d = domain_for(kind)
    values = _sample_set(d, samples)
    report = LawReport(kind)
    for law, (arity, holds) in _laws(d).items():
        report.checked.append(law)
        for witness in product(values, repeat=arity):
            if not holds(*witness):
                report.violations.append(
                    LawViolation(law, witness, law in d.exempt_laws)
                )
                break
    logger.debug(
        f"Checked {len(report.checked)} laws of {kind} over {len(values)} samples, "
        f"{len(report.violations)} violated"
    )
    return report
