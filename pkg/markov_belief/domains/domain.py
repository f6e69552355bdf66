"""This module is responsible for defining the AlgebraicDomain interface and the plausibility value types."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import Any, ClassVar, Iterable

from markov_belief.errors import DomainMismatchError


@dataclass(frozen=True)
class DomainKind:
    """Names an algebraic domain; kappa_product domains also carry their vector width."""

    name: str
    width: int | None = None

    def __post_init__(self):
        """
        Validate the kind.

        Raises:
            ValueError: If the name is unknown or the width does not fit the name.
        """
        if self.name not in AlgebraicDomain.registry:
            raise ValueError(f"unknown domain: {self.name!r}")
        if AlgebraicDomain.registry[self.name].has_width:
            if self.width is None or self.width < 1:
                raise ValueError(
                    f"domain {self.name} needs a positive width, got {self.width}"
                )
        elif self.width is not None:
            raise ValueError(f"domain {self.name} takes no width")

    def __str__(self) -> str:
        return self.name if self.width is None else f"{self.name} {self.width}"


class CompareResult(Enum):
    """Outcome of comparing two plausibility values in the domain order."""

    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"

    def flipped(self) -> CompareResult:
        """Return the result of the comparison with its arguments swapped."""
        if self is CompareResult.LESS:
            return CompareResult.GREATER
        if self is CompareResult.GREATER:
            return CompareResult.LESS
        return self


@dataclass(frozen=True)
class PlausValue:
    """An element of an algebraic domain, tagged with the kind it belongs to."""

    kind: DomainKind
    raw: Any

    def __str__(self) -> str:
        return domain_for(self.kind).format_raw(self.raw)


class AlgebraicDomain(ABC):
    """
    Class that defines the AlgebraicDomain interface: a set D with plus, times, a partial order, top and bottom.

    Concrete domains work on raw python values; the public methods wrap them in PlausValue
    and refuse to mix values of different kinds.
    """

    registry: ClassVar[dict[str, type[AlgebraicDomain]]] = {}
    name: ClassVar[str]
    has_width: ClassVar[bool] = False
    totally_ordered: ClassVar[bool] = True
    exempt_laws: ClassVar[frozenset[str]] = frozenset()

    def __init_subclass__(cls, **kwargs):
        """Register every concrete domain under its name."""
        super().__init_subclass__(**kwargs)
        if "name" in cls.__dict__:
            AlgebraicDomain.registry[cls.name] = cls

    def __init__(self, kind: DomainKind):
        """
        Initialize the domain for a kind.

        Args:
            kind: The DomainKind this instance operates on.
        """
        self.kind = kind

    @abstractmethod
    def top_raw(self) -> Any:
        """Raw value of the top element."""
        pass

    @abstractmethod
    def bottom_raw(self) -> Any:
        """Raw value of the bottom element."""
        pass

    @abstractmethod
    def normalize_raw(self, raw: Any) -> Any:
        """
        Validate a raw value and bring it into canonical form.

        Raises:
            ValueError: If the raw value is not an element of the domain.
        """
        pass

    @abstractmethod
    def plus_raw(self, a: Any, b: Any) -> Any:
        """Combine the plausibilities of two disjoint events."""
        pass

    @abstractmethod
    def times_raw(self, a: Any, b: Any) -> Any:
        """Chain a conditional plausibility with the plausibility of its condition."""
        pass

    @abstractmethod
    def compare_raw(self, a: Any, b: Any) -> CompareResult:
        """Compare two raw values in the domain order."""
        pass

    @abstractmethod
    def parse_raw(self, text: str) -> Any:
        """
        Parse a literal of this domain.

        Raises:
            ValueError: If the literal is malformed.
        """
        pass

    @abstractmethod
    def format_raw(self, raw: Any) -> str:
        """Render a raw value as a literal that parse_raw accepts."""
        pass

    def value(self, raw: Any) -> PlausValue:
        """
        Wrap a raw value of this domain.

        Args:
            raw: The raw python value.

        Returns:
            The canonical PlausValue.
        """
        return PlausValue(self.kind, self.normalize_raw(raw))

    @property
    def top(self) -> PlausValue:
        """The top element."""
        return PlausValue(self.kind, self.top_raw())

    @property
    def bottom(self) -> PlausValue:
        """The bottom element."""
        return PlausValue(self.kind, self.bottom_raw())

    def parse(self, text: str) -> PlausValue:
        """
        Parse a literal into a PlausValue.

        Args:
            text: The literal.

        Returns:
            The parsed value.
        """
        return PlausValue(self.kind, self.normalize_raw(self.parse_raw(text.strip())))

    def check(self, *values: PlausValue):
        """
        Ensure every value belongs to this domain.

        Raises:
            DomainMismatchError: If a value belongs to another kind.
        """
        for v in values:
            if v.kind != self.kind:
                raise DomainMismatchError(
                    f"value {v} of kind {v.kind} used in domain {self.kind}"
                )

    def plus(self, a: PlausValue, b: PlausValue) -> PlausValue:
        """
        Compute a plus b.

        Raises:
            DomainMismatchError: If a value belongs to another kind.
        """
        self.check(a, b)
        return PlausValue(self.kind, self.plus_raw(a.raw, b.raw))

    def times(self, a: PlausValue, b: PlausValue) -> PlausValue:
        """
        Compute a times b.

        Raises:
            DomainMismatchError: If a value belongs to another kind.
        """
        self.check(a, b)
        return PlausValue(self.kind, self.times_raw(a.raw, b.raw))

    def compare(self, a: PlausValue, b: PlausValue) -> CompareResult:
        """
        Compare a to b in the domain order.

        Raises:
            DomainMismatchError: If a value belongs to another kind.
        """
        self.check(a, b)
        return self.compare_raw(a.raw, b.raw)

    def sum(self, values: Iterable[PlausValue]) -> PlausValue:
        """Fold plus over values, starting from bottom."""
        result = self.bottom
        for v in values:
            result = self.plus(result, v)
        return result

    def product(self, values: Iterable[PlausValue]) -> PlausValue:
        """Fold times over values, starting from top."""
        result = self.top
        for v in values:
            result = self.times(result, v)
        return result

    def is_bottom(self, v: PlausValue) -> bool:
        """Whether v is the bottom element."""
        self.check(v)
        return v.raw == self.bottom_raw()

    def is_top(self, v: PlausValue) -> bool:
        """Whether v is the top element."""
        self.check(v)
        return v.raw == self.top_raw()


@cache
def domain_for(kind: DomainKind) -> AlgebraicDomain:
    """
    Returns the AlgebraicDomain instance serving a kind.

    Args:
        kind: The DomainKind.

    Returns:
        A shared domain instance.
    """
    return AlgebraicDomain.registry[kind.name](kind)


def _common_domain(a: PlausValue, b: PlausValue) -> AlgebraicDomain:
    if a.kind != b.kind:
        raise DomainMismatchError(f"cannot combine {a.kind} with {b.kind}")
    return domain_for(a.kind)


def plus(a: PlausValue, b: PlausValue) -> PlausValue:
    """
    Combine the plausibilities of two disjoint events.

    Args:
        a: First value.
        b: Second value.

    Returns:
        a plus b.

    Raises:
        DomainMismatchError: If a and b have different kinds.
    """
    return _common_domain(a, b).plus(a, b)


def times(a: PlausValue, b: PlausValue) -> PlausValue:
    """
    Chain two plausibilities.

    Args:
        a: First value.
        b: Second value.

    Returns:
        a times b.

    Raises:
        DomainMismatchError: If a and b have different kinds.
    """
    return _common_domain(a, b).times(a, b)


def compare(a: PlausValue, b: PlausValue) -> CompareResult:
    """
    Compare two plausibilities in the domain order.

    Args:
        a: First value.
        b: Second value.

    Returns:
        Less, Equal, Greater or Incomparable.

    Raises:
        DomainMismatchError: If a and b have different kinds.
    """
    return _common_domain(a, b).compare(a, b)


def top(kind: DomainKind) -> PlausValue:
    """Top element of a kind."""
    return domain_for(kind).top


def bottom(kind: DomainKind) -> PlausValue:
    """Bottom element of a kind."""
    return domain_for(kind).bottom
