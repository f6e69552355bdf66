"""Product of ranking domains, with every operation applied coordinate-wise."""

from typing import override

from markov_belief.domains.domain import AlgebraicDomain, CompareResult
from markov_belief.domains.kappa import (
    INF,
    KappaRaw,
    compare_ranks,
    format_rank,
    normalize_rank,
    parse_rank,
)


class KappaProduct(AlgebraicDomain):
    """
    Vectors of ranks of a fixed width, ordered pointwise.

    A vector with any infinite coordinate is collapsed to the all-infinite bottom,
    otherwise times would not be strictly monotone.
    """

    name = "kappa_product"
    has_width = True
    totally_ordered = False

    @property
    def width(self) -> int:
        """The number of coordinates."""
        assert self.kind.width is not None
        return self.kind.width

    @override
    def top_raw(self) -> tuple[KappaRaw, ...]:
        return (0,) * self.width

    @override
    def bottom_raw(self) -> tuple[KappaRaw, ...]:
        return (INF,) * self.width

    @override
    def normalize_raw(self, raw: object) -> tuple[KappaRaw, ...]:
        if not isinstance(raw, (tuple, list)) or len(raw) != self.width:
            raise ValueError(f"expected a vector of {self.width} ranks, got {raw!r}")
        ranks = tuple(normalize_rank(r) for r in raw)
        return self.bottom_raw() if INF in ranks else ranks

    @override
    def plus_raw(self, a, b) -> tuple[KappaRaw, ...]:
        return tuple(min(x, y) for x, y in zip(a, b))

    @override
    def times_raw(self, a, b) -> tuple[KappaRaw, ...]:
        return self.normalize_raw(tuple(x + y for x, y in zip(a, b)))

    @override
    def compare_raw(self, a, b) -> CompareResult:
        outcomes = {compare_ranks(x, y) for x, y in zip(a, b)} - {CompareResult.EQUAL}
        if not outcomes:
            return CompareResult.EQUAL
        if len(outcomes) > 1:
            return CompareResult.INCOMPARABLE
        return outcomes.pop()

    @override
    def parse_raw(self, text: str) -> tuple[KappaRaw, ...]:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != self.width:
            raise ValueError(
                f"bad kappa_product literal: {text!r} (expected {self.width} ranks)"
            )
        return tuple(parse_rank(p) for p in parts)

    @override
    def format_raw(self, raw) -> str:
        return ",".join(format_rank(r) for r in raw)
