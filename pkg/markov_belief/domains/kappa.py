"""Ranking (kappa) domain: extended naturals with min as plus and addition as times."""

import math
import re
from typing import override

from markov_belief.domains.domain import AlgebraicDomain, CompareResult

INF = math.inf
_LITERAL = re.compile(r"\d+|inf")

KappaRaw = int | float


def normalize_rank(raw: object) -> KappaRaw:
    """
    Validate a single rank.

    Args:
        raw: A non-negative integer or infinity.

    Returns:
        The rank as an int, or math.inf.

    Raises:
        ValueError: If raw is not an extended natural number.
    """
    if isinstance(raw, bool):
        raise ValueError(f"not a rank: {raw!r}")
    if isinstance(raw, float) and math.isinf(raw) and raw > 0:
        return INF
    if isinstance(raw, int) and raw >= 0:
        return raw
    raise ValueError(f"not a rank: {raw!r}")


def parse_rank(text: str) -> KappaRaw:
    """
    Parse a rank literal: decimal digits or ``inf``.

    Raises:
        ValueError: If the literal is malformed.
    """
    if not _LITERAL.fullmatch(text):
        raise ValueError(f"bad kappa literal: {text!r}")
    return INF if text == "inf" else int(text)


def format_rank(raw: KappaRaw) -> str:
    """Render a rank as a literal."""
    return "inf" if raw == INF else str(raw)


def compare_ranks(a: KappaRaw, b: KappaRaw) -> CompareResult:
    """Compare ranks in the plausibility order, where smaller ranks are more plausible."""
    if a == b:
        return CompareResult.EQUAL
    return CompareResult.GREATER if a < b else CompareResult.LESS


class Kappa(AlgebraicDomain):
    """Ranks in the naturals plus infinity; 0 is top, infinity is bottom."""

    name = "kappa"

    @override
    def top_raw(self) -> KappaRaw:
        return 0

    @override
    def bottom_raw(self) -> KappaRaw:
        return INF

    @override
    def normalize_raw(self, raw: object) -> KappaRaw:
        return normalize_rank(raw)

    @override
    def plus_raw(self, a: KappaRaw, b: KappaRaw) -> KappaRaw:
        return min(a, b)

    @override
    def times_raw(self, a: KappaRaw, b: KappaRaw) -> KappaRaw:
        # inf + x stays inf
        return a + b

    @override
    def compare_raw(self, a: KappaRaw, b: KappaRaw) -> CompareResult:
        return compare_ranks(a, b)

    @override
    def parse_raw(self, text: str) -> KappaRaw:
        return parse_rank(text)

    @override
    def format_raw(self, raw: KappaRaw) -> str:
        return format_rank(raw)
