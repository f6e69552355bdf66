"""Possibility domain: exact rationals in [0, 1] with max as plus and min as times."""

import re
from fractions import Fraction
from typing import override

from markov_belief.domains.domain import AlgebraicDomain, CompareResult

_LITERAL = re.compile(r"\d+/\d+|0|1")


class Possibility(AlgebraicDomain):
    """
    Possibility degrees, ordered numerically with 1 on top and 0 at the bottom.

    Times is min, which is monotone but not strictly monotone, so that law is exempt.
    """

    name = "possibility"
    exempt_laws = frozenset({"times.strictly_monotone"})

    @override
    def top_raw(self) -> Fraction:
        return Fraction(1)

    @override
    def bottom_raw(self) -> Fraction:
        return Fraction(0)

    @override
    def normalize_raw(self, raw: object) -> Fraction:
        if isinstance(raw, bool) or not isinstance(raw, (int, Fraction)):
            raise ValueError(f"not an exact possibility degree: {raw!r}")
        value = Fraction(raw)
        if not 0 <= value <= 1:
            raise ValueError(f"possibility degree out of [0, 1]: {value}")
        return value

    @override
    def plus_raw(self, a: Fraction, b: Fraction) -> Fraction:
        return max(a, b)

    @override
    def times_raw(self, a: Fraction, b: Fraction) -> Fraction:
        return min(a, b)

    @override
    def compare_raw(self, a: Fraction, b: Fraction) -> CompareResult:
        if a == b:
            return CompareResult.EQUAL
        return CompareResult.LESS if a < b else CompareResult.GREATER

    @override
    def parse_raw(self, text: str) -> Fraction:
        if not _LITERAL.fullmatch(text):
            raise ValueError(f"bad possibility literal: {text!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError as err:
            raise ValueError(f"bad possibility literal: {text!r}") from err

    @override
    def format_raw(self, raw: Fraction) -> str:
        return str(raw)
