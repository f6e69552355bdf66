"""Algebraic domains package."""

from .domain import (
    AlgebraicDomain,
    CompareResult,
    DomainKind,
    PlausValue,
    bottom,
    compare,
    domain_for,
    plus,
    times,
    top,
)
from .kappa import INF, Kappa
from .kappa_product import KappaProduct
from .possibility import Possibility

KAPPA = DomainKind("kappa")
POSSIBILITY = DomainKind("possibility")


def kappa_product(width: int) -> DomainKind:
    """
    Returns the kind of rank vectors of a given width.

    Args:
        width: Number of coordinates, at least 1.

    Returns:
        The DomainKind.
    """
    return DomainKind("kappa_product", width)


def str_to_domain(text: str) -> DomainKind:
    """
    Returns a DomainKind based on its textual name, e.g. ``kappa`` or ``kappa_product 2``.

    Args:
        text: The domain name, followed by the width for product domains.

    Returns:
        The DomainKind.

    Raises:
        ValueError: If the name is unknown or the width is missing or malformed.
    """
    parts = text.split()
    if not parts or len(parts) > 2:
        raise ValueError(f"bad domain: {text!r}")
    if len(parts) == 1:
        return DomainKind(parts[0])
    if not parts[1].isdigit():
        raise ValueError(f"bad domain width: {parts[1]!r}")
    return DomainKind(parts[0], int(parts[1]))


__all__ = [
    "INF",
    "KAPPA",
    "POSSIBILITY",
    "AlgebraicDomain",
    "CompareResult",
    "DomainKind",
    "Kappa",
    "KappaProduct",
    "PlausValue",
    "Possibility",
    "bottom",
    "compare",
    "domain_for",
    "kappa_product",
    "plus",
    "str_to_domain",
    "times",
    "top",
]
