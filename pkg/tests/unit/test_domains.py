"""Tests for the algebraic domains."""

from fractions import Fraction

import pytest

from markov_belief.domains import (
    INF,
    KAPPA,
    POSSIBILITY,
    CompareResult,
    DomainKind,
    bottom,
    compare,
    domain_for,
    kappa_product,
    plus,
    str_to_domain,
    times,
    top,
)
from markov_belief.errors import DomainMismatchError

kappa = domain_for(KAPPA)
possibility = domain_for(POSSIBILITY)
pair = domain_for(kappa_product(2))


def k(r):
    return kappa.value(r)


def pi(x):
    return possibility.value(Fraction(x))


def vec(*ranks):
    return pair.value(ranks)


def test_kappa_plus():
    """Test that plus is the minimum of ranks and bottom is its identity."""
    assert plus(k(3), k(1)) == k(1)
    assert plus(k(5), k(INF)) == k(5)


def test_kappa_times():
    """Test that times adds ranks and infinity absorbs."""
    assert times(k(1), k(1)) == k(2)
    assert times(k(7), k(INF)) == k(INF)


def test_kappa_compare():
    """Test that smaller ranks are more plausible."""
    assert compare(k(3), k(1)) is CompareResult.LESS
    assert compare(k(1), k(3)) is CompareResult.GREATER
    assert compare(k(4), k(4)) is CompareResult.EQUAL
    assert compare(k(0), k(INF)) is CompareResult.GREATER


def test_kappa_top_bottom():
    """Test the kappa bounds."""
    assert top(KAPPA) == k(0)
    assert bottom(KAPPA) == k(INF)
    assert kappa.is_top(k(0))
    assert kappa.is_bottom(k(INF))


def test_kappa_rejects_non_ranks():
    """Test that negative, boolean and fractional values are not ranks."""
    for raw in (-1, True, 1.5, -INF, "3"):
        with pytest.raises(ValueError):
            kappa.value(raw)


def test_kappa_parse_and_format():
    """Test the kappa literals."""
    assert kappa.parse("3") == k(3)
    assert kappa.parse(" inf ") == k(INF)
    assert str(k(INF)) == "inf"
    assert str(k(12)) == "12"
    with pytest.raises(ValueError, match="bad kappa literal"):
        kappa.parse("1/2")
    with pytest.raises(ValueError, match="bad kappa literal"):
        kappa.parse("-1")


def test_possibility_operations():
    """Test that possibility degrees combine by max and min."""
    assert times(pi("1/2"), pi("1/3")) == pi("1/3")
    assert plus(pi("1/2"), pi("1/3")) == pi("1/2")
    assert compare(pi("1/2"), pi("1/3")) is CompareResult.GREATER
    assert top(POSSIBILITY) == pi(1)
    assert bottom(POSSIBILITY) == pi(0)


def test_possibility_literals():
    """Test that possibility literals are exact fractions within [0, 1]."""
    assert possibility.parse("1/8") == pi("1/8")
    assert possibility.parse("0") == possibility.bottom
    assert str(pi("1/2")) == "1/2"
    assert str(pi(1)) == "1"
    for text in ("0.5", "3/2", "1/0", "abc"):
        with pytest.raises(ValueError):
            possibility.parse(text)


def test_possibility_rejects_floats():
    """Test that inexact values are refused."""
    with pytest.raises(ValueError):
        possibility.value(0.5)


def test_kappa_product_operations():
    """Test the pointwise operations on rank vectors."""
    assert plus(vec(2, 0), vec(0, 3)) == vec(0, 0)
    assert times(vec(1, 2), vec(3, 0)) == vec(4, 2)
    assert compare(vec(1, 0), vec(0, 1)) is CompareResult.INCOMPARABLE
    assert compare(vec(0, 0), vec(0, 1)) is CompareResult.GREATER
    assert compare(vec(2, 1), vec(2, 1)) is CompareResult.EQUAL


def test_kappa_product_collapses_infinite_coordinates():
    """Test that a vector with an infinite coordinate is the bottom vector."""
    assert vec(1, INF) == pair.bottom
    assert times(vec(1, 2), vec(INF, 0)) == pair.bottom
    assert pair.parse("inf, 3") == pair.bottom


def test_kappa_product_literals():
    """Test comma-separated rank vectors."""
    assert pair.parse("1,2") == vec(1, 2)
    assert str(vec(0, 3)) == "0,3"
    with pytest.raises(ValueError):
        pair.parse("1,2,3")
    with pytest.raises(ValueError):
        pair.value((1,))


def test_domain_mismatch():
    """Test that values of different kinds never combine."""
    with pytest.raises(DomainMismatchError):
        plus(k(1), pi("1/2"))
    with pytest.raises(DomainMismatchError):
        compare(vec(0, 0), domain_for(kappa_product(3)).top)
    with pytest.raises(DomainMismatchError):
        kappa.times(k(1), pi(1))


def test_sum_and_product():
    """Test the folds start at bottom and top respectively."""
    assert kappa.sum([]) == kappa.bottom
    assert kappa.product([]) == kappa.top
    assert kappa.sum([k(4), k(2), k(3)]) == k(2)
    assert kappa.product([k(1), k(0), k(2)]) == k(3)


def test_compare_result_flipped():
    """Test swapping the arguments of a comparison."""
    assert CompareResult.LESS.flipped() is CompareResult.GREATER
    assert CompareResult.GREATER.flipped() is CompareResult.LESS
    assert CompareResult.EQUAL.flipped() is CompareResult.EQUAL
    assert CompareResult.INCOMPARABLE.flipped() is CompareResult.INCOMPARABLE


def test_str_to_domain():
    """Test parsing domain names."""
    assert str_to_domain("kappa") == KAPPA
    assert str_to_domain("possibility") == POSSIBILITY
    assert str_to_domain("kappa_product 2") == kappa_product(2)
    assert str(kappa_product(2)) == "kappa_product 2"
    for text in ("", "probability", "kappa 2", "kappa_product", "kappa_product x", "kappa_product 0"):
        with pytest.raises(ValueError):
            str_to_domain(text)


def test_domain_kind_validation():
    """Test that widths only go with product domains."""
    with pytest.raises(ValueError):
        DomainKind("kappa_product")
    with pytest.raises(ValueError):
        DomainKind("possibility", 2)
