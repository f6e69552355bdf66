"""Tests for check_domain_laws."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from markov_belief.domains import (
    INF,
    KAPPA,
    POSSIBILITY,
    AlgebraicDomain,
    DomainKind,
    Kappa,
    domain_for,
    kappa_product,
    str_to_domain,
)
from markov_belief.laws import check_domain_laws

kappa = domain_for(KAPPA)
possibility = domain_for(POSSIBILITY)
pair = domain_for(kappa_product(2))


@pytest.fixture
def max_kappa():
    """Register ranks combined with max instead of min, which breaks the plus laws, for one test."""

    class MaxKappa(Kappa):
        name = "max_kappa"

        def plus_raw(self, a, b):
            return max(a, b)

    yield DomainKind(MaxKappa.name)
    del AlgebraicDomain.registry[MaxKappa.name]


def test_kappa_laws_hold():
    """Test that ranks satisfy every law."""
    report = check_domain_laws(KAPPA, [kappa.value(r) for r in (0, 1, 2, 3, INF)])
    assert report
    assert report.violations == []
    assert "times.distributes_over_plus" in report.checked
    assert "order.total" in report.checked


def test_possibility_only_strict_monotonicity_fails():
    """Test that min is monotone but not strictly monotone."""
    samples = [possibility.value(Fraction(x)) for x in ("0", "1/2", "1")]
    report = check_domain_laws(POSSIBILITY, samples)
    assert report
    assert [v.law for v in report.violations] == ["times.strictly_monotone"]
    violation = report.violations[0]
    assert violation.expected
    assert [str(v) for v in violation.witness] == ["1", "1/2", "1/2"]
    assert report.unexpected == []
    assert str(violation) == "times.strictly_monotone: (1, 1/2, 1/2) (expected)"


def test_kappa_product_laws_hold():
    """Test that rank vectors satisfy every law, totality is not required."""
    samples = [pair.value(v) for v in ((0, 0), (1, 0), (0, 1), (INF, INF))]
    report = check_domain_laws(kappa_product(2), samples)
    assert report
    assert report.violations == []


def test_broken_domain_is_reported(max_kappa):
    """Test that a domain with the wrong plus gets unexpected violations with witnesses."""
    kind = max_kappa
    report = check_domain_laws(kind, [domain_for(kind).value(1)])
    assert not report
    laws = [v.law for v in report.unexpected]
    assert "plus.bottom_identity" in laws
    assert "plus.top_absorbing" in laws
    identity = next(v for v in report.violations if v.law == "plus.bottom_identity")
    assert [str(v) for v in identity.witness] == ["1"]


def test_broken_domain_is_unregistered_afterwards():
    """Test that the domain registered for one test is not visible to the others."""
    assert "max_kappa" not in AlgebraicDomain.registry
    with pytest.raises(ValueError, match="unknown domain"):
        str_to_domain("max_kappa")


@given(st.lists(st.one_of(st.integers(0, 20), st.just(INF)), max_size=5))
def test_kappa_laws_hold_on_any_samples(ranks):
    """Test the kappa laws over random sample sets."""
    report = check_domain_laws(KAPPA, [kappa.value(r) for r in ranks])
    assert report.violations == []


@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12), max_size=5))
def test_possibility_laws_on_any_samples(degrees):
    """Test that possibility never violates a law it does not declare exempt."""
    report = check_domain_laws(POSSIBILITY, [possibility.value(d) for d in degrees])
    assert report.unexpected == []


@given(
    st.lists(
        st.tuples(st.integers(0, 4), st.integers(0, 4)) | st.just((INF, INF)),
        max_size=4,
    )
)
def test_kappa_product_laws_on_any_samples(vectors):
    """Test the rank-vector laws over random sample sets."""
    report = check_domain_laws(kappa_product(2), [pair.value(v) for v in vectors])
    assert report.violations == []
