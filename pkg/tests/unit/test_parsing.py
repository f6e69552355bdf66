"""Tests for the model, constraint and observation file readers."""

import pytest

from markov_belief.constraints import Relation, check_safe, entails
from markov_belief.domains import KAPPA, kappa_product
from markov_belief.errors import (
    ConstraintCycleError,
    InvalidPrefixError,
    ModelValidationError,
    ParseError,
    UnknownStateError,
)
from markov_belief.model import Evidence
from markov_belief.parsing import (
    format_model,
    parse_constraints,
    parse_evidence,
    parse_model,
    parse_prefix,
    parse_proposition,
)
from markov_belief.scenarios import load_constraints, load_evidence, load_model, load_text
from tests.default_test_variables import (
    FULL,
    PARKED,
    car_model,
    car_possibility_model,
    car_space,
    e_borrowed3,
    e_stolen,
)

HEADER = "domain kappa\nstates a b\ninit a\n"


def test_parse_car_model():
    """Test that the packaged car model is the ranking model of the story."""
    m = load_model("car")
    assert m.kind == KAPPA
    assert m.space == car_space
    assert m.entries() == car_model.entries()
    assert load_model("car_possibility").entries() == car_possibility_model.entries()


def test_comments_and_blank_lines():
    """Test that comments and blank lines are skipped."""
    m = parse_model("# header\n\n" + HEADER + "trans a a 0  # stay\ntrans b b 0\n")
    assert m.t("a", "a").raw == 0
    assert m.t("a", "b").raw == float("inf")


@pytest.mark.parametrize(
    "text,message",
    [
        ("domain kappa\nstates a b\ntrans a a 0\n", "missing init"),
        ("domain kappa\ninit a\n", "init before states"),
        ("domain kappa\nstates a\n", "missing init"),
        ("states a\ninit a\n", "missing domain"),
        ("states a\ninit a\ntrans a a 0\n", "missing domain"),
        (HEADER + "trans a b 1/2\n", "bad kappa literal"),
        (HEADER + "trans a c 0\n", "unknown state"),
        (HEADER + "trans a a 0\ntrans a a 1\n", "duplicate transition"),
        (HEADER + "trans a a\n", "trans takes"),
        (HEADER + "weight a a 0\n", "unknown directive"),
        ("domain kappa\nstates a b\ninit a b\n", "multiple initial states are not supported"),
        ("domain kappa\nstates a b\ninit a\ninit b\n", "multiple initial states are not supported"),
        ("domain kappa\nstates a a\n", "duplicate state identifiers"),
        ("domain kappa\nstates a>b\n", "invalid state identifier"),
        ("domain kappa\nstates a\nstates b\n", "duplicate states directive"),
        ("domain probability\n", "unknown domain"),
        ("domain kappa\ndomain kappa\n", "duplicate domain directive"),
    ],
)
def test_model_syntax_errors(text, message):
    """Test the diagnostics of malformed model files."""
    with pytest.raises(ParseError, match=message):
        parse_model(text)


def test_parse_error_line_numbers():
    """Test that errors carry the offending line."""
    with pytest.raises(ParseError) as err:
        parse_model(HEADER + "\ntrans a b x\n")
    assert err.value.line == 5
    assert str(err.value).startswith("line 5: ")
    assert err.value.reason == "bad kappa literal: 'x'"


def test_model_validation_on_parse():
    """Test that unnormalized models are refused unless validation is off."""
    text = HEADER + "trans a b 1\ntrans b b 0\n"
    with pytest.raises(ModelValidationError) as err:
        parse_model(text)
    assert "row a: sums to 1, expected top" in str(err.value)
    assert not err.value.report
    assert parse_model(text, validate=False).t("a", "b").raw == 1


def test_kappa_product_model():
    """Test a model over rank vectors."""
    m = parse_model("domain kappa_product 2\nstates a b\ninit a\ntrans a a 0,0\ntrans a b 1,2\ntrans b b 0,0\n")
    assert m.kind == kappa_product(2)
    assert str(m.t("a", "b")) == "1,2"


def test_format_model_round_trip():
    """Test that formatting and parsing give back the same model."""
    for m in (car_model, car_possibility_model):
        text = format_model(m)
        again = parse_model(text)
        assert again.kind == m.kind
        assert again.space == m.space
        assert again.entries() == m.entries()
    assert format_model(car_model).splitlines()[:4] == [
        "domain kappa",
        "states PF PE G",
        "init PF",
        "trans PF PF 0",
    ]


def test_parse_constraints():
    """Test the packaged constraint sets."""
    changes = load_constraints("car_changes")
    assert check_safe(changes)
    assert entails(changes, ("PF", "PE"), Relation.LT, ("G", "G"))
    assert not changes.is_possible(("G", "PF"))
    chain = load_constraints("car_chain")
    assert entails(chain, ("PF", "PE"), Relation.LT, ("G", "PE"))
    assert entails(chain, ("PF", "G"), Relation.EQ, ("G", "PE"))
    leak = load_constraints("car_leak_preferred")
    assert entails(leak, ("PF", "G"), Relation.LT, ("PF", "PE"))


def test_constraint_syntax_errors():
    """Test the diagnostics of malformed constraint files."""
    header = "states a b\ninit a\n"
    with pytest.raises(ConstraintCycleError):
        parse_constraints(header + "order a b < a b\n")
    with pytest.raises(ParseError, match="order takes"):
        parse_constraints(header + "order a b << a a\n")
    with pytest.raises(ParseError, match="impossible takes"):
        parse_constraints(header + "impossible a\n")
    with pytest.raises(ParseError, match="unknown state"):
        parse_constraints(header + "impossible a c\n")
    with pytest.raises(ParseError, match="missing states"):
        parse_constraints("impossible a b\n")
    with pytest.raises(ParseError, match="unknown directive"):
        parse_constraints(header + "trans a a 0\n")


def test_parse_evidence():
    """Test the packaged observation files."""
    assert load_evidence("stolen", car_space) == e_stolen
    assert load_evidence("borrowed3", car_space) == e_borrowed3
    assert load_evidence("borrowed2", car_space) == Evidence((FULL, PARKED))
    assert load_evidence("empty", car_space) == Evidence(())


def test_evidence_syntax_errors():
    """Test the diagnostics of malformed observation files."""
    with pytest.raises(ParseError, match="empty observation"):
        parse_evidence("obs\n", car_space)
    with pytest.raises(ParseError, match="unknown state"):
        parse_evidence("obs PF XX\n", car_space)
    with pytest.raises(ParseError, match="unknown directive"):
        parse_evidence("see PF\n", car_space)


def test_parse_proposition_and_prefix():
    """Test the command-line forms of propositions and prefixes."""
    assert parse_proposition("PF,PE", car_space) == PARKED
    assert parse_proposition(" G ", car_space) == frozenset({"G"})
    assert parse_proposition("", car_space) == frozenset()
    with pytest.raises(UnknownStateError):
        parse_proposition("PF,XX", car_space)
    assert parse_prefix("PF>G>PE", car_space) == ("PF", "G", "PE")
    with pytest.raises(InvalidPrefixError):
        parse_prefix("G>G", car_space)


def test_load_text_missing_file():
    """Test that unknown scenario files raise."""
    with pytest.raises(FileNotFoundError):
        load_text("nothing.qmb")
