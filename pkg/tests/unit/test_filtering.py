"""Tests for forward filtering."""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markov_belief.domains import KAPPA, POSSIBILITY, CompareResult, domain_for, kappa_product
from markov_belief.errors import InconsistentEvidenceError
from markov_belief.filtering import (
    filter_believes,
    format_trace,
    format_vector,
    init_filter,
    run_filter,
    step,
)
from markov_belief.model import (
    Evidence,
    StateSpace,
    TransitionModel,
    believes,
    event_plausibility,
)
from markov_belief.oracle import enumerate_prefixes, oracle_believes
from tests.default_test_variables import (
    FULL,
    GONE,
    PARKED,
    car_model,
    car_possibility_model,
    e_borrowed3,
    e_stolen,
    kappa,
    possibility,
)


def ranks(f):
    return {s: v.raw for s, v in f.vector.items()}


def test_init_filter():
    """Test the time-0 vectors of each domain."""
    assert ranks(init_filter(car_model)) == {"PF": 0, "PE": float("inf"), "G": float("inf")}
    assert ranks(init_filter(car_possibility_model)) == {"PF": 1, "PE": 0, "G": 0}
    pair = domain_for(kappa_product(2))
    space = StateSpace(["a", "b"], "a")
    m = TransitionModel(space, kappa_product(2), {("a", "a"): pair.top, ("b", "b"): pair.top})
    f = init_filter(m)
    assert dict(f.vector) == {"a": pair.top, "b": pair.bottom}
    assert f.time == 0
    assert f.consistent


def test_step_predicts_and_prunes():
    """Test the borrowed-car steps."""
    f1 = step(init_filter(car_model), FULL)
    assert ranks(f1) == {"PF": 0, "PE": 3, "G": 1}
    f2 = step(f1, PARKED)
    assert ranks(f2) == {"PF": 0, "PE": 2, "G": float("inf")}
    f3 = step(f2, {"PE"})
    assert ranks(f3) == {"PF": float("inf"), "PE": 2, "G": float("inf")}
    assert f3.time == 3


def test_step_full_observation_is_pure_prediction():
    """Test that observing every state prunes nothing."""
    f = step(step(init_filter(car_model), FULL), FULL)
    assert ranks(f) == {"PF": 0, "PE": 2, "G": 1}


def test_filter_believes():
    """Test belief queries on filter vectors."""
    f1 = step(init_filter(car_model), FULL)
    assert filter_believes(f1, {"PF"})
    assert not filter_believes(f1, set())
    f3 = run_filter(car_model, e_borrowed3)[-1]
    assert filter_believes(f3, {"PE"})
    assert not filter_believes(f3, set())


def test_run_filter():
    """Test whole traces of the car scenarios."""
    trace = run_filter(car_model, e_borrowed3)
    assert len(trace) == 4
    assert ranks(trace[-1]) == {"PF": float("inf"), "PE": 2, "G": float("inf")}
    assert ranks(run_filter(car_model, e_stolen)[-1]) == {
        "PF": float("inf"),
        "PE": float("inf"),
        "G": 1,
    }


def test_run_filter_inconsistent_evidence():
    """Test that a contradiction raises in strict mode and ends the trace in lenient mode."""
    e = Evidence((GONE, frozenset({"PF"}), FULL))
    with pytest.raises(InconsistentEvidenceError) as err:
        run_filter(car_model, e)
    assert err.value.time == 2

    trace = run_filter(car_model, e, strict=False)
    assert len(trace) == 3
    assert not trace[-1].consistent
    with pytest.raises(InconsistentEvidenceError):
        step(trace[-1], FULL)
    with pytest.raises(InconsistentEvidenceError):
        filter_believes(trace[-1], GONE)


def test_format_vector():
    """Test the rendering of vectors and traces."""
    trace = run_filter(car_model, e_borrowed3)
    assert format_vector(trace[-1]) == "PF=inf\tPE=2\tG=inf"
    assert format_vector(trace[-1], normalize=True) == "PF=inf\tPE=0\tG=inf"
    assert format_trace(trace[:2]) == ["PF=0\tPE=inf\tG=inf", "PF=0\tPE=3\tG=1"]
    possibility_trace = run_filter(car_possibility_model, e_borrowed3)
    assert format_vector(possibility_trace[-1]) == "PF=0\tPE=1/2\tG=0"
    with pytest.raises(ValueError):
        format_vector(possibility_trace[-1], normalize=True)


def test_filter_state_is_immutable():
    """Test that stepping leaves the previous state untouched."""
    f0 = init_filter(car_model)
    before = dict(f0.vector)
    step(f0, FULL)
    assert dict(f0.vector) == before
    with pytest.raises(AttributeError):
        f0.time = 1  # type: ignore[misc]
    with pytest.raises(TypeError):
        f0.vector["PE"] = kappa.top  # type: ignore[index]


three = StateSpace(["s", "t", "u"], "s")
pair = domain_for(kappa_product(2))
levels = {
    KAPPA: [kappa.top, kappa.value(2), kappa.bottom],
    POSSIBILITY: [possibility.top, possibility.value(Fraction(1, 2)), possibility.bottom],
    kappa_product(2): [pair.top, pair.value((0, 2)), pair.value((1, 0)), pair.bottom],
}
EVIDENCE_PER_MODEL = 50


@st.composite
def three_state_models(draw):
    kind = draw(st.sampled_from(list(levels)))
    top = levels[kind][0]
    table = {}
    for s in three:
        row = draw(st.lists(st.sampled_from(levels[kind]), min_size=3, max_size=3))
        if top not in row:
            row[draw(st.integers(0, 2))] = top
        table.update({(s, s2): v for s2, v in zip(three, row)})
    return TransitionModel(three, kind, table)


def random_observation(rng: random.Random) -> frozenset[str]:
    return frozenset(rng.sample(three.states, rng.randint(1, len(three))))


def random_evidence(rng: random.Random, max_horizon: int = 4) -> Evidence:
    n = rng.randint(0, max_horizon)
    return Evidence(tuple(random_observation(rng) for _ in range(n)))


all_propositions = [
    frozenset(s for s, keep in zip(three.states, mask) if keep)
    for mask in product([False, True], repeat=len(three))
]


@settings(max_examples=40, deadline=None)
@given(three_state_models(), st.integers(0, 2**32 - 1))
def test_filter_matches_enumeration(m, seed):
    """Test that filter vectors equal the enumerated joint plausibility of every state, for many evidence sequences."""
    rng = random.Random(seed)
    for _ in range(EVIDENCE_PER_MODEL):
        e = random_evidence(rng)
        n = e.horizon
        trace = run_filter(m, e, strict=False)
        table = enumerate_prefixes(m, n, e)
        if not trace[-1].consistent:
            assert event_plausibility(m, n, e) == m.domain.bottom
            assert len(table) == 0
            continue
        assert trace[-1].time == n
        for s in three:
            assert trace[-1].vector[s] == table.total(frozenset({s}), n)
        assert m.domain.sum(trace[-1].vector.values()) == event_plausibility(m, n, e)


@settings(max_examples=20, deadline=None)
@given(three_state_models(), st.integers(0, 2**32 - 1))
def test_filter_model_and_oracle_beliefs_agree(m, seed):
    """Test that the filter, the model query and the oracle reach the same verdict on every proposition."""
    rng = random.Random(seed)
    for _ in range(10):
        e = random_evidence(rng, max_horizon=3)
        n = e.horizon
        final = run_filter(m, e, strict=False)[-1]
        if not final.consistent:
            continue
        earlier = rng.randint(0, n)
        for a in all_propositions:
            verdict = filter_believes(final, a)
            assert believes(m, e, a, n) == verdict
            assert oracle_believes(m, e, a, n) == verdict
            assert believes(m, e, a, earlier) == oracle_believes(m, e, a, earlier)


def at_most(d, x, y) -> bool:
    return d.compare(x, y) in (CompareResult.LESS, CompareResult.EQUAL)


@settings(max_examples=60, deadline=None)
@given(three_state_models(), st.integers(0, 2**32 - 1))
def test_smaller_observations_only_lower_the_vector(m, seed):
    """Test that shrinking an observation moves entries towards bottom and the full set never prunes to bottom."""
    rng = random.Random(seed)
    f = run_filter(m, random_evidence(rng, max_horizon=3), strict=False)[-1]
    if not f.consistent:
        return
    d = m.domain
    wide = random_observation(rng)
    narrow = frozenset(rng.sample(sorted(wide), rng.randint(1, len(wide))))
    after_wide = step(f, wide, strict=False)
    after_narrow = step(f, narrow, strict=False)
    for s in three:
        assert at_most(d, after_narrow.vector[s], after_wide.vector[s])
        if s not in narrow:
            assert d.is_bottom(after_narrow.vector[s])
    assert step(f, three.full).consistent
