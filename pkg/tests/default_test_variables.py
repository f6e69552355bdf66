"""File which stores interchangeably used variables."""

from fractions import Fraction

from markov_belief.constraints import Constraint, ConstraintSet, Relation
from markov_belief.domains import KAPPA, POSSIBILITY, domain_for
from markov_belief.model import Evidence, StateSpace, TransitionModel

kappa = domain_for(KAPPA)
possibility = domain_for(POSSIBILITY)

car_space = StateSpace(["PF", "PE", "G"], "PF")

car_ranks = {
    ("PF", "PF"): 0,
    ("PF", "PE"): 3,
    ("PF", "G"): 1,
    ("PE", "PE"): 0,
    ("G", "G"): 0,
    ("G", "PE"): 1,
}
car_model = TransitionModel(
    car_space, KAPPA, {pair: kappa.value(r) for pair, r in car_ranks.items()}
)

car_possibility_model = TransitionModel(
    car_space,
    POSSIBILITY,
    {
        ("PF", "PF"): possibility.value(1),
        ("PF", "PE"): possibility.value(Fraction(1, 8)),
        ("PF", "G"): possibility.value(Fraction(1, 2)),
        ("PE", "PE"): possibility.value(1),
        ("G", "G"): possibility.value(1),
        ("G", "PE"): possibility.value(Fraction(1, 2)),
    },
)

FULL = car_space.full
PARKED = frozenset({"PF", "PE"})
GONE = frozenset({"G"})

e_stolen = Evidence((FULL, FULL, GONE))
e_borrowed2 = Evidence((FULL, PARKED))
e_borrowed3 = Evidence((FULL, PARKED, frozenset({"PE"})))
e_empty = Evidence(())

theft_runs = [
    ("PF", "PF", "PF", "G"),
    ("PF", "PF", "G", "G"),
    ("PF", "G", "G", "G"),
]
leak_runs = [
    ("PF", "PF", "PF", "PE"),
    ("PF", "PF", "PE", "PE"),
    ("PF", "PE", "PE", "PE"),
]
borrowed_run = ("PF", "G", "PE", "PE")

impossible_moves = [("PE", "PF"), ("PE", "G"), ("G", "PF")]
self_loops = [("PF", "PF"), ("PE", "PE"), ("G", "G")]


def changes_constraints(*extra: Constraint) -> ConstraintSet:
    """Self-loops equal, every change below them and unrelated to the others, the rest impossible."""
    relations = [
        Constraint(("PF", "PF"), Relation.EQ, ("PE", "PE")),
        Constraint(("PE", "PE"), Relation.EQ, ("G", "G")),
        Constraint(("PF", "PE"), Relation.LT, ("PF", "PF")),
        Constraint(("PF", "G"), Relation.LT, ("PF", "PF")),
        Constraint(("G", "PE"), Relation.LT, ("PF", "PF")),
        *extra,
    ]
    return ConstraintSet(car_space, relations, impossible_moves)


def chain_constraints() -> ConstraintSet:
    """Leaks below thefts and returns, which are equal and below the equal self-loops."""
    relations = [
        Constraint(("PF", "PE"), Relation.LT, ("PF", "G")),
        Constraint(("PF", "G"), Relation.EQ, ("G", "PE")),
        Constraint(("G", "PE"), Relation.LT, ("PF", "PF")),
        Constraint(("PF", "PF"), Relation.EQ, ("PE", "PE")),
        Constraint(("PE", "PE"), Relation.EQ, ("G", "G")),
    ]
    return ConstraintSet(car_space, relations, impossible_moves)


leak_preferred = Constraint(("PF", "G"), Relation.LT, ("PF", "PE"))
theft_preferred = [
    Constraint(("PF", "PE"), Relation.LT, ("PF", "G")),
    Constraint(("PF", "PE"), Relation.LT, ("G", "PE")),
]

