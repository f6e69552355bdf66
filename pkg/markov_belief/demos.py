"""Packaged walk-throughs of the parked-car story, with ranking models or with constraint sets."""

from loguru import logger

from markov_belief.constraints import (
    ConstraintSet,
    all_equivalent,
    check_safe,
    compare_prefixes,
    entailed_belief,
    max_prefixes,
    sample_consistent_kappa,
)
from markov_belief.errors import QmbError
from markov_belief.filtering import filter_believes, format_vector, run_filter
from markov_belief.model import (
    Evidence,
    Proposition,
    TransitionModel,
    believes,
    format_prefix,
)
from markov_belief.oracle import PrefixTable, enumerate_prefixes, oracle_believes
from markov_belief.scenarios import load_constraints, load_evidence, load_model
from markov_belief.settings import Settings

PARKED = frozenset({"PF", "PE"})
GONE = frozenset({"G"})
CHANGES = "car_changes"
VARIANTS = ("car_leak_preferred", "car_theft_preferred")
CHAIN = "car_chain"
CHAIN_SEEDS = range(200)
LEAK_RUN = ("PF", "PF", "PF", "PE")
BORROWED_RUN = ("PF", "G", "PE", "PE")


class _Beliefs:
    """Answers belief queries on one model and evidence, by filtering and enumeration or by the oracle alone."""

    def __init__(self, m: TransitionModel, e: Evidence, oracle: bool, settings: Settings):
        self.m = m
        self.e = e
        self.oracle = oracle
        self.cap = settings.enumeration_cap
        self.table: PrefixTable = enumerate_prefixes(m, e.horizon, e, self.cap)

    def __call__(self, a: Proposition, at: int) -> bool:
        if self.oracle:
            return oracle_believes(self.m, self.e, a, at, self.cap)
        if at == self.e.horizon:
            return filter_believes(run_filter(self.m, self.e)[-1], a)
        return believes(self.m, self.e, a, at, self.cap)

    def vector_line(self) -> str:
        if not self.oracle:
            return format_vector(run_filter(self.m, self.e)[-1])
        n = self.e.horizon
        return "\t".join(f"{s}={self.table.total({s}, n)}" for s in self.m.space)

    def rows(self, keep) -> list[str]:
        return [f"{format_prefix(p)}\t{v}" for p, v in self.table if keep(p)]


def _verdict_line(label: str, verdict: bool) -> str:
    return f"{label}: {'BELIEVED' if verdict else 'NOT-BELIEVED'}"


def stolen_car(settings: Settings, oracle: bool = False) -> list[str]:
    """
    The car is observed gone at time 3 after two unobserved steps.

    Args:
        settings: Caps to run with.
        oracle: Answer every query by prefix enumeration only.

    Returns:
        The report lines.
    """
    m = load_model("car")
    e = load_evidence("stolen", m.space)
    bel = _Beliefs(m, e, oracle, settings)
    n = e.horizon
    evidence_rank = bel.table.total().raw
    best = set(bel.table.best())
    lines = [
        "scenario: stolen-car",
        f"evidence rank: {evidence_rank}",
        "most plausible runs:",
        *[
            f"{format_prefix(p)}\t{v.raw - evidence_rank}"
            for p, v in bel.table
            if p in best
        ],
        f"final vector: {bel.vector_line()}",
    ]
    gone_now = bel(GONE, n)
    gone_first, parked_first = bel(GONE, 1), bel(PARKED, 1)
    lines += [
        _verdict_line(f"not-parked at {n}", gone_now),
        _verdict_line("parked at 1", parked_first),
        _verdict_line("not-parked at 1", gone_first),
    ]
    if not gone_now:
        verdict = "not stolen"
    elif gone_first:
        verdict = "stolen by time 1"
    else:
        verdict = f"stolen by time {n}, time unknown"
    return lines + [f"verdict: {verdict}"]


def _runs_lines(bel: _Beliefs) -> list[str]:
    return [
        f"evidence rank: {bel.table.total().raw}",
        "borrowed runs:",
        *bel.rows(lambda p: "G" in p),
        "leak runs:",
        *bel.rows(lambda p: "G" not in p),
    ]


def _explain(bel: _Beliefs) -> tuple[list[str], str]:
    gone_first, parked_first = bel(GONE, 1), bel(PARKED, 1)
    lines = [
        _verdict_line("not-parked at 1", gone_first),
        _verdict_line("parked at 1", parked_first),
    ]
    if gone_first:
        return lines, "borrowed"
    if parked_first:
        return lines, "gas leak"
    return lines, "undecided"


def borrowed_car(settings: Settings, oracle: bool = False) -> list[str]:
    """
    The car is observed parked at time 2 and parked with an empty tank at time 3.

    Args:
        settings: Caps to run with.
        oracle: Answer every query by prefix enumeration only.

    Returns:
        The report lines.
    """
    m = load_model("car")
    e = load_evidence("borrowed3", m.space)
    bel = _Beliefs(m, e, oracle, settings)
    lines = ["scenario: borrowed-car", *_runs_lines(bel), f"final vector: {bel.vector_line()}"]
    verdict_lines, verdict = _explain(bel)
    return lines + verdict_lines + [f"verdict: {verdict}"]


def _constraint_header(scenario: str, name: str, c: ConstraintSet) -> list[str]:
    return [f"scenario: {scenario} (constraints: {name})", f"safety: {check_safe(c)}"]


def _maxima_lines(
    c: ConstraintSet, e: Evidence, settings: Settings, oracle: bool
) -> list[str]:
    maxima = max_prefixes(c, e.horizon, e, settings.enumeration_cap, exhaustive=oracle)
    equivalent = "yes" if all_equivalent(c, maxima) else "no"
    return [
        "maximal runs:",
        *[format_prefix(p) for p in maxima],
        f"maximal runs equivalent: {equivalent}",
    ]


def stolen_car_constraints(settings: Settings, oracle: bool = False) -> list[str]:
    """
    The stolen-car observations under the constraint set where changes are unlikely.

    Args:
        settings: Caps to run with.
        oracle: Scan every prefix instead of searching possible ones.

    Returns:
        The report lines.
    """
    c = load_constraints(CHANGES)
    e = load_evidence("stolen", c.space)
    n = e.horizon
    cap = settings.enumeration_cap

    def query(a: Proposition, at: int) -> str:
        return entailed_belief(c, e, a, at, cap, exhaustive=oracle).value

    lines = _constraint_header("stolen-car", CHANGES, c) + _maxima_lines(c, e, settings, oracle)
    gone_now = query(GONE, n)
    lines += [
        f"not-parked at {n}: {gone_now}",
        f"parked at 1: {query(PARKED, 1)}",
        f"not-parked at 1: {query(GONE, 1)}",
    ]
    verdict = f"stolen by time {n}, time unknown" if gone_now == "BELIEVED" else "undetermined"
    return lines + [f"verdict: {verdict}"]


def borrowed_car_constraints(settings: Settings, oracle: bool = False) -> list[str]:
    """
    The borrowed-car observations under the unlikely-changes constraints and two refinements of them.

    Args:
        settings: Caps to run with.
        oracle: Scan every prefix instead of searching possible ones.

    Returns:
        The report lines.
    """
    c = load_constraints(CHANGES)
    e = load_evidence("borrowed3", c.space)
    cap = settings.enumeration_cap

    def query(cs: ConstraintSet, a: Proposition) -> str:
        return entailed_belief(cs, e, a, 1, cap, exhaustive=oracle).value

    parked = query(c, PARKED)
    lines = _constraint_header("borrowed-car", CHANGES, c) + _maxima_lines(c, e, settings, oracle)
    lines += [f"parked at 1: {parked}", f"not-parked at 1: {query(c, GONE)}"]
    for variant in VARIANTS:
        lines.append(f"with {variant}: parked at 1: {query(load_constraints(variant), PARKED)}")
    verdict = "gas leak" if parked == "BELIEVED" else "undetermined"
    return lines + [f"verdict: {verdict}"]


def borrowed_car_chain(settings: Settings, oracle: bool = False) -> list[str]:
    """
    The borrowed-car observations under the chain constraints and two ranking models sampled from them.

    The chain leaves one leak and two changes incomparable, so the sampled models are searched for
    one that explains the observations by a borrowing and one that explains them by a leak.

    Args:
        settings: Caps to run with.
        oracle: Scan every prefix and answer every model query by enumeration only.

    Returns:
        The report lines.

    Raises:
        QmbError: If no sampled model gives one of the two explanations.
    """
    c = load_constraints(CHAIN)
    e = load_evidence("borrowed3", c.space)
    cap = settings.enumeration_cap
    lines = _constraint_header("borrowed-car", CHAIN, c) + _maxima_lines(c, e, settings, oracle)
    lines += [
        f"{format_prefix(LEAK_RUN)} vs {format_prefix(BORROWED_RUN)}: "
        f"{compare_prefixes(c, LEAK_RUN, BORROWED_RUN).value}",
        f"parked at 1: {entailed_belief(c, e, PARKED, 1, cap, exhaustive=oracle).value}",
    ]

    samples: dict[tuple, TransitionModel] = {}
    for seed in CHAIN_SEEDS:
        m = sample_consistent_kappa(c, seed)
        samples.setdefault(tuple(v.raw for _, _, v in m.entries()), m)
    reports: dict[str, list[str]] = {}
    for _, m in sorted(samples.items()):
        bel = _Beliefs(m, e, oracle, settings)
        verdict_lines, verdict = _explain(bel)
        reports.setdefault(
            verdict,
            [
                "sampled model:",
                *[f"trans {s} {s2} {v}" for s, s2, v in m.entries()],
                *_runs_lines(bel),
                *verdict_lines,
                f"verdict: {verdict}",
            ],
        )
    logger.debug(f"Sampled {len(samples)} distinct models from {CHAIN}")
    for verdict in ("borrowed", "gas leak"):
        if verdict not in reports:
            raise QmbError(f"no sampled model of {CHAIN} explains the observations as {verdict}")
        lines += reports[verdict]
    return lines


DEMOS = {
    ("stolen-car", False): stolen_car,
    ("borrowed-car", False): borrowed_car,
    ("stolen-car", True): stolen_car_constraints,
    ("borrowed-car", True): borrowed_car_constraints,
    ("chain", False): borrowed_car_chain,
    ("chain", True): borrowed_car_chain,
}


def run_demo(
    name: str, settings: Settings, constraints: bool = False, oracle: bool = False
) -> list[str]:
    """
    Run a packaged demo.

    Args:
        name: ``stolen-car``, ``borrowed-car`` or ``chain``.
        settings: Caps to run with.
        constraints: Use the constraint sets instead of the ranking model.
        oracle: Use the enumeration-only code paths.

    Returns:
        The report lines.

    Raises:
        ValueError: If the demo is unknown.
    """
    try:
        demo = DEMOS[(name, constraints)]
    except KeyError as err:
        raise ValueError(f"unknown demo: {name!r}") from err
    return demo(settings, oracle)

