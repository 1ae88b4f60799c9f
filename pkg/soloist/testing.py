# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import random
import warnings
from dataclasses import dataclass

from soloist import formula as f
from soloist.constants import Comparator, FormulaKind
from soloist.engine import run_check
from soloist.exceptions import AlternationWarning
from soloist.formula import build_table
from soloist.oracle import eval_positions
from soloist.trace import Trace, TraceEntry, generate_random_trace


def make_trace(*rows):
    """ Build a trace from (timestamp, atoms) rows; positions are numbered from 1. """
    return Trace(TraceEntry(position, timestamp, frozenset(atoms)) for position, (timestamp, atoms) in enumerate(rows, 1))


def trace_t1():
    return make_trace((1, "a"), (3, "ab"), (6, "b"), (10, "ac"), (12, "c"))


def trace_t2():
    """ Requests at 2, 7 and 11, each answered two time units later. """
    return make_trace((2, ["req"]), (4, ["res"]), (7, ["req"]), (9, ["res"]), (11, ["req"]), (13, ["res"]))


def trace_t3():
    return make_trace((1, "a"), (2, "z"), (3, "a"), (5, "a"), (7, "z"))


def random_interval(rng, max_bound=60):
    lo = rng.randint(0, max_bound // 2)
    if rng.random() < 0.2:
        return f.Interval(lo=lo, lo_closed=rng.random() < 0.5)
    hi = rng.randint(lo, max_bound)
    if hi == lo:
        return f.Interval(lo=lo, hi=hi, lo_closed=True, hi_closed=True)
    return f.Interval(lo=lo, hi=hi, lo_closed=rng.random() < 0.5, hi_closed=rng.random() < 0.5)


_COMPOSITE_KINDS = (
    FormulaKind.NOT,
    FormulaKind.AND,
    FormulaKind.OR,
    FormulaKind.UNTIL,
    FormulaKind.SINCE,
    FormulaKind.COUNT,
    FormulaKind.MAX,
    FormulaKind.AVG_DIST,
)


def random_core_formula(rng, atoms=8, max_height=4, max_window=60):
    """
    Draw a core formula of height at most `max_height` over the atoms a0..a{atoms-1}. Every core connective can
    appear; windows and interval bounds stay below `max_window`.
    """
    if max_height == 0 or rng.random() < 0.2:
        roll = rng.random()
        if roll < 0.05:
            return f.TRUE
        if roll < 0.08:
            return f.FALSE
        return f.atom("a{}".format(rng.randrange(atoms)))

    def sub():
        return random_core_formula(rng, atoms, rng.randint(0, max_height - 1), max_window)

    kind = rng.choice(_COMPOSITE_KINDS)
    comparator = rng.choice(list(Comparator))
    if kind == FormulaKind.NOT:
        return f.negation(sub())
    if kind == FormulaKind.AND:
        return f.conjunction(*(sub() for _ in range(rng.randint(2, 3))))
    if kind == FormulaKind.OR:
        return f.disjunction(*(sub() for _ in range(rng.randint(2, 3))))
    if kind == FormulaKind.UNTIL:
        return f.until(random_interval(rng, max_window), sub(), sub())
    if kind == FormulaKind.SINCE:
        return f.since(random_interval(rng, max_window), sub(), sub())
    if kind == FormulaKind.COUNT:
        return f.count(comparator, rng.randint(0, 5), rng.randint(0, max_window), sub())
    if kind == FormulaKind.MAX:
        window = rng.randint(1, max_window)
        return f.max_count(comparator, rng.randint(0, 4), window, rng.randint(1, window), sub())
    return f.avg_dist(comparator, rng.randint(0, 20), rng.randint(0, max_window), sub(), sub())


@dataclass(frozen=True)
class Divergence:
    formula: f.Formula
    position: int
    expected: bool
    actual: bool

    def __str__(self):
        return "formula={} position={} expected={} actual={}".format(
            self.formula, self.position, str(self.expected).lower(), str(self.actual).lower()
        )


def first_divergence(expected, actual):
    """
    The first (subformula, position) where two holds-sets over the same table disagree, children before parents.
    Returns None when they agree everywhere.
    """
    table = expected.table
    for formula_id in table:
        difference = set(expected[formula_id]) ^ set(actual[formula_id])
        if difference:
            position = min(difference)
            return Divergence(
                formula=table.formula(formula_id),
                position=position,
                expected=expected.holds_at(formula_id, position),
                actual=actual.holds_at(formula_id, position),
            )
    return None


@dataclass
class DifferentialOutcome:
    seed: int
    formula: f.Formula
    trace: Trace
    divergence: Divergence = None

    @property
    def passed(self):
        return self.divergence is None


def differential_check(seed, height_max=4, trace_len_max=200, atoms=8, workers=1):
    """
    Generate a trace and a core formula from `seed`, check the formula with the engine and with the oracle, and
    compare every subformula's holds-set.
    """
    rng = random.Random(seed)
    trace = generate_random_trace(
        seed,
        length=rng.randint(1, trace_len_max),
        atom_universe_size=atoms,
        max_atoms_per_instant=rng.randint(1, atoms),
        max_gap=10,
    )
    formula = random_core_formula(rng, atoms, height_max)

    # random pairs rarely alternate; the violation is reported, it does not change the result
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AlternationWarning)
        result = run_check(trace, formula, workers=workers)
        expected = eval_positions(trace, build_table(formula))

    return DifferentialOutcome(seed, formula, trace, first_divergence(expected, result.holds))
