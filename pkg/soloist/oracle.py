# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import bisect
import logging
from collections import Counter
from collections.abc import Mapping

from soloist.constants import FailureBehaviour, FormulaKind
from soloist.exceptions import NotCoreFormulaError
from soloist.trace import report_alternation_violation


logger = logging.getLogger(__name__)


class HoldsSet(Mapping):
    """
    formula id -> ascending tuple of the positions where that formula holds. The unit of comparison between the engine
    and the oracle.
    """

    def __init__(self, table, positions):
        self.table = table
        self._positions = {formula_id: tuple(sorted(set(positions.get(formula_id, ())))) for formula_id in table}

    def __getitem__(self, formula_id):
        return self._positions[formula_id]

    def __iter__(self):
        return iter(self._positions)

    def __len__(self):
        return len(self._positions)

    def __eq__(self, other):
        if isinstance(other, HoldsSet):
            return self._positions == other._positions
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._positions.items()))

    def holds_at(self, formula_id, position):
        positions = self._positions[formula_id]
        index = bisect.bisect_left(positions, position)
        return index < len(positions) and positions[index] == position

    def verdict(self, position=1):
        """ Truth of the root formula at `position`, by default the first position of the trace. """
        return self.holds_at(self.table.root_id, position)

    def sizes(self):
        return {formula_id: len(positions) for formula_id, positions in self._positions.items()}

    def to_lines(self):
        """ The final output format: `<formula-id>,<position>` lines ordered by (id, position). """
        for formula_id in sorted(self._positions):
            for position in self._positions[formula_id]:
                yield "{},{}".format(formula_id, position)


def count_occurrences(trace, positions, tau_a, tau_b):
    """ c(tau_a, tau_b): how many of `positions` have a timestamp in the half open window (tau_a, tau_b]. """
    return sum(1 for s in positions if tau_a < trace.timestamp(s) <= tau_b)


def matching_pairs(trace, left_positions, right_positions, tau_i, window):
    """
    Pairs (s, t) where `s` is a left position with a timestamp in (tau_i - window, tau_i] and `t` is the first right
    position after `s` whose timestamp does not exceed tau_i. Left positions without such a `t` contribute nothing.
    """
    right = sorted(right_positions)
    pairs = set()
    for s in left_positions:
        if not tau_i - window < trace.timestamp(s) <= tau_i:
            continue
        index = bisect.bisect_right(right, s)
        if index < len(right) and trace.timestamp(right[index]) <= tau_i:
            pairs.add((s, right[index]))
    return pairs


def find_alternation_violation(trace, left_positions, right_positions, window):
    """
    Return (position, reason) for the first place where the two arguments of an average distance modality fail to
    alternate inside one window, or None.
    """
    left = set(left_positions)
    right = set(right_positions)
    both = sorted(left & right)
    if both:
        return both[0], "both arguments hold at the same position"
    pending = []
    for position in range(1, len(trace) + 1):
        if position in right:
            tau = trace.timestamp(position)
            shared = [s for s in pending if tau - trace.timestamp(s) < window]
            if len(shared) > 1:
                return position, "positions {} share the same match".format(", ".join(str(s) for s in shared))
            pending = []
        if position in left:
            pending.append(position)
    return None


class Oracle:
    """
    Evaluates formulae on a trace clause by clause, over every position at once. Quadratic in the worst case and meant
    as the reference the engine is checked against, not as a checker for large traces.

    Derived forms (F, G, X, P, H, Y and the average count modality) are evaluated by their own clauses rather than
    through their rewriting.
    """

    def __init__(self, trace, on_alternation=FailureBehaviour.WARN):
        self.trace = trace
        self.on_alternation = on_alternation
        self.size = len(trace)
        self._cache = {}
        self._reported = set()

    def holds(self, formula):
        """ The ascending tuple of positions where `formula` holds. """
        if formula not in self._cache:
            self._cache[formula] = tuple(sorted(self._evaluate(formula)))
        return self._cache[formula]

    def _timestamp(self, position):
        return self.trace.timestamp(position)

    def _all(self):
        return set(range(1, self.size + 1))

    def _evaluate(self, formula):
        kind = formula.kind
        if kind == FormulaKind.ATOM:
            return {entry.position for entry in self.trace if formula.name in entry.atoms}
        if kind == FormulaKind.TRUE:
            return self._all()
        if kind == FormulaKind.FALSE:
            return set()

        children = [set(self.holds(child)) for child in formula.children]
        if kind == FormulaKind.NOT:
            return self._all() - children[0]
        if kind == FormulaKind.AND:
            return set.intersection(*children)
        if kind == FormulaKind.OR:
            return set.union(*children)
        if kind == FormulaKind.UNTIL:
            return self._until(formula.interval, children[0], children[1])
        if kind == FormulaKind.SINCE:
            return self._since(formula.interval, children[0], children[1])
        if kind == FormulaKind.EVENTUALLY:
            return self._until(formula.interval, self._all(), children[0])
        if kind == FormulaKind.GLOBALLY:
            return self._globally(formula.interval, children[0])
        if kind == FormulaKind.NEXT:
            return self._until(formula.interval, set(), children[0])
        if kind == FormulaKind.ONCE:
            return self._since(formula.interval, self._all(), children[0])
        if kind == FormulaKind.HISTORICALLY:
            return self._historically(formula.interval, children[0])
        if kind == FormulaKind.PREVIOUS:
            return self._since(formula.interval, set(), children[0])
        if kind == FormulaKind.COUNT:
            return self._count(formula, children[0])
        if kind == FormulaKind.AVG_COUNT:
            return self._avg_count(formula, children[0])
        if kind == FormulaKind.MAX:
            return self._max(formula, children[0])
        if kind == FormulaKind.AVG_DIST:
            return self._avg_dist(formula, children[0], children[1])
        raise NotCoreFormulaError("No evaluation clause for {}".format(kind.value))

    def _until(self, interval, left, right):
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            for j in range(i + 1, self.size + 1):
                distance = self._timestamp(j) - tau_i
                if interval.upper_exceeded(distance):
                    break
                if j in right and interval.lower_reached(distance):
                    result.add(i)
                    break
                if j not in left:
                    break
        return result

    def _since(self, interval, left, right):
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            for j in range(i - 1, 0, -1):
                distance = tau_i - self._timestamp(j)
                if interval.upper_exceeded(distance):
                    break
                if j in right and interval.lower_reached(distance):
                    result.add(i)
                    break
                if j not in left:
                    break
        return result

    def _globally(self, interval, child):
        # every later position inside the interval satisfies the child
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            if all(
                j in child for j in range(i + 1, self.size + 1) if interval.contains(self._timestamp(j) - tau_i)
            ):
                result.add(i)
        return result

    def _historically(self, interval, child):
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            if all(j in child for j in range(1, i) if interval.contains(tau_i - self._timestamp(j))):
                result.add(i)
        return result

    def _count(self, formula, child):
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            if tau_i < formula.window:
                continue
            occurrences = count_occurrences(self.trace, child, tau_i - formula.window, tau_i)
            if formula.comparator.holds(occurrences, formula.bound):
                result.add(i)
        return result

    def _avg_count(self, formula, child):
        subintervals = formula.window // formula.step
        span = subintervals * formula.step
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            if tau_i < formula.window:
                continue
            occurrences = count_occurrences(self.trace, child, tau_i - span, tau_i)
            # the average occurrences / subintervals compared without division
            if formula.comparator.holds(occurrences, formula.bound * subintervals):
                result.add(i)
        return result

    def _max(self, formula, child):
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            if tau_i < formula.window:
                continue
            counts = []
            for m in range(formula.window // formula.step + 1):
                lb = max(tau_i - formula.window, tau_i - (m + 1) * formula.step)
                rb = tau_i - m * formula.step
                counts.append(count_occurrences(self.trace, child, lb, rb))
            if formula.comparator.holds(max(counts), formula.bound):
                result.add(i)
        return result

    def _avg_dist(self, formula, left, right):
        self._check_alternation(formula, left, right)
        result = set()
        for i in range(1, self.size + 1):
            tau_i = self._timestamp(i)
            if tau_i < formula.window:
                continue
            pairs = matching_pairs(self.trace, left, right, tau_i, formula.window)
            if not pairs:
                continue
            dist = sum(self._timestamp(t) - self._timestamp(s) for s, t in pairs)
            if formula.comparator.holds(dist, formula.bound * len(pairs)):
                result.add(i)
        return result

    def _check_alternation(self, formula, left, right):
        if formula in self._reported:
            return
        violation = find_alternation_violation(self.trace, left, right, formula.window)
        if violation is not None:
            self._reported.add(formula)
            report_alternation_violation(formula, *violation, on_fail=self.on_alternation)


def eval_at(trace, formula, position, on_alternation=FailureBehaviour.WARN):
    return position in Oracle(trace, on_alternation).holds(formula)


def eval_positions(trace, table, on_alternation=FailureBehaviour.WARN):
    """ The holds-set of every subformula of the table's root, including the root itself. """
    oracle = Oracle(trace, on_alternation)
    positions = {formula_id: oracle.holds(table.formula(formula_id)) for formula_id in table}
    holds = HoldsSet(table, positions)
    logger.debug("Oracle evaluated %d subformulae over %d positions", len(table), len(trace))
    return holds
