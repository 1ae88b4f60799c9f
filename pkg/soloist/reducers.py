# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging
from collections import Counter, deque
from itertools import groupby
from typing import NamedTuple

from soloist.constants import FailureBehaviour, FormulaKind
from soloist.decorators import register_reducer
from soloist.trace import report_alternation_violation


logger = logging.getLogger(__name__)


class HoldsTuple(NamedTuple):
    """ (φ, i): formula `formula_id` holds at `position`. """

    formula_id: int
    position: int


def within_guard(timestamp, window):
    """ Aggregate modalities only hold once a whole window fits before the current instant. """
    return timestamp >= window


class Reducer:
    """
    Reduces the group of one superformula ψ at iteration l. The values are the tuples of ψ's direct subformulae,
    ordered by position. When h(ψ) = l the reducer works out where ψ holds; when h(ψ) > l the tuples arrived early
    and are passed on unchanged; when h(ψ) < l ψ is already done and the tuples are dropped.
    """

    def __init__(self, table, formula_id, timestamps, on_alternation=FailureBehaviour.WARN):
        self.table = table
        self.formula_id = formula_id
        self.formula = table.formula(formula_id)
        self.timestamps = timestamps
        self.on_alternation = on_alternation
        self.child_ids = tuple(table.id_of(child) for child in self.formula.children)
        self.peak_tracked = 0

    def __call__(self, values, level):
        height = self.table.height(self.formula_id)
        if height > level:
            return [HoldsTuple(value.formula_id, value.position) for value in values]
        if height < level:
            return []
        positions = self.finalize(values)
        logger.debug(
            "Reducer for %s received %d tuples and emitted %d", self.formula, len(values), len(positions)
        )
        return [HoldsTuple(self.formula_id, position) for position in positions]

    def finalize(self, values):
        raise NotImplementedError

    def positions_of(self, values, child_id):
        return {value.position for value in values if value.formula_id == child_id}

    def track(self, size):
        if size > self.peak_tracked:
            self.peak_tracked = size

    def all_positions(self):
        return range(1, self.timestamps.size() + 1)


@register_reducer(FormulaKind.NOT)
class NegationReducer(Reducer):
    def finalize(self, values):
        emitted = []
        expected = 1
        # emit every position in the gaps between the received ones, then up to the end of the trace
        for value in values:
            emitted.extend(range(expected, value.position))
            expected = max(expected, value.position + 1)
        emitted.extend(range(expected, self.timestamps.size() + 1))
        return emitted


@register_reducer(FormulaKind.AND)
class ConjunctionReducer(Reducer):
    def finalize(self, values):
        arity = len(self.table.sub_d(self.formula_id))
        return [
            position
            for position, run in groupby(values, key=lambda value: value.position)
            if len({value.formula_id for value in run}) == arity
        ]


@register_reducer(FormulaKind.OR)
class DisjunctionReducer(Reducer):
    def finalize(self, values):
        return [position for position, _ in groupby(values, key=lambda value: value.position)]


class TemporalReducer(Reducer):
    """
    Shared sweep of Until and Since. Candidate positions are kept in two queues: `recent` for those whose distance
    from the current position has not yet reached the interval, `in_window` for those inside it. A candidate is
    discarded when its distance passes the interval or when the left operand fails in between.
    """

    def sweep(self, left, right, order):
        interval = self.formula.interval
        recent, in_window = deque(), deque()
        emitted = []
        for j in order:
            tau_j = self.timestamps[j]
            while recent and interval.lower_reached(abs(tau_j - self.timestamps[recent[0]])):
                in_window.append(recent.popleft())
            while in_window and interval.upper_exceeded(abs(tau_j - self.timestamps[in_window[0]])):
                in_window.popleft()
            if j in right:
                emitted.extend(in_window)
                in_window.clear()
            if j not in left:
                recent.clear()
                in_window.clear()
            recent.append(j)
            self.track(len(recent) + len(in_window))
        return sorted(emitted)

    def finalize(self, values):
        left = self.positions_of(values, self.child_ids[0])
        right = self.positions_of(values, self.child_ids[1])
        return self.sweep(left, right, self.order())

    def order(self):
        raise NotImplementedError


@register_reducer(FormulaKind.UNTIL)
class UntilReducer(TemporalReducer):
    def order(self):
        return self.all_positions()


@register_reducer(FormulaKind.SINCE)
class SinceReducer(TemporalReducer):
    def order(self):
        return reversed(self.all_positions())


class WindowReducer(Reducer):
    """
    Base of the aggregate reducers: walks every position of the trace, including those where no tuple was received,
    keeping only the positions whose timestamp lies in the window (τ_j - K, τ_j].
    """

    def evict(self, queue, tau):
        while queue and tau - self.timestamps[queue[0]] >= self.formula.window:
            queue.popleft()


@register_reducer(FormulaKind.COUNT)
class CountReducer(WindowReducer):
    def finalize(self, values):
        child = self.positions_of(values, self.child_ids[0])
        formula = self.formula
        window = deque()
        emitted = []
        for j in self.all_positions():
            tau = self.timestamps[j]
            if j in child:
                window.append(j)
            self.evict(window, tau)
            self.track(len(window))
            if within_guard(tau, formula.window) and formula.comparator.holds(len(window), formula.bound):
                emitted.append(j)
        return emitted


@register_reducer(FormulaKind.MAX)
class MaxReducer(WindowReducer):
    def finalize(self, values):
        child = self.positions_of(values, self.child_ids[0])
        formula = self.formula
        window = deque()
        emitted = []
        for j in self.all_positions():
            tau = self.timestamps[j]
            if j in child:
                window.append(j)
            self.evict(window, tau)
            self.track(len(window))
            if not within_guard(tau, formula.window):
                continue
            # subinterval m covers distances [m*h, (m+1)*h); the last one may be cut short by the window
            counts = Counter((tau - self.timestamps[s]) // formula.step for s in window)
            if formula.comparator.holds(max(counts.values(), default=0), formula.bound):
                emitted.append(j)
        return emitted


@register_reducer(FormulaKind.AVG_DIST)
class DistReducer(WindowReducer):
    """
    `pending` holds left positions still waiting for a right one, `matched` the complete pairs whose left position is
    in the window. `pairs` and `dist` are kept as integers so the average is compared exactly.
    """

    def finalize(self, values):
        left = self.positions_of(values, self.child_ids[0])
        right = self.positions_of(values, self.child_ids[1])
        formula = self.formula
        pending, matched = deque(), deque()
        pairs = dist = 0
        violation = None
        emitted = []
        for j in self.all_positions():
            tau = self.timestamps[j]
            if j in right:
                shared = [s for s in pending if tau - self.timestamps[s] < formula.window]
                if violation is None and len(shared) > 1:
                    violation = (j, "positions {} share the same match".format(", ".join(str(s) for s in shared)))
                for s in pending:
                    matched.append((s, j))
                    pairs += 1
                    dist += tau - self.timestamps[s]
                pending.clear()
            if j in left:
                if violation is None and j in right:
                    violation = (j, "both arguments hold at the same position")
                pending.append(j)

            while matched and tau - self.timestamps[matched[0][0]] >= formula.window:
                s, t = matched.popleft()
                pairs -= 1
                dist -= self.timestamps[t] - self.timestamps[s]
            self.evict(pending, tau)
            self.track(len(pending) + len(matched))

            if within_guard(tau, formula.window) and pairs > 0 and formula.comparator.holds(dist, formula.bound * pairs):
                emitted.append(j)

        if violation is not None:
            report_alternation_violation(formula, *violation, on_fail=self.on_alternation)
        return emitted
