# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from operator import attrgetter
from typing import NamedTuple

from soloist import conf
from soloist.constants import FormulaKind
from soloist.formula import build_table, rewrite_derived
from soloist.oracle import HoldsSet
from soloist.reducer_controller import ReducerController, build_reducer
from soloist.reducers import HoldsTuple
from soloist.trace import TimestampMap


logger = logging.getLogger(__name__)


class CompositeKey(NamedTuple):
    """ Groups are formed on the superformula only; the position orders the values inside a group. """

    superformula_id: int
    position: int


class IntermediateTuple(NamedTuple):
    key: CompositeKey
    value: HoldsTuple

    def to_line(self):
        return "{},{},{}".format(self.key.superformula_id, self.key.position, self.value.formula_id)


@dataclass
class IterationMetrics:
    level: int
    mapper_in: int = 0
    intermediate: int = 0
    reducer_out: int = 0
    wall_ms: float = 0.0
    # formula id -> largest number of positions a windowed reducer held at once
    peak_tracked: dict = field(default_factory=dict)

    def to_line(self):
        return "{},{},{},{},{:.3f}".format(self.level, self.mapper_in, self.intermediate, self.reducer_out, self.wall_ms)


@dataclass
class CheckResult:
    table: object
    holds: HoldsSet
    metrics: list
    wall_ms: float = 0.0

    @property
    def verdict(self):
        return self.holds.verdict()

    @property
    def iterations(self):
        return len(self.metrics)

    @property
    def total_tuples(self):
        return sum(metrics.mapper_in for metrics in self.metrics)


def input_reader(fragment, table):
    """
    Read a contiguous slice of trace entries. Returns the tuples of the atoms Φ mentions, plus the true pseudo-atom at
    every position when Φ uses it, and the timestamps of the slice.
    """
    true_id = table.leaf_id(FormulaKind.TRUE)
    tuples = []
    timestamps = {}
    for entry in fragment:
        timestamps[entry.position] = entry.timestamp
        for name in sorted(entry.atoms & table.atoms):
            tuples.append(HoldsTuple(table.leaf_id(FormulaKind.ATOM, name), entry.position))
        if true_id is not None:
            tuples.append(HoldsTuple(true_id, entry.position))
    return tuples, timestamps


def map_lift(holds_tuple, table, level=None):
    """
    Lift (φ, i) to ((ψ, i), (φ, i)) for every direct superformula ψ of φ. Tuples of Φ itself have nowhere to go and
    produce nothing. `level` is accepted for symmetry with the reducers; lifting does not depend on it.
    """
    return [
        IntermediateTuple(CompositeKey(parent_id, holds_tuple.position), holds_tuple)
        for parent_id in table.sup(holds_tuple.formula_id)
    ]


def shuffle(intermediate, workers, groups=()):
    """
    Partition intermediate tuples by superformula over min(groups, workers) slots and sort every group by position.
    The sort is stable, so tuples with the same key keep their arrival order. `groups` names superformulae that get
    a group even when no tuple arrives for them.

    Returns a list of slots, each a dict superformula id -> list of values.
    """
    grouped = {superformula_id: [] for superformula_id in groups}
    for item in sorted(intermediate, key=attrgetter("key")):
        grouped.setdefault(item.key.superformula_id, []).append(item.value)

    slot_count = max(1, min(len(grouped), workers))
    slots = [{} for _ in range(slot_count)]
    for superformula_id in sorted(grouped):
        slots[superformula_id % slot_count][superformula_id] = grouped[superformula_id]
    return slots


def _reduce_slot(slot, table, timestamps, level, on_alternation):
    outputs = []
    peaks = {}
    for superformula_id, values in slot.items():
        reducer = build_reducer(table, superformula_id, timestamps, on_alternation=on_alternation)
        outputs.extend(reducer(values, level))
        if reducer.peak_tracked:
            peaks[superformula_id] = reducer.peak_tracked
    return outputs, peaks


def _chunks(items, count):
    size = max(1, -(-len(items) // count))
    return [items[start:start + size] for start in range(0, len(items), size)]


class Engine:
    """
    Runs the iterations of one check. Iteration l lifts the current tuples, shuffles them and reduces every group;
    formulae of height l are finished at the end of iteration l.
    """

    def __init__(self, trace, table, workers=1, on_alternation=None, dump=None):
        self.trace = trace
        self.table = table
        self.workers = workers
        self.on_alternation = on_alternation or conf.on_alternation()
        self.dump = dump
        self.executor = None

    def _map(self, function, items):
        if self.executor is None:
            return [function(item) for item in items]
        return list(self.executor.map(function, items))

    def read(self):
        results = self._map(lambda fragment: input_reader(fragment, self.table), list(self.trace.fragments(self.workers)))
        tuples = []
        timestamps = {}
        for fragment_tuples, fragment_timestamps in results:
            tuples.extend(fragment_tuples)
            timestamps.update(fragment_timestamps)
        return tuples, TimestampMap(timestamps[position] for position in sorted(timestamps))

    def iterate(self, level, inputs, timestamps):
        metrics = IterationMetrics(level=level, mapper_in=len(inputs))
        started = time.perf_counter()

        lifted = self._map(
            lambda chunk: [item for holds_tuple in chunk for item in map_lift(holds_tuple, self.table, level)],
            _chunks(inputs, self.workers),
        )
        intermediate = [item for chunk in lifted for item in chunk]
        metrics.intermediate = len(intermediate)
        if self.dump is not None:
            for item in sorted(intermediate):
                self.dump.write(item.to_line() + "\n")

        slots = shuffle(intermediate, self.workers, groups=self.table.at_height(level))
        reduced = self._map(
            lambda slot: _reduce_slot(slot, self.table, timestamps, level, self.on_alternation), slots
        )
        outputs = []
        for slot_outputs, peaks in reduced:
            outputs.extend(slot_outputs)
            metrics.peak_tracked.update(peaks)
        metrics.reducer_out = len(outputs)
        metrics.wall_ms = (time.perf_counter() - started) * 1000
        logger.info(
            "Iteration %d: %d mapper inputs, %d intermediate tuples, %d reducer outputs in %.1f ms",
            level,
            metrics.mapper_in,
            metrics.intermediate,
            metrics.reducer_out,
            metrics.wall_ms,
        )
        return sorted(set(outputs)), metrics

    def run(self):
        started = time.perf_counter()
        if self.workers > 1:
            self.executor = ThreadPoolExecutor(max_workers=self.workers)
        try:
            tuples, timestamps = self.read()
            positions = defaultdict(set)
            for holds_tuple in tuples:
                positions[holds_tuple.formula_id].add(holds_tuple.position)

            metrics = []
            for level in range(1, self.table.height() + 1):
                tuples, iteration_metrics = self.iterate(level, tuples, timestamps)
                metrics.append(iteration_metrics)
                for holds_tuple in tuples:
                    if self.table.height(holds_tuple.formula_id) == level:
                        positions[holds_tuple.formula_id].add(holds_tuple.position)
        finally:
            if self.executor is not None:
                self.executor.shutdown()
                self.executor = None

        wall_ms = (time.perf_counter() - started) * 1000
        return CheckResult(table=self.table, holds=HoldsSet(self.table, positions), metrics=metrics, wall_ms=wall_ms)


def run_check(trace, formula, workers=None, dump_intermediate=None, on_alternation=None):
    """
    Check `formula` on `trace` with h(Φ) map-shuffle-reduce iterations. Derived forms are rewritten into the core
    first. The result does not depend on the number of workers.

    `dump_intermediate` is a path; when given, every intermediate tuple is written there as
    `<superformula-id>,<position>,<subformula-id>`.
    """
    ReducerController().check_complete()
    workers = workers or conf.workers()
    dump_path = dump_intermediate or conf.dump_intermediate()
    table = build_table(rewrite_derived(formula))
    logger.info("Checking %s over %d positions with %d worker(s)", table.root, len(trace), workers)

    if dump_path is None:
        return Engine(trace, table, workers, on_alternation).run()
    with open(dump_path, "w", encoding="utf-8") as dump:
        return Engine(trace, table, workers, on_alternation, dump=dump).run()
