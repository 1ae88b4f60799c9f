# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """
    The summary `soloist check` prints: one `key=value` line per field. Only `wall_ms` and `per_event_us` depend on
    the machine and the number of workers. In oracle mode `iterations` is the height of the checked formula, the
    number of iterations the engine would run, and `total_tuples` is 0.
    """

    formula: str
    positions: int
    verdict: bool
    sizes: dict
    iterations: int = 0
    total_tuples: int = 0
    wall_ms: float = 0.0
    metrics: list = field(default_factory=list)
    mode: str = "engine"

    @classmethod
    def from_result(cls, trace, result):
        return cls(
            formula=str(result.table.root),
            positions=len(trace),
            verdict=result.verdict,
            sizes=result.holds.sizes(),
            iterations=result.iterations,
            total_tuples=result.total_tuples,
            wall_ms=result.wall_ms,
            metrics=result.metrics,
        )

    @classmethod
    def from_holds(cls, trace, holds, wall_ms, mode="oracle"):
        return cls(
            formula=str(holds.table.root),
            positions=len(trace),
            verdict=holds.verdict(),
            sizes=holds.sizes(),
            iterations=holds.table.height(),
            wall_ms=wall_ms,
            mode=mode,
        )

    @property
    def per_event_us(self):
        """ Processing time per time instant, in microseconds. """
        return self.wall_ms * 1000 / self.positions

    def to_lines(self):
        yield "mode={}".format(self.mode)
        yield "formula={}".format(self.formula)
        yield "positions={}".format(self.positions)
        yield "verdict={}".format("true" if self.verdict else "false")
        yield "iterations={}".format(self.iterations)
        yield "total_tuples={}".format(self.total_tuples)
        yield "wall_ms={:.3f}".format(self.wall_ms)
        yield "per_event_us={:.3f}".format(self.per_event_us)
        for formula_id in sorted(self.sizes):
            yield "holds.{}={}".format(formula_id, self.sizes[formula_id])
        for metrics in self.metrics:
            for formula_id in sorted(metrics.peak_tracked):
                yield "peak_tracked.{}={}".format(formula_id, metrics.peak_tracked[formula_id])

    def to_text(self):
        return "".join(line + "\n" for line in self.to_lines())


def metrics_lines(metrics):
    """ One `l,<mapper_in>,<intermediate>,<reducer_out>,<wall_ms>` line per iteration. """
    return [iteration.to_line() for iteration in metrics]


def parse_report(text):
    """ Read back the `key=value` lines of a report into a dict of strings. """
    return dict(line.split("=", 1) for line in text.splitlines() if line)
