# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging
import time
import warnings

from django.core.management.base import BaseCommand, CommandError

from soloist import conf
from soloist.engine import run_check
from soloist.exceptions import AlternationWarning, SoloistError
from soloist.formula import build_table, rewrite_derived
from soloist.oracle import eval_positions
from soloist.parser import parse_formula
from soloist.report import CheckReport, metrics_lines
from soloist.trace import load_trace_file


logger = logging.getLogger(__name__)


def read_formula(value):
    """ A formula given as `@path` is read from that file. """
    if value.startswith("@"):
        with open(value[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return value


def write_lines(path, lines):
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")


class Command(BaseCommand):
    help = "Check a formula on a trace. Exits 0 when it holds at the first position, 1 when it does not."

    def add_arguments(self, parser):
        parser.add_argument("--trace", required=True, help="Trace file")
        parser.add_argument("--formula", required=True, help="Formula, or @path to a file holding one")
        parser.add_argument("--workers", type=int, default=None, help="Reducer slots and reader fragments")
        parser.add_argument("--emit-all", dest="emit_all", default=None, help="Write every holds-set to this file")
        parser.add_argument("--metrics", default=None, help="Write per-iteration metrics to this file")
        parser.add_argument("--oracle", action="store_true", help="Evaluate with the sequential oracle instead")
        parser.add_argument(
            "--dump-intermediate", dest="dump_intermediate", default=None, help="Write every intermediate tuple here"
        )

    def handle(self, *args, **options):
        workers = options["workers"]
        if workers is not None and workers < 1:
            raise CommandError("--workers must be at least 1", returncode=2)

        try:
            formula = parse_formula(read_formula(options["formula"]))
            trace = load_trace_file(options["trace"])
            report, holds, metrics = self.evaluate(trace, formula, workers, options)
        except (SoloistError, OSError) as e:
            raise CommandError(str(e), returncode=2)

        try:
            if options["emit_all"]:
                write_lines(options["emit_all"], holds.to_lines())
            if options["metrics"]:
                write_lines(options["metrics"], metrics_lines(metrics))
        except OSError as e:
            raise CommandError(str(e), returncode=2)

        self.stdout.write(report.to_text(), ending="")
        if not report.verdict:
            raise CommandError("{} does not hold at position 1".format(report.formula), returncode=1)

    def evaluate(self, trace, formula, workers, options):
        if options["oracle"]:
            started = time.perf_counter()
            holds = eval_positions(trace, build_table(rewrite_derived(formula)), conf.on_alternation())
            wall_ms = (time.perf_counter() - started) * 1000
            return CheckReport.from_holds(trace, holds, wall_ms), holds, []

        with warnings.catch_warnings():
            # already logged by the reducer
            warnings.simplefilter("ignore", AlternationWarning)
            result = run_check(trace, formula, workers=workers, dump_intermediate=options["dump_intermediate"])
        return CheckReport.from_result(trace, result), result.holds, result.metrics
