# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import io
import os
import tempfile
import warnings

from django.test import SimpleTestCase
from hypothesis import given

from soloist import formula as f
from soloist.constants import FailureBehaviour
from soloist.exceptions import (
    AlternationError,
    AlternationWarning,
    GeneratorParameterError,
    TraceFormatError,
    TraceValidationError,
)
from soloist.testing import trace_t1
from soloist.trace import (
    Trace,
    TraceEntry,
    generate_random_trace,
    load_trace,
    load_trace_file,
    report_alternation_violation,
    save_trace,
    timestamp_map,
)

from test_app.strategies import traces


class TestLoadTrace(SimpleTestCase):
    def test_load_valid_trace(self):
        """
        Given the text 1,1,a / 2,3,a;b
        When  it is loaded
        Then  a trace of two entries is returned with the atoms as written
        """
        trace = load_trace(io.BytesIO(b"1,1,a\n2,3,a;b\n"))
        self.assertEqual(len(trace), 2)
        self.assertEqual(trace[1], TraceEntry(1, 1, frozenset({"a"})))
        self.assertEqual(trace[2], TraceEntry(2, 3, frozenset({"a", "b"})))

    def test_comment_lines_are_ignored(self):
        trace = load_trace(io.BytesIO(b"# generated\n1,1,a\n# middle\n2,4,b\n"))
        self.assertEqual(len(trace), 2)

    def test_missing_final_newline(self):
        self.assertEqual(len(load_trace(io.BytesIO(b"1,1,a\n2,3,b"))), 2)

    def test_timestamps_must_increase(self):
        """
        Given two entries with the same timestamp
        When  the trace is loaded
        Then  a TraceValidationError is raised
        """
        with self.assertRaises(TraceValidationError):
            load_trace(io.BytesIO(b"1,5,a\n2,5,b\n"))

    def test_positions_must_start_at_one(self):
        with self.assertRaisesMessage(TraceValidationError, "start at 1"):
            load_trace(io.BytesIO(b"2,1,a\n"))

    def test_positions_must_be_consecutive(self):
        with self.assertRaisesMessage(TraceValidationError, "consecutive"):
            load_trace(io.BytesIO(b"1,1,a\n3,2,a\n"))

    def test_empty_atom_list(self):
        with self.assertRaises(TraceFormatError):
            load_trace(io.BytesIO(b"1,1,\n"))

    def test_trailing_separator(self):
        with self.assertRaises(TraceFormatError):
            load_trace(io.BytesIO(b"1,1,a;\n"))

    def test_malformed_line_reports_line_number(self):
        with self.assertRaises(TraceFormatError) as cm:
            load_trace(io.BytesIO(b"1,1,a\n2;3;b\n"))
        self.assertEqual(cm.exception.line_number, 2)

    def test_invalid_atom_name(self):
        with self.assertRaises(TraceFormatError):
            load_trace(io.BytesIO(b"1,1,9lives\n"))

    def test_empty_trace(self):
        with self.assertRaises(TraceValidationError):
            load_trace(io.BytesIO(b"# nothing\n"))

    def test_not_utf8(self):
        with self.assertRaises(TraceFormatError):
            load_trace(io.BytesIO(b"1,1,\xff\n"))

    def test_load_trace_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "t1.log")
            with open(path, "wb") as fh:
                save_trace(trace_t1(), fh)
            self.assertEqual(load_trace_file(path), trace_t1())

    @given(traces())
    def test_save_then_load_is_identity(self, trace):
        """
        Given any valid trace
        When  it is saved and loaded again
        Then  the same trace comes back
        """
        buffer = io.BytesIO()
        save_trace(trace, buffer)
        buffer.seek(0)
        self.assertEqual(load_trace(buffer), trace)


class TestTimestampMap(SimpleTestCase):
    def test_t1(self):
        """
        Given T1
        When  its timestamp map is taken
        Then  it maps 1..5 to 1, 3, 6, 10, 12
        """
        timestamps = timestamp_map(trace_t1())
        self.assertEqual(dict(timestamps), {1: 1, 2: 3, 3: 6, 4: 10, 5: 12})
        self.assertEqual(timestamps.size(), 5)

    def test_single_entry(self):
        timestamps = timestamp_map(Trace([TraceEntry(1, 7, frozenset({"a"}))]))
        self.assertEqual(dict(timestamps), {1: 7})

    def test_outside_the_trace(self):
        timestamps = timestamp_map(trace_t1())
        with self.assertRaises(KeyError):
            timestamps[0]
        with self.assertRaises(KeyError):
            timestamps[6]


class TestGenerateRandomTrace(SimpleTestCase):
    def test_deterministic(self):
        """
        Given the same seed and parameters
        When  two traces are generated
        Then  they are identical
        """
        first = generate_random_trace(7, 3, 5, 2, 4)
        second = generate_random_trace(7, 3, 5, 2, 4)
        self.assertEqual(first, second)

    def test_respects_parameters(self):
        trace = generate_random_trace(11, 500, 10, 3, 5)
        self.assertEqual(len(trace), 500)
        previous = 0
        for entry in trace:
            self.assertTrue(1 <= entry.timestamp - previous <= 5)
            self.assertTrue(1 <= len(entry.atoms) <= 3)
            self.assertTrue(entry.atoms <= {"a{}".format(i) for i in range(10)})
            previous = entry.timestamp

    def test_invalid_parameters(self):
        for args in [(1, 0, 5, 1, 1), (1, 5, 5, 0, 1), (1, 5, 5, 6, 1), (1, 5, 5, 1, 0)]:
            with self.subTest(args=args), self.assertRaises(GeneratorParameterError):
                generate_random_trace(*args)

    def test_fragments_cover_the_trace(self):
        trace = generate_random_trace(3, 10, 4, 2, 3)
        fragments = list(trace.fragments(3))
        self.assertEqual(len(fragments), 3)
        self.assertEqual([entry for fragment in fragments for entry in fragment], list(trace))
        self.assertEqual(len(list(trace.fragments(50))), 10)


class TestReportAlternationViolation(SimpleTestCase):
    def test_warn(self):
        """
        Given the WARN behaviour
        When  a violation is reported
        Then  it is logged and an AlternationWarning is issued
        """
        formula = f.avg_dist("<", 3, 12, f.atom("req"), f.atom("res"))
        with self.assertLogs("soloist.trace", level="WARNING"), warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report_alternation_violation(formula, 4, "both arguments hold at the same position")
        self.assertTrue(any(issubclass(w.category, AlternationWarning) for w in caught))

    def test_error(self):
        formula = f.avg_dist("<", 3, 12, f.atom("req"), f.atom("res"))
        with self.assertRaises(AlternationError):
            report_alternation_violation(formula, 4, "reason", on_fail=FailureBehaviour.ERROR)
