# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import io
import logging
import random
import re
import warnings
from collections.abc import Mapping
from dataclasses import dataclass

from soloist.constants import FailureBehaviour
from soloist.exceptions import (
    AlternationError,
    AlternationWarning,
    GeneratorParameterError,
    TraceFormatError,
    TraceValidationError,
)


logger = logging.getLogger(__name__)


ATOM_REGEX = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
NATURAL_REGEX = re.compile(r"^[0-9]+$")


@dataclass(frozen=True)
class TraceEntry:
    position: int
    timestamp: int
    atoms: frozenset

    def to_line(self):
        return "{},{},{}".format(self.position, self.timestamp, ";".join(sorted(self.atoms)))


class Trace:
    """
    A finite timed word: entries at positions 1..H with strictly increasing timestamps. Validated on construction
    and never modified afterwards.
    """

    def __init__(self, entries):
        self.entries = tuple(entries)
        validate_entries(self.entries)
        self.timestamps = tuple(entry.timestamp for entry in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, position):
        return self.entries[position - 1]

    def __eq__(self, other):
        return isinstance(other, Trace) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def timestamp(self, position):
        return self.timestamps[position - 1]

    def fragments(self, count):
        """ Split the trace into at most `count` contiguous slices of entries. """
        count = max(1, min(count, len(self.entries)))
        size, extra = divmod(len(self.entries), count)
        start = 0
        for index in range(count):
            end = start + size + (1 if index < extra else 0)
            yield self.entries[start:end]
            start = end


def validate_entries(entries):
    if not entries:
        raise TraceValidationError("A trace needs at least one entry")
    previous = None
    for expected, entry in enumerate(entries, start=1):
        if entry.position != expected:
            if expected == 1:
                raise TraceValidationError("Positions must start at 1, found {}".format(entry.position))
            raise TraceValidationError(
                "Positions must be consecutive: expected {} but found {}".format(expected, entry.position)
            )
        if entry.timestamp < 1:
            raise TraceValidationError("Timestamp at position {} must be at least 1".format(entry.position))
        if previous is not None and entry.timestamp <= previous.timestamp:
            raise TraceValidationError(
                "Timestamps must increase strictly: position {} has {} after {}".format(
                    entry.position, entry.timestamp, previous.timestamp
                )
            )
        if not entry.atoms:
            raise TraceValidationError("Position {} has no atoms".format(entry.position))
        previous = entry


class TimestampMap(Mapping):
    """
    The read-only association position -> timestamp shared by every reducer.
    """

    def __init__(self, timestamps):
        self._timestamps = tuple(timestamps)

    def __getitem__(self, position):
        if not 1 <= position <= len(self._timestamps):
            raise KeyError(position)
        return self._timestamps[position - 1]

    def __iter__(self):
        return iter(range(1, len(self._timestamps) + 1))

    def __len__(self):
        return len(self._timestamps)

    def size(self):
        return len(self._timestamps)


def timestamp_map(trace):
    return TimestampMap(trace.timestamps)


def parse_line(line, line_number):
    parts = line.split(",")
    if len(parts) != 3:
        raise TraceFormatError("expected <position>,<timestamp>,<atoms>", line_number)
    position, timestamp, atoms = parts
    if not NATURAL_REGEX.match(position) or not NATURAL_REGEX.match(timestamp):
        raise TraceFormatError("position and timestamp must be natural numbers", line_number)
    names = atoms.split(";")
    for name in names:
        if not ATOM_REGEX.match(name):
            raise TraceFormatError("invalid atom name {!r}".format(name), line_number)
    return TraceEntry(int(position), int(timestamp), frozenset(names))


def load_trace(source):
    """
    Read a trace in the line format `<position>,<timestamp>,<atom>(;<atom>)*`. `source` is a binary stream holding
    UTF-8 text; lines starting with # are comments.
    """
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    try:
        text = io.TextIOWrapper(source, encoding="utf-8", newline=None)
        entries = []
        for line_number, line in enumerate(text, start=1):
            line = line.rstrip("\n")
            if line.startswith("#"):
                continue
            if not line.strip():
                raise TraceFormatError("empty line", line_number)
            entries.append(parse_line(line, line_number))
        text.detach()
    except UnicodeDecodeError as e:
        raise TraceFormatError("trace is not valid UTF-8: {}".format(e))
    trace = Trace(entries)
    logger.debug("Loaded a trace of %d entries", len(trace))
    return trace


def load_trace_file(path):
    with open(path, "rb") as fh:
        return load_trace(fh)


def save_trace(trace, target):
    """ Write `trace` to a binary stream in the format read by load_trace. """
    for entry in trace:
        target.write((entry.to_line() + "\n").encode("utf-8"))


def generate_random_trace(seed, length, atom_universe_size, max_atoms_per_instant, max_gap, atom_prefix="a"):
    """
    Generate a trace whose atom sets are drawn uniformly from `atom_prefix`0 .. `atom_prefix`{universe-1}, with
    between 1 and `max_atoms_per_instant` atoms per entry and timestamp gaps drawn uniformly from 1..max_gap.
    """
    if length < 1:
        raise GeneratorParameterError("Trace length must be at least 1")
    if not 1 <= max_atoms_per_instant <= atom_universe_size:
        raise GeneratorParameterError(
            "Atoms per instant must lie between 1 and the universe size ({})".format(atom_universe_size)
        )
    if max_gap < 1:
        raise GeneratorParameterError("The maximum timestamp gap must be at least 1")

    rng = random.Random(seed)
    universe = ["{}{}".format(atom_prefix, index) for index in range(atom_universe_size)]
    entries = []
    timestamp = 0
    for position in range(1, length + 1):
        timestamp += rng.randint(1, max_gap)
        size = rng.randint(1, max_atoms_per_instant)
        entries.append(TraceEntry(position, timestamp, frozenset(rng.sample(universe, size))))
    return Trace(entries)


def report_alternation_violation(formula, position, reason, on_fail=FailureBehaviour.WARN):
    """
    The average distance modality assumes its two arguments hold in alternation. A violation does not change the
    result, it is only reported, or raised when `on_fail` is ERROR.
    """
    message = "{} at position {}: {}".format(formula, position, reason)
    if on_fail == FailureBehaviour.ERROR:
        raise AlternationError(message)
    logger.warning("Alternation violated by %s", message)
    warnings.warn(message, AlternationWarning, stacklevel=2)
