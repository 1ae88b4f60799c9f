# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from soloist.constants import Comparator, FailureBehaviour, FormulaKind
from soloist.decorators import register_reducer
from soloist.engine import run_check
from soloist.formula import FormulaTable, build_table, rewrite_derived
from soloist.oracle import eval_at, eval_positions
from soloist.parser import parse_formula
from soloist.trace import generate_random_trace, load_trace, load_trace_file, save_trace, timestamp_map

__all__ = [
    "Comparator",
    "FailureBehaviour",
    "FormulaKind",
    "FormulaTable",
    "build_table",
    "eval_at",
    "eval_positions",
    "generate_random_trace",
    "load_trace",
    "load_trace_file",
    "parse_formula",
    "register_reducer",
    "rewrite_derived",
    "run_check",
    "save_trace",
    "timestamp_map",
]
