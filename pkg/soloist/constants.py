# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import operator
from enum import Enum


class FailureBehaviour(Enum):
    ERROR = "error"
    WARN = "warn"


class Comparator(Enum):
    LT = "<"
    LE = "<="
    GE = ">="
    GT = ">"
    EQ = "="

    def holds(self, lhs, rhs):
        return _COMPARATOR_FUNCTIONS[self](lhs, rhs)

    def __str__(self):
        return self.value


_COMPARATOR_FUNCTIONS = {
    Comparator.LT: operator.lt,
    Comparator.LE: operator.le,
    Comparator.GE: operator.ge,
    Comparator.GT: operator.gt,
    Comparator.EQ: operator.eq,
}


class FormulaKind(Enum):
    ATOM = "atom"
    TRUE = "true"
    FALSE = "false"
    NOT = "not"
    AND = "and"
    OR = "or"
    UNTIL = "until"
    SINCE = "since"
    COUNT = "count"
    MAX = "max"
    AVG_COUNT = "avg_count"
    AVG_DIST = "avg_dist"
    # surface forms removed by rewrite_derived
    EVENTUALLY = "eventually"
    GLOBALLY = "globally"
    NEXT = "next"
    ONCE = "once"
    HISTORICALLY = "historically"
    PREVIOUS = "previous"


LEAF_KINDS = frozenset({FormulaKind.ATOM, FormulaKind.TRUE, FormulaKind.FALSE})

CORE_KINDS = frozenset(
    {
        FormulaKind.ATOM,
        FormulaKind.TRUE,
        FormulaKind.FALSE,
        FormulaKind.NOT,
        FormulaKind.AND,
        FormulaKind.OR,
        FormulaKind.UNTIL,
        FormulaKind.SINCE,
        FormulaKind.COUNT,
        FormulaKind.MAX,
        FormulaKind.AVG_DIST,
    }
)

AGGREGATE_KINDS = frozenset({FormulaKind.COUNT, FormulaKind.MAX, FormulaKind.AVG_COUNT, FormulaKind.AVG_DIST})

# Names the pseudo-atoms take in tuples and dumps.
TRUE_NAME = "true"
FALSE_NAME = "false"
