# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging
from dataclasses import dataclass, field, replace

from soloist.constants import (
    AGGREGATE_KINDS,
    CORE_KINDS,
    FALSE_NAME,
    LEAF_KINDS,
    TRUE_NAME,
    Comparator,
    FormulaKind,
)
from soloist.exceptions import EmptyIntervalError, FormulaArityError, InvalidBoundsError, NotCoreFormulaError


logger = logging.getLogger(__name__)


def _check_natural(value, what):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidBoundsError("{} must be a natural number, got {!r}".format(what, value))


@dataclass(frozen=True)
class Interval:
    """
    A nonempty interval over the naturals, measured in time units. `hi` is None for an unbounded interval, which is
    always open on the right.
    """

    lo: int
    hi: int = None
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        _check_natural(self.lo, "Interval lower bound")
        if self.hi is None:
            if self.hi_closed:
                raise EmptyIntervalError("An unbounded interval cannot be closed on the right")
            return
        _check_natural(self.hi, "Interval upper bound")
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise EmptyIntervalError("Interval {} is empty".format(self))

    def lower_reached(self, distance):
        if self.lo_closed:
            return distance >= self.lo
        return distance > self.lo

    def upper_exceeded(self, distance):
        """ True once `distance` lies beyond the right end; it then stays beyond for every larger distance. """
        if self.hi is None:
            return False
        if self.hi_closed:
            return distance > self.hi
        return distance >= self.hi

    def contains(self, distance):
        return self.lower_reached(distance) and not self.upper_exceeded(distance)

    def __str__(self):
        return "{}{},{}{}".format(
            "[" if self.lo_closed else "(",
            self.lo,
            "inf" if self.hi is None else self.hi,
            "]" if self.hi_closed else ")",
        )


_ARITY = {
    FormulaKind.ATOM: (0, 0),
    FormulaKind.TRUE: (0, 0),
    FormulaKind.FALSE: (0, 0),
    FormulaKind.NOT: (1, 1),
    FormulaKind.AND: (2, None),
    FormulaKind.OR: (2, None),
    FormulaKind.UNTIL: (2, 2),
    FormulaKind.SINCE: (2, 2),
    FormulaKind.COUNT: (1, 1),
    FormulaKind.MAX: (1, 1),
    FormulaKind.AVG_COUNT: (1, 1),
    FormulaKind.AVG_DIST: (2, 2),
    FormulaKind.EVENTUALLY: (1, 1),
    FormulaKind.GLOBALLY: (1, 1),
    FormulaKind.NEXT: (1, 1),
    FormulaKind.ONCE: (1, 1),
    FormulaKind.HISTORICALLY: (1, 1),
    FormulaKind.PREVIOUS: (1, 1),
}

_PREFIX_SYMBOLS = {
    FormulaKind.EVENTUALLY: "F",
    FormulaKind.GLOBALLY: "G",
    FormulaKind.NEXT: "X",
    FormulaKind.ONCE: "P",
    FormulaKind.HISTORICALLY: "H",
    FormulaKind.PREVIOUS: "Y",
}

_AGGREGATE_SYMBOLS = {
    FormulaKind.COUNT: "C",
    FormulaKind.MAX: "M",
    FormulaKind.AVG_COUNT: "A",
    FormulaKind.AVG_DIST: "D",
}


@dataclass(frozen=True)
class Formula:
    """
    A node of a SOLOIST formula. Nodes are immutable and compare structurally, so equal subformulae collapse to one
    entry of a FormulaTable wherever they occur. `bound`, `window` and `step` hold n, K and h of the aggregates.
    """

    kind: FormulaKind
    children: tuple = ()
    name: str = None
    interval: Interval = None
    comparator: Comparator = None
    bound: int = None
    window: int = None
    step: int = None
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        low, high = _ARITY[self.kind]
        arity = len(self.children)
        if arity < low or (high is not None and arity > high):
            raise FormulaArityError("{} takes {} operand(s), got {}".format(self.kind.value, low, arity))
        if self.kind in (FormulaKind.AND, FormulaKind.OR) and len(set(self.children)) != arity:
            raise FormulaArityError("Operands of {} must be pairwise distinct".format(self.kind.value))
        object.__setattr__(
            self,
            "_hash",
            hash((self.kind, self.children, self.name, self.interval, self.comparator, self.bound, self.window, self.step)),
        )

    def __hash__(self):
        return self._hash

    @property
    def is_leaf(self):
        return self.kind in LEAF_KINDS

    @property
    def is_core(self):
        return self.kind in CORE_KINDS

    def walk(self):
        """ Yield every node of the formula, children before their parents. """
        for child in self.children:
            yield from child.walk()
        yield self

    def _operand(self):
        if self.is_leaf or self.kind in AGGREGATE_KINDS or self.kind in _PREFIX_SYMBOLS or self.kind == FormulaKind.NOT:
            return str(self)
        return "({})".format(self)

    def __str__(self):
        kind = self.kind
        if kind == FormulaKind.ATOM:
            return self.name
        if kind == FormulaKind.TRUE:
            return TRUE_NAME
        if kind == FormulaKind.FALSE:
            return FALSE_NAME
        if kind == FormulaKind.NOT:
            return "!" + self.children[0]._operand()
        if kind in (FormulaKind.AND, FormulaKind.OR):
            joiner = " & " if kind == FormulaKind.AND else " | "
            return joiner.join(child._operand() for child in self.children)
        if kind in (FormulaKind.UNTIL, FormulaKind.SINCE):
            symbol = "U" if kind == FormulaKind.UNTIL else "S"
            return "{} {}{} {}".format(self.children[0]._operand(), symbol, self.interval, self.children[1]._operand())
        if kind in _PREFIX_SYMBOLS:
            return "{}{} {}".format(_PREFIX_SYMBOLS[kind], self.interval, self.children[0]._operand())
        params = [str(self.bound), str(self.window)]
        if kind in (FormulaKind.MAX, FormulaKind.AVG_COUNT):
            params.append(str(self.step))
        return "{}[{}{}]({})".format(
            _AGGREGATE_SYMBOLS[kind], self.comparator, ",".join(params), ",".join(str(c) for c in self.children)
        )


# Constructors. These normalise and validate; build formulae through them rather than through Formula directly.


def atom(name):
    return Formula(FormulaKind.ATOM, name=name)


TRUE = Formula(FormulaKind.TRUE)
FALSE = Formula(FormulaKind.FALSE)


def negation(child):
    return Formula(FormulaKind.NOT, (child,))


def _nary(kind, operands):
    unique = []
    for operand in operands:
        if operand not in unique:
            unique.append(operand)
    if not unique:
        raise FormulaArityError("{} needs at least one operand".format(kind.value))
    if len(unique) == 1:
        return unique[0]
    return Formula(kind, tuple(sorted(unique, key=str)))


def conjunction(*operands):
    return _nary(FormulaKind.AND, operands)


def disjunction(*operands):
    return _nary(FormulaKind.OR, operands)


def until(interval, left, right):
    return Formula(FormulaKind.UNTIL, (left, right), interval=interval)


def since(interval, left, right):
    return Formula(FormulaKind.SINCE, (left, right), interval=interval)


def _aggregate(kind, comparator, bound, window, children, step=None):
    _check_natural(bound, "Bound n")
    _check_natural(window, "Window K")
    if kind in (FormulaKind.MAX, FormulaKind.AVG_COUNT):
        _check_natural(step, "Subinterval h")
        if step < 1:
            raise InvalidBoundsError("Subinterval h must be at least 1")
        if window < step:
            raise InvalidBoundsError("Window K={} is shorter than subinterval h={}".format(window, step))
    return Formula(kind, tuple(children), comparator=Comparator(comparator), bound=bound, window=window, step=step)


def count(comparator, bound, window, child):
    return _aggregate(FormulaKind.COUNT, comparator, bound, window, (child,))


def max_count(comparator, bound, window, step, child):
    return _aggregate(FormulaKind.MAX, comparator, bound, window, (child,), step=step)


def avg_count(comparator, bound, window, step, child):
    return _aggregate(FormulaKind.AVG_COUNT, comparator, bound, window, (child,), step=step)


def avg_dist(comparator, bound, window, left, right):
    return _aggregate(FormulaKind.AVG_DIST, comparator, bound, window, (left, right))


def prefix(kind, interval, child):
    if kind not in _PREFIX_SYMBOLS:
        raise FormulaArityError("{} is not a prefix temporal operator".format(kind.value))
    return Formula(kind, (child,), interval=interval)


def rewrite_derived(formula, _memo=None):
    """
    Rewrite the surface forms F, G, X, P, H, Y and the average count modality into the core connectives. Formulae
    already in the core are returned unchanged.
    """
    memo = {} if _memo is None else _memo
    if formula in memo:
        return memo[formula]
    if formula.is_leaf:
        return formula

    children = tuple(rewrite_derived(child, memo) for child in formula.children)
    kind = formula.kind
    if kind == FormulaKind.EVENTUALLY:
        result = until(formula.interval, TRUE, children[0])
    elif kind == FormulaKind.GLOBALLY:
        result = negation(until(formula.interval, TRUE, negation(children[0])))
    elif kind == FormulaKind.NEXT:
        result = until(formula.interval, FALSE, children[0])
    elif kind == FormulaKind.ONCE:
        result = since(formula.interval, TRUE, children[0])
    elif kind == FormulaKind.HISTORICALLY:
        result = negation(since(formula.interval, TRUE, negation(children[0])))
    elif kind == FormulaKind.PREVIOUS:
        result = since(formula.interval, FALSE, children[0])
    elif kind == FormulaKind.AVG_COUNT:
        subintervals = formula.window // formula.step
        result = count(formula.comparator, formula.bound * subintervals, subintervals * formula.step, children[0])
    elif kind == FormulaKind.AND:
        result = conjunction(*children)
    elif kind == FormulaKind.OR:
        result = disjunction(*children)
    elif children == formula.children:
        result = formula
    else:
        result = replace(formula, children=children)

    memo[formula] = result
    return result


class FormulaTable:
    """
    The subformula lattice of a core formula. Every distinct subformula gets an integer id, assigned in post-order so
    children always have smaller ids than their parents and the numbering only depends on the root.
    """

    def __init__(self, root):
        self.root = root
        self._formulae = []
        self._ids = {}
        self._sub_d = []
        self._heights = []
        for node in root.walk():
            if node in self._ids:
                continue
            if not node.is_core:
                raise NotCoreFormulaError(
                    "Formula contains the derived form {}; call rewrite_derived first".format(node.kind.value)
                )
            direct = []
            for child in node.children:
                child_id = self._ids[child]
                if child_id not in direct:
                    direct.append(child_id)
            self._ids[node] = len(self._formulae)
            self._formulae.append(node)
            self._sub_d.append(tuple(direct))
            self._heights.append(1 + max(self._heights[c] for c in direct) if direct else 0)

        sup = [[] for _ in self._formulae]
        for parent_id, direct in enumerate(self._sub_d):
            for child_id in direct:
                sup[child_id].append(parent_id)
        self._sup = [tuple(parents) for parents in sup]
        self.root_id = self._ids[root]
        self.atoms = frozenset(f.name for f in self._formulae if f.kind == FormulaKind.ATOM)

    def __len__(self):
        return len(self._formulae)

    def __iter__(self):
        return iter(range(len(self._formulae)))

    def __contains__(self, formula):
        return formula in self._ids

    def formula(self, formula_id):
        return self._formulae[formula_id]

    def id_of(self, formula):
        return self._ids[formula]

    def sub_d(self, formula_id):
        return self._sub_d[formula_id]

    def sup(self, formula_id):
        return self._sup[formula_id]

    def height(self, formula_id=None):
        return self._heights[self.root_id if formula_id is None else formula_id]

    def subformulae(self):
        """ Ids of sub(Φ): every subformula except the root itself. """
        return [formula_id for formula_id in self if formula_id != self.root_id]

    def leaves(self):
        return [formula_id for formula_id in self if self._heights[formula_id] == 0]

    def at_height(self, level):
        return [formula_id for formula_id in self if self._heights[formula_id] == level]

    def leaf_id(self, kind, name=None):
        """ Id of an atom or pseudo-atom leaf, or None when Φ does not mention it. """
        return self._ids.get(Formula(kind, name=name))


def build_table(formula):
    table = FormulaTable(formula)
    logger.debug("Formula %s has %d distinct subformulae and height %d", formula, len(table), table.height())
    return table
