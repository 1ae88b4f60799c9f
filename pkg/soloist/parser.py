# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging

from lark import Lark, Token
from lark.exceptions import UnexpectedInput
from lark.visitors import Interpreter

from soloist import formula as f
from soloist.constants import FormulaKind
from soloist.exceptions import FormulaSyntaxError


logger = logging.getLogger(__name__)


# Prefix operators bind tightest, then U and S (right associative), then & and finally |. Chains of & or | become a
# single n-ary node; a parenthesised operand stays a node of its own. Keywords cannot be used as atom names.
GRAMMAR = r"""
    ?start: expr

    ?expr: quantified
         | disjunction

    quantified: "forall" NAME "in" index ".." index ":" expr -> forall
              | "exists" NAME "in" index ".." index ":" expr -> exists

    ?disjunction: conjunction
                | conjunction ("|" conjunction)+ -> or_chain

    ?conjunction: temporal
                | temporal ("&" temporal)+ -> and_chain

    ?temporal: unary
             | unary "U" interval temporal -> until
             | unary "S" interval temporal -> since

    ?unary: "!" unary -> negation
          | "F" interval unary -> eventually
          | "G" interval unary -> globally
          | "X" interval unary -> next_time
          | "P" interval unary -> once
          | "H" interval unary -> historically
          | "Y" interval unary -> previous
          | aggregate
          | primary

    aggregate: "C" "[" COMPARATOR INT "," INT "]" "(" expr ")" -> count
             | "M" "[" COMPARATOR INT "," INT "," INT "]" "(" expr ")" -> max_count
             | "A" "[" COMPARATOR INT "," INT "," INT "]" "(" expr ")" -> avg_count
             | "D" "[" COMPARATOR INT "," INT "]" "(" expr "," expr ")" -> avg_dist

    ?primary: atom
            | "true" -> true
            | "false" -> false
            | "(" expr ")"

    atom: NAME ("{" index ("," index)* "}")?

    index: NAME -> index_var
         | NAME "+" INT -> index_plus
         | NAME "-" INT -> index_minus
         | INT -> index_literal

    interval: "(" bound "," bound ")" -> open_interval
            | "[" bound "," bound "]" -> closed_interval
            | "(" bound "," bound "]" -> right_closed_interval
            | "[" bound "," bound ")" -> left_closed_interval
    ?bound: INT
          | "inf" -> infinity

    COMPARATOR: "<=" | ">=" | "<" | ">" | "="
    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.INT
    %import common.WS
    %ignore WS
"""

_parser = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


class FormulaBuilder(Interpreter):
    """
    Builds Formula objects from the parse tree, top-down so that quantifier bindings are known when the atoms below
    them are reached.
    """

    def __init__(self):
        super().__init__()
        self.bindings = {}

    def _unary(self, tree, kind):
        interval = self.visit(tree.children[0])
        return f.prefix(kind, interval, self.visit(tree.children[1]))

    def forall(self, tree):
        return f.conjunction(*self._instantiate(tree))

    def exists(self, tree):
        return f.disjunction(*self._instantiate(tree))

    def _instantiate(self, tree):
        variable, low, high, body = tree.children
        name = str(variable)
        first, last = self.visit(low), self.visit(high)
        if first > last:
            raise FormulaSyntaxError("Empty quantifier domain {}..{}".format(first, last), _position(tree))
        shadowed = self.bindings.get(name)
        operands = []
        for value in range(first, last + 1):
            self.bindings[name] = value
            operands.append(self.visit(body))
        if shadowed is None:
            del self.bindings[name]
        else:
            self.bindings[name] = shadowed
        return operands

    def or_chain(self, tree):
        return f.disjunction(*self.visit_children(tree))

    def and_chain(self, tree):
        return f.conjunction(*self.visit_children(tree))

    def until(self, tree):
        left, interval, right = self.visit_children(tree)
        return f.until(interval, left, right)

    def since(self, tree):
        left, interval, right = self.visit_children(tree)
        return f.since(interval, left, right)

    def negation(self, tree):
        return f.negation(self.visit(tree.children[0]))

    def eventually(self, tree):
        return self._unary(tree, FormulaKind.EVENTUALLY)

    def globally(self, tree):
        return self._unary(tree, FormulaKind.GLOBALLY)

    def next_time(self, tree):
        return self._unary(tree, FormulaKind.NEXT)

    def once(self, tree):
        return self._unary(tree, FormulaKind.ONCE)

    def historically(self, tree):
        return self._unary(tree, FormulaKind.HISTORICALLY)

    def previous(self, tree):
        return self._unary(tree, FormulaKind.PREVIOUS)

    def count(self, tree):
        comparator, bound, window, child = tree.children
        return f.count(str(comparator), int(bound), int(window), self.visit(child))

    def max_count(self, tree):
        comparator, bound, window, step, child = tree.children
        return f.max_count(str(comparator), int(bound), int(window), int(step), self.visit(child))

    def avg_count(self, tree):
        comparator, bound, window, step, child = tree.children
        return f.avg_count(str(comparator), int(bound), int(window), int(step), self.visit(child))

    def avg_dist(self, tree):
        comparator, bound, window, left, right = tree.children
        return f.avg_dist(str(comparator), int(bound), int(window), self.visit(left), self.visit(right))

    def true(self, tree):
        return f.TRUE

    def false(self, tree):
        return f.FALSE

    def atom(self, tree):
        name = str(tree.children[0])
        indices = [self.visit(child) for child in tree.children[1:]]
        if indices:
            name += "_".join(str(value) for value in indices)
        return f.atom(name)

    def _bound_value(self, variable):
        name = str(variable)
        if name not in self.bindings:
            raise FormulaSyntaxError("Unbound index variable {!r}".format(name), variable.start_pos)
        return self.bindings[name]

    def index_var(self, tree):
        return self._bound_value(tree.children[0])

    def index_plus(self, tree):
        return self._bound_value(tree.children[0]) + int(tree.children[1])

    def index_minus(self, tree):
        value = self._bound_value(tree.children[0]) - int(tree.children[1])
        if value < 0:
            raise FormulaSyntaxError("Index expression evaluates to {}".format(value), tree.children[0].start_pos)
        return value

    def index_literal(self, tree):
        return int(tree.children[0])

    def _interval(self, tree, lo_closed, hi_closed):
        low, high = (int(node) if isinstance(node, Token) else None for node in tree.children)
        if low is None:
            raise FormulaSyntaxError("The lower bound of an interval must be finite", _position(tree))
        return f.Interval(lo=low, hi=high, lo_closed=lo_closed, hi_closed=hi_closed)

    def open_interval(self, tree):
        return self._interval(tree, False, False)

    def closed_interval(self, tree):
        return self._interval(tree, True, True)

    def right_closed_interval(self, tree):
        return self._interval(tree, False, True)

    def left_closed_interval(self, tree):
        return self._interval(tree, True, False)


def _position(tree):
    return getattr(tree.meta, "start_pos", None)


def parse_formula(text):
    """
    Parse a formula written in the surface grammar. Quantifiers are expanded over their finite domain, & and | chains
    become n-ary nodes without duplicates, and derived forms are kept as written (see rewrite_derived).
    """
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as e:
        position = e.pos_in_stream
        if position is None or position < 0:
            position = len(text)
        raise FormulaSyntaxError("Invalid formula: {}".format(str(e).splitlines()[0]), position) from e

    result = FormulaBuilder().visit(tree)
    logger.debug("Parsed %r as %s", text, result)
    return result
