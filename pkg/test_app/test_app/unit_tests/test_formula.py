# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from django.test import SimpleTestCase
from hypothesis import given

from soloist import formula as f
from soloist.constants import Comparator, FormulaKind
from soloist.exceptions import EmptyIntervalError, FormulaArityError, InvalidBoundsError, NotCoreFormulaError
from soloist.formula import FormulaTable, build_table, rewrite_derived
from soloist.parser import parse_formula

from test_app.strategies import core_formulae


def gamma():
    """ C[>=3,40](a & b) U(30,100) !c """
    a, b, c = f.atom("a"), f.atom("b"), f.atom("c")
    return f.until(f.Interval(30, 100), f.count(">=", 3, 40, f.conjunction(a, b)), f.negation(c))


class TestInterval(SimpleTestCase):
    def test_open_interval_membership(self):
        """
        Given the interval (1,5)
        When  distances are tested against it
        Then  only distances strictly between the bounds are contained
        """
        interval = f.Interval(1, 5)
        self.assertEqual([d for d in range(8) if interval.contains(d)], [2, 3, 4])

    def test_closed_interval_membership(self):
        interval = f.Interval(1, 5, lo_closed=True, hi_closed=True)
        self.assertEqual([d for d in range(8) if interval.contains(d)], [1, 2, 3, 4, 5])

    def test_unbounded_interval(self):
        interval = f.Interval(3, lo_closed=True)
        self.assertFalse(interval.contains(2))
        self.assertTrue(interval.contains(3))
        self.assertFalse(interval.upper_exceeded(10 ** 9))
        self.assertEqual(str(interval), "[3,inf)")

    def test_point_interval_needs_closed_ends(self):
        """
        Given equal bounds
        When  the interval is not closed on both ends
        Then  an EmptyIntervalError is raised
        """
        self.assertTrue(f.Interval(4, 4, lo_closed=True, hi_closed=True).contains(4))
        with self.assertRaises(EmptyIntervalError):
            f.Interval(4, 4)
        with self.assertRaises(EmptyIntervalError):
            f.Interval(4, 4, lo_closed=True)

    def test_reversed_bounds(self):
        with self.assertRaises(EmptyIntervalError):
            f.Interval(5, 1)

    def test_unbounded_interval_cannot_be_right_closed(self):
        with self.assertRaises(EmptyIntervalError):
            f.Interval(0, None, hi_closed=True)

    def test_negative_bound(self):
        with self.assertRaises(InvalidBoundsError):
            f.Interval(-1, 3)


class TestConstructors(SimpleTestCase):
    def test_conjunction_deduplicates_and_collapses(self):
        """
        Given the same atom twice
        When  they are conjoined
        Then  the result is the atom itself
        """
        self.assertEqual(f.conjunction(f.atom("a"), f.atom("a")), f.atom("a"))

    def test_conjunction_is_order_insensitive(self):
        a, b = f.atom("a"), f.atom("b")
        self.assertEqual(f.conjunction(a, b), f.conjunction(b, a))
        self.assertEqual(hash(f.conjunction(a, b)), hash(f.conjunction(b, a)))

    def test_and_with_duplicate_children_rejected(self):
        a = f.atom("a")
        with self.assertRaises(FormulaArityError):
            f.Formula(FormulaKind.AND, (a, a))

    def test_until_arity(self):
        with self.assertRaises(FormulaArityError):
            f.Formula(FormulaKind.UNTIL, (f.atom("a"),), interval=f.Interval(0, 1))

    def test_max_window_shorter_than_subinterval(self):
        """
        Given K < h
        When  a max count formula is built
        Then  an InvalidBoundsError is raised
        """
        with self.assertRaises(InvalidBoundsError):
            f.max_count("<", 1, 3, 5, f.atom("a"))

    def test_avg_count_zero_subinterval(self):
        with self.assertRaises(InvalidBoundsError):
            f.avg_count("<", 1, 3, 0, f.atom("a"))

    def test_comparator_is_normalised(self):
        formula = f.count(">=", 3, 40, f.atom("a"))
        self.assertIs(formula.comparator, Comparator.GE)
        self.assertTrue(formula.comparator.holds(3, 3))
        self.assertFalse(Comparator.GT.holds(3, 3))

    def test_str_renders_surface_syntax(self):
        self.assertEqual(str(gamma()), "C[>=3,40](a & b) U(30,100) !c")
        self.assertEqual(str(f.max_count("<=", 1, 6, 2, f.atom("a"))), "M[<=1,6,2](a)")
        self.assertEqual(str(f.avg_dist("<", 3, 12, f.atom("req"), f.atom("res"))), "D[<3,12](req,res)")
        self.assertEqual(str(f.prefix(FormulaKind.GLOBALLY, f.Interval(0, 5), f.atom("a"))), "G(0,5) a")


class TestRewriteDerived(SimpleTestCase):
    def test_eventually(self):
        """
        Given F(0,5) b
        When  derived forms are rewritten
        Then  the result is true U(0,5) b
        """
        formula = f.prefix(FormulaKind.EVENTUALLY, f.Interval(0, 5), f.atom("b"))
        self.assertEqual(rewrite_derived(formula), f.until(f.Interval(0, 5), f.TRUE, f.atom("b")))

    def test_globally(self):
        interval = f.Interval(50, 500)
        formula = f.prefix(FormulaKind.GLOBALLY, interval, f.atom("a"))
        expected = f.negation(f.until(interval, f.TRUE, f.negation(f.atom("a"))))
        self.assertEqual(rewrite_derived(formula), expected)

    def test_next_and_past_forms(self):
        interval = f.Interval(1, 4)
        a = f.atom("a")
        self.assertEqual(rewrite_derived(f.prefix(FormulaKind.NEXT, interval, a)), f.until(interval, f.FALSE, a))
        self.assertEqual(rewrite_derived(f.prefix(FormulaKind.ONCE, interval, a)), f.since(interval, f.TRUE, a))
        self.assertEqual(rewrite_derived(f.prefix(FormulaKind.PREVIOUS, interval, a)), f.since(interval, f.FALSE, a))
        self.assertEqual(
            rewrite_derived(f.prefix(FormulaKind.HISTORICALLY, interval, a)),
            f.negation(f.since(interval, f.TRUE, f.negation(a))),
        )

    def test_avg_count(self):
        """
        Given A[<2,10,3](a)
        When  derived forms are rewritten
        Then  it becomes C[<6,9](a), since floor(10/3) = 3
        """
        self.assertEqual(rewrite_derived(f.avg_count("<", 2, 10, 3, f.atom("a"))), f.count("<", 6, 9, f.atom("a")))

    def test_core_formula_unchanged(self):
        formula = gamma()
        self.assertIs(rewrite_derived(formula), formula)

    def test_nested_rewrite(self):
        formula = f.conjunction(f.prefix(FormulaKind.EVENTUALLY, f.Interval(0, 5), f.atom("b")), f.atom("a"))
        rewritten = rewrite_derived(formula)
        self.assertTrue(all(node.is_core for node in rewritten.walk()))


class TestFormulaTable(SimpleTestCase):
    def test_gamma_lattice(self):
        """
        Given γ = C[>=3,40](a & b) U(30,100) !c
        When  its table is built
        Then  it has six proper subformulae, atoms a, b and c, two direct subformulae and height 3
        """
        formula = gamma()
        table = build_table(formula)
        a, b, c = f.atom("a"), f.atom("b"), f.atom("c")
        conjunction = f.conjunction(a, b)
        count = f.count(">=", 3, 40, conjunction)
        negation = f.negation(c)

        self.assertEqual(len(table.subformulae()), 6)
        self.assertEqual(
            {table.formula(formula_id) for formula_id in table.subformulae()}, {a, b, c, conjunction, count, negation}
        )
        self.assertEqual(table.atoms, frozenset({"a", "b", "c"}))
        self.assertEqual(set(table.sub_d(table.root_id)), {table.id_of(count), table.id_of(negation)})
        self.assertEqual(table.sup(table.id_of(a)), (table.id_of(conjunction),))
        self.assertEqual(table.sup(table.id_of(b)), (table.id_of(conjunction),))
        self.assertEqual(table.height(), 3)
        self.assertEqual(table.height(table.id_of(count)), 2)

    def test_single_atom(self):
        table = build_table(f.atom("a"))
        self.assertEqual(table.height(), 0)
        self.assertEqual(table.sub_d(table.root_id), ())
        self.assertEqual(table.subformulae(), [])

    def test_parenthesised_conjunction_height(self):
        """
        Given (a0 & (a1 & a2)) U(50,200) ((a1 & a2) | a1)
        When  its table is built
        Then  its height is 3 and the shared a1 & a2 has a single id
        """
        formula = parse_formula("(a0 & (a1 & a2)) U(50,200) ((a1 & a2) | a1)")
        table = build_table(formula)
        self.assertEqual(table.height(), 3)
        shared = f.conjunction(f.atom("a1"), f.atom("a2"))
        self.assertEqual(len(table.sup(table.id_of(shared))), 2)

    def test_ids_are_post_order(self):
        table = build_table(gamma())
        for formula_id in table:
            self.assertTrue(all(child < formula_id for child in table.sub_d(formula_id)))
        self.assertEqual(table.root_id, len(table) - 1)

    def test_at_height(self):
        table = build_table(gamma())
        expected = {f.conjunction(f.atom("a"), f.atom("b")), f.negation(f.atom("c"))}
        self.assertEqual({table.formula(i) for i in table.at_height(1)}, expected)
        self.assertEqual(table.at_height(3), [table.root_id])

    def test_leaf_id(self):
        table = build_table(f.until(f.Interval(0, 5), f.TRUE, f.atom("b")))
        self.assertIsNotNone(table.leaf_id(FormulaKind.TRUE))
        self.assertIsNone(table.leaf_id(FormulaKind.FALSE))
        self.assertEqual(table.formula(table.leaf_id(FormulaKind.ATOM, "b")), f.atom("b"))

    def test_derived_forms_rejected(self):
        """
        Given a formula that still contains F
        When  a table is built directly
        Then  a NotCoreFormulaError is raised
        """
        with self.assertRaises(NotCoreFormulaError):
            FormulaTable(f.prefix(FormulaKind.EVENTUALLY, f.Interval(0, 5), f.atom("b")))

    @given(core_formulae)
    def test_heights_and_converse_relations(self, formula):
        """
        Given any core formula
        When  its table is built
        Then  leaves have height 0, other nodes one more than their highest child, and sup is the converse of sub_d
        """
        table = build_table(formula)
        for formula_id in table:
            children = table.sub_d(formula_id)
            if children:
                self.assertEqual(table.height(formula_id), 1 + max(table.height(c) for c in children))
            else:
                self.assertEqual(table.height(formula_id), 0)
            for child in children:
                self.assertIn(formula_id, table.sup(child))
            for parent in table.sup(formula_id):
                self.assertIn(formula_id, table.sub_d(parent))
        self.assertEqual(table.sup(table.root_id), ())

    @given(core_formulae)
    def test_equal_subformulae_share_an_id(self, formula):
        table = build_table(formula)
        self.assertEqual(len(table), len(set(formula.walk())))
