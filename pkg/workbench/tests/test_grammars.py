import random

from django.test import SimpleTestCase, override_settings

from workbench.corpus import random_grammar
from workbench.exceptions import GrammarValidationError, TermSyntaxError, UnknownSymbolError
from workbench.grammars import SelfLoop, VariableMode, format_grammar, grammar_size, parse_grammar, step_word
from workbench.syntax import parse_term

from .fixtures import E1, EXAMPLE_GRAMMAR, grammar


class GrammarParsingTests(SimpleTestCase):
    def test_example_grammar(self):
        g = grammar(EXAMPLE_GRAMMAR)
        self.assertEqual([s.name for s in g.alphabet], ['A', 'B', 'C', 'D'])
        self.assertEqual(g.alphabet.max_arity, 3)
        self.assertEqual(g.actions, ['a', 'b'])
        self.assertEqual(len(g.rules), 2)
        self.assertEqual(grammar_size(g), 13)

    def test_format_parses_back(self):
        g = grammar(EXAMPLE_GRAMMAR)
        again = parse_grammar(format_grammar(g))
        self.assertEqual(format_grammar(again), format_grammar(g))

    def test_comments_and_blank_lines(self):
        g = parse_grammar('# header comment\n\ngrammar\nnonterminal A/0  # one symbol\naction a\nrule A -a-> A\n')
        self.assertEqual(len(g.rules), 1)

    def test_missing_header(self):
        with self.assertRaises(TermSyntaxError):
            parse_grammar('nonterminal A/0\n')

    def test_rule_with_stray_variable(self):
        with self.assertRaises(GrammarValidationError):
            parse_grammar('grammar\nnonterminal A/1\naction a\nrule A(x1) -a-> x2\n')

    def test_left_hand_side_must_list_variables_in_order(self):
        with self.assertRaises(GrammarValidationError):
            parse_grammar('grammar\nnonterminal A/2\naction a\nrule A(x2,x1) -a-> x1\n')

    def test_undeclared_action(self):
        with self.assertRaises(UnknownSymbolError):
            parse_grammar('grammar\nnonterminal A/0\naction a\nrule A -c-> A\n')

    def test_cyclic_right_hand_side_is_refused(self):
        with self.assertRaises(GrammarValidationError):
            parse_grammar('grammar\nnonterminal A/1\naction a\nrule A(x1) -a-> rec L = A(ref L)\n')

    def test_error_names_the_line(self):
        with self.assertRaises(TermSyntaxError) as caught:
            parse_grammar('grammar\nnonterminal A/0\naction a\nrule A -a-> A(\n')
        self.assertEqual(caught.exception.line, 4)


class TransitionTests(SimpleTestCase):
    def setUp(self):
        self.g = grammar(EXAMPLE_GRAMMAR)
        self.store = self.g.store
        self.e1 = parse_term(self.store, E1)

    def test_moves_of_the_worked_example(self):
        moves = dict(self.g.transitions(self.e1, VariableMode.DEAD))
        self.assertEqual(moves['a'], parse_term(self.store, 'C(x5, D(x5, D(x5, C(x2, B))))'))
        self.assertEqual(moves['b'], self.store.var(5))

    def test_variables_in_dead_mode_are_stuck(self):
        self.assertEqual(self.g.transitions(self.store.var(5), 'dead'), [])

    def test_variables_in_self_loop_mode(self):
        x5 = self.store.var(5)
        self.assertEqual(self.g.transitions(x5, 'self-loop'), [(SelfLoop(5), x5)])
        self.assertEqual(str(SelfLoop(5)), 'a_x5')

    @override_settings(WORKBENCH={'VARIABLE_MODE': 'dead'})
    def test_mode_defaults_from_settings(self):
        self.assertEqual(VariableMode.coerce(None), VariableMode.DEAD)

    def test_step_word(self):
        self.assertEqual(step_word(self.g, self.e1, ['b']), [self.store.var(5)])
        self.assertEqual(step_word(self.g, self.e1, ['b', 'a']), [])
        self.assertEqual(step_word(self.g, self.e1, []), [self.e1])

    def test_a_step_is_the_rule_instance(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_grammar(rng)
            store = g.store
            leaf = next(i for i in range(len(g.alphabet)) if g.alphabet.arity(i) == 0)
            for rule in g.rules:
                args = [store.app(leaf)] * g.alphabet.arity(rule.head)
                term = store.app(rule.head, args)
                expected = store.apply_subst(rule.rhs, dict(enumerate(args, start=1)))
                self.assertIn((rule.action, expected), g.transitions(term, 'dead'))
