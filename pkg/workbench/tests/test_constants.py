import random

from django.test import SimpleTestCase

from workbench.candidates import pairs_count_bound, pairs_set
from workbench.constants import (
    CONSTANT_KEYS,
    complexity_class_report,
    compute_constants,
    shortest_sink_word_bruteforce,
    sink_words,
)
from workbench.corpus import random_grammar
from workbench.exceptions import EnumerationRefused
from workbench.grammars import parse_grammar

from .fixtures import EXAMPLE_GRAMMAR, SINK_GRAMMAR, grammar


class SinkWordTests(SimpleTestCase):
    def test_words_through_another_nonterminal(self):
        words = sink_words(grammar(SINK_GRAMMAR))
        self.assertEqual(words, {('A', 1): ('a', 'b'), ('B', 1): ('b',)})

    def test_unsinkable_positions_are_left_out(self):
        words = sink_words(grammar(EXAMPLE_GRAMMAR))
        self.assertEqual(words, {('A', 2): ('b',)})

    def test_ties_go_to_the_earlier_declared_action(self):
        g = parse_grammar('grammar\nnonterminal A/1\naction a b\nrule A(x1) -b-> x1\nrule A(x1) -a-> x1\n')
        self.assertEqual(sink_words(g)[('A', 1)], ('a',))

    def test_agrees_with_breadth_first_search(self):
        rng = random.Random(11)
        for _ in range(25):
            g = random_grammar(rng, max_rules=3)
            words = sink_words(g)
            for symbol in g.alphabet:
                for i in range(1, symbol.arity + 1):
                    found = shortest_sink_word_bruteforce(g, symbol.name, i, max_length=8)
                    known = words.get((symbol.name, i))
                    if known is None:
                        self.assertIsNone(found)
                    elif len(known) <= 8:
                        self.assertEqual(len(found), len(known))


class ConstantTableTests(SimpleTestCase):
    def test_sink_grammar_table(self):
        constants = compute_constants(grammar(SINK_GRAMMAR))
        self.assertEqual(constants.values(), {
            'm': 1, 'hinc': 0, 'sinc': 1, 'd0': 3,
            'd1': 2048, 'd2': 5, 'd3': 64, 's': 17, 'g': 7,
            'd4': 262144, 'd5': 7, 'c': 3670016, 'n': 1,
        })
        self.assertEqual(constants.size, 7)
        self.assertEqual(list(constants.values()), list(CONSTANT_KEYS))

    def test_digit_counts(self):
        digits = compute_constants(grammar(SINK_GRAMMAR)).digits()
        self.assertEqual(digits['c'], 7)
        self.assertEqual(digits['d1'], 4)
        self.assertEqual(digits['hinc'], 1)

    def test_one_step_sink_keeps_negative_hinc(self):
        g = parse_grammar('grammar\nnonterminal A/1\naction a\nrule A(x1) -a-> x1\n')
        self.assertEqual(compute_constants(g).values(), {
            'm': 1, 'hinc': -1, 'sinc': 0, 'd0': 2,
            'd1': 16, 'd2': 1, 'd3': 4, 's': 1, 'g': 0,
            'd4': 16, 'd5': 0, 'c': 4, 'n': 1,
        })

    def test_nullary_grammar(self):
        g = parse_grammar('grammar\nnonterminal A/0 B/0\naction a\nrule A -a-> B\nrule B -a-> A\n')
        constants = compute_constants(g)
        self.assertEqual(constants.sink_words, {})
        self.assertEqual((constants.m, constants.hinc, constants.d0, constants.n), (0, -1, 1, 0))
        self.assertEqual((constants.d2, constants.d5), (1, 1))

    def test_nonnegative_and_c_dominates(self):
        rng = random.Random(5)
        for _ in range(100):
            constants = compute_constants(random_grammar(rng))
            values = constants.values()
            self.assertTrue(all(value >= 0 for key, value in values.items() if key != 'hinc'))
            self.assertGreaterEqual(values['c'], values['d3'])
            self.assertGreaterEqual(values['c'], 2 * values['d4'] * values['d5'])
            self.assertEqual(values['n'], values['m'] ** values['d0'])
            self.assertLessEqual(values['d0'], 1 + (2 + values['hinc']) ** (constants.nonterminals * values['m']))

    def test_pair_sets_respect_the_count_bound(self):
        rng = random.Random(17)
        checked = 0
        for _ in range(30):
            g = random_grammar(rng)
            for i in range(3):
                for size in (1, 2, 3):
                    try:
                        pairs = pairs_set(g, i, size, budget=20_000)
                    except EnumerationRefused:
                        continue
                    self.assertLessEqual(len(pairs), pairs_count_bound(g, i, size))
                    checked += 1
        self.assertGreater(checked, 100)

    def test_class_report(self):
        lines = complexity_class_report(n=1, states=2)
        self.assertIn('F_5', lines[0])
        self.assertIn('F_6', lines[1])
        self.assertIn('ACKERMANN', lines[-1])
