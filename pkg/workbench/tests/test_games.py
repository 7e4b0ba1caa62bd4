import random

from django.test import SimpleTestCase

from workbench.corpus import random_grammar, random_substitution, random_term
from workbench.exceptions import BudgetExceeded, CertificateUnavailable
from workbench.games import (
    AtLeast,
    Bisimilar,
    Finite,
    GameConfig,
    GameSolver,
    Inconclusive,
    NotBisimilar,
    eq_level_bounded,
    finite_state_decide,
    grammar_decide,
    grammar_solver,
    replay_certificate,
    sim_k_partition,
    spoiler_certificate,
)
from workbench.grammars import GrammarLts, VariableMode
from workbench.syntax import parse_term

from .fixtures import (
    E1,
    EXAMPLE_GRAMMAR,
    GROWING_GRAMMAR,
    LOOPS_GRAMMAR,
    ROUND_ONE_GRAMMAR,
    ROUND_ZERO_GRAMMAR,
    SAME_LOOPS_GRAMMAR,
    grammar,
)


def _level(text, left, right, cap=5, mode='dead'):
    g = grammar(text)
    a = parse_term(g.store, left)
    b = parse_term(g.store, right)
    return eq_level_bounded(g, a, b, GameConfig(cap=cap, mode=mode))


class EqLevelTests(SimpleTestCase):
    def test_spoiler_wins_in_the_first_round(self):
        self.assertEqual(_level(ROUND_ZERO_GRAMMAR, 'A', 'B'), Finite(0))

    def test_spoiler_wins_in_the_second_round(self):
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'A', 'B'), Finite(1))
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'B', 'A'), Finite(1))

    def test_level_below_the_cap_is_reported_as_a_lower_bound(self):
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'A', 'B', cap=1), AtLeast(1))
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'A', 'B', cap=0), AtLeast(0))

    def test_identical_terms(self):
        self.assertEqual(_level(EXAMPLE_GRAMMAR, E1, E1, cap=7), AtLeast(7))

    def test_bisimilar_infinite_behaviour(self):
        self.assertEqual(_level(GROWING_GRAMMAR, 'A(B)', 'B', cap=12), AtLeast(12))

    def test_variable_against_a_stuck_constant(self):
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'x1', 'Z', mode='self_loop'), Finite(0))
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'x1', 'Z', mode='dead'), AtLeast(5))

    def test_distinct_variables_differ_only_with_self_loops(self):
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'x1', 'x2', mode='self-loop'), Finite(0))
        self.assertEqual(_level(ROUND_ONE_GRAMMAR, 'x1', 'x2', mode='dead'), AtLeast(5))

    def test_solver_is_shared_and_memoised(self):
        g = grammar(ROUND_ONE_GRAMMAR)
        a, b = g.initial_term('A'), g.initial_term('B')
        solver = grammar_solver(g, 'dead')
        self.assertIs(grammar_solver(g, VariableMode.DEAD), solver)
        self.assertEqual(solver.level(a, b, 9), Finite(1))
        self.assertEqual(solver.level(b, a, 2), Finite(1))
        self.assertEqual(solver.level(a, b, 1), AtLeast(1))

    def test_game_budget(self):
        g = grammar(GROWING_GRAMMAR)
        solver = GameSolver(GrammarLts(g, 'dead'), budget=3)
        with self.assertRaises(BudgetExceeded):
            solver.level(parse_term(g.store, 'A(B)'), g.initial_term('B'), 50)

    def test_levels_are_symmetric_on_random_grammars(self):
        rng = random.Random(17)
        for _ in range(15):
            g = random_grammar(rng)
            left = random_term(g, rng, depth=2, variables=0)
            right = random_term(g, rng, depth=2, variables=0)
            solver = grammar_solver(g, 'dead')
            self.assertEqual(solver.level(left, right, 4), solver.level(right, left, 4))


class CertificateTests(SimpleTestCase):
    def test_first_round_certificate(self):
        g = grammar(ROUND_ZERO_GRAMMAR)
        a, b = g.initial_term('A'), g.initial_term('B')
        solver = grammar_solver(g, 'dead')
        certificate = spoiler_certificate(solver, a, b, 5)
        self.assertEqual(certificate.depth(), 1)
        self.assertEqual(certificate.action, 'b')
        self.assertTrue(replay_certificate(solver.lts, certificate, a, b))

    def test_second_round_certificate(self):
        g = grammar(ROUND_ONE_GRAMMAR)
        a, b = g.initial_term('A'), g.initial_term('B')
        solver = grammar_solver(g, 'dead')
        certificate = spoiler_certificate(solver, a, b, 5)
        self.assertEqual(certificate.depth(), 2)
        self.assertEqual(certificate.level, 1)
        self.assertTrue(replay_certificate(solver.lts, certificate, a, b))

    def test_tampered_certificate_fails_replay(self):
        g = grammar(ROUND_ONE_GRAMMAR)
        a, b = g.initial_term('A'), g.initial_term('B')
        solver = grammar_solver(g, 'dead')
        certificate = spoiler_certificate(solver, a, b, 5)
        certificate.replies = []
        self.assertFalse(replay_certificate(solver.lts, certificate, a, b))

    def test_no_certificate_for_equivalent_terms(self):
        g = grammar(SAME_LOOPS_GRAMMAR)
        with self.assertRaises(CertificateUnavailable):
            spoiler_certificate(grammar_solver(g, 'dead'), g.initial_term('A'), g.initial_term('B'), 4)


class PartitionTests(SimpleTestCase):
    def test_tower_levels(self):
        g = grammar(ROUND_ONE_GRAMMAR)
        a, b = g.initial_term('A'), g.initial_term('B')
        tower = sim_k_partition(GrammarLts(g, 'dead'), [a, b], 3)
        self.assertEqual(tower.k, 3)
        self.assertEqual(tower.level(a, b), Finite(1))
        self.assertEqual(len(tower.blocks(0)), 1)
        self.assertTrue(tower.same(1, a, b))
        self.assertFalse(tower.same(2, a, b))

    def test_tower_agrees_with_the_game(self):
        rng = random.Random(23)
        finite = 0
        for index in range(100):
            g = random_grammar(rng, nonterminals=rng.randint(1, 4))
            variables = index % 3
            mode = 'self_loop' if variables else 'dead'
            left = random_term(g, rng, depth=2, variables=variables)
            right = random_term(g, rng, depth=2, variables=variables)
            lts = GrammarLts(g, mode)
            solver = grammar_solver(g, mode)
            tower = sim_k_partition(lts, [left, right], 8)
            exact = tower.level(left, right)
            for cap in (0, 1, 3, 5, 8):
                result = solver.level(left, right, cap)
                if isinstance(exact, Finite) and exact.level < cap:
                    self.assertEqual(result, exact)
                else:
                    self.assertEqual(result, AtLeast(cap))
            if isinstance(exact, Finite):
                finite += 1
                certificate = spoiler_certificate(solver, left, right, 8)
                self.assertTrue(replay_certificate(lts, certificate, left, right))
        self.assertGreater(finite, 0)


class FiniteStateDecisionTests(SimpleTestCase):
    def test_different_loops(self):
        g = grammar(LOOPS_GRAMMAR)
        self.assertEqual(grammar_decide(g, g.initial_term('A'), g.initial_term('B'), mode='dead'), NotBisimilar(0))

    def test_same_loops(self):
        g = grammar(SAME_LOOPS_GRAMMAR)
        self.assertEqual(grammar_decide(g, g.initial_term('A'), g.initial_term('B'), mode='dead'), Bisimilar())

    def test_second_round_difference(self):
        g = grammar(ROUND_ONE_GRAMMAR)
        decision = finite_state_decide(GrammarLts(g, 'dead'), g.initial_term('A'), g.initial_term('B'))
        self.assertEqual(decision, NotBisimilar(1))

    def test_unbounded_state_space_is_inconclusive(self):
        g = grammar(GROWING_GRAMMAR)
        decision = grammar_decide(g, parse_term(g.store, 'A(B)'), g.initial_term('B'), mode='dead', budget=10)
        self.assertIsInstance(decision, Inconclusive)
        self.assertEqual(str(decision), 'Inconclusive')


class SubstitutionCongruenceTests(SimpleTestCase):
    def test_substitution_never_lowers_the_level(self):
        rng = random.Random(41)
        cap = 8

        def value(result):
            return result.level if isinstance(result, Finite) else cap

        for _ in range(500):
            g = random_grammar(rng)
            left = random_term(g, rng, depth=2, variables=2)
            right = random_term(g, rng, depth=2, variables=2)
            sigma = random_substitution(g, rng, variables=2)
            solver = grammar_solver(g, 'self_loop')
            before = solver.level(left, right, cap)
            after = solver.level(g.store.apply_subst(left, sigma), g.store.apply_subst(right, sigma), cap)
            self.assertGreaterEqual(value(after), value(before))
