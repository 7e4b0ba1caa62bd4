import random

from django.test import SimpleTestCase

from workbench.exceptions import BudgetExceeded, InputError, OrdinalError
from workbench.ordinals import (
    CONTROLS,
    ControlFunction,
    Ordinal,
    bound_report,
    cichon,
    control,
    hardy,
    iterate_control,
    max_controlled_descent,
    ordinals_below,
)

succ = CONTROLS['succ']
W = Ordinal.OMEGA


def _random_ordinal(rng):
    """Below w^3 with small coefficients; w^2 shows up in a quarter of the draws."""
    return Ordinal.from_cnf([rng.choice([0, 0, 0, 1]), rng.randint(0, 3), rng.randint(0, 4)])


class OrdinalArithmeticTests(SimpleTestCase):
    def test_parse_and_print(self):
        alpha = Ordinal.parse('w^2*3+w*1+4')
        self.assertEqual(alpha, Ordinal.from_cnf([3, 1, 4]))
        self.assertEqual(str(alpha), 'w^2*3+w+4')
        self.assertEqual(Ordinal.parse('ω^ω'), Ordinal.OMEGA_OMEGA)
        self.assertEqual(Ordinal.parse('7'), 7)

    def test_parse_rejects_unordered_terms(self):
        with self.assertRaises(OrdinalError):
            Ordinal.parse('w+w^2')
        with self.assertRaises(OrdinalError):
            Ordinal.parse('w^x')

    def test_norm(self):
        self.assertEqual(Ordinal.from_cnf([3, 0, 5]).norm(), 5)
        self.assertEqual(Ordinal.omega_power(7).norm(), 7)
        self.assertEqual(Ordinal.ZERO.norm(), 0)

    def test_addition_absorbs_smaller_terms(self):
        self.assertEqual(Ordinal.natural(1) + W, W)
        self.assertEqual(str(W + Ordinal.natural(1)), 'w+1')
        self.assertEqual(str(Ordinal.omega_power(2) + W), 'w^2+w')

    def test_order(self):
        self.assertLess(Ordinal.from_cnf([1, 0]), Ordinal.from_cnf([1, 1]))
        self.assertLess(Ordinal.natural(10 ** 6), W)
        self.assertLess(Ordinal.omega_power(9, 4), Ordinal.OMEGA_OMEGA)

    def test_fundamental_sequences(self):
        self.assertEqual(W.fundamental(4), 5)
        self.assertEqual(str(Ordinal.from_cnf([2, 0, 1, 0]).fundamental(3)), 'w^3*2+4')
        self.assertEqual(Ordinal.OMEGA_OMEGA.fundamental(3), Ordinal.omega_power(4))
        with self.assertRaises(OrdinalError):
            Ordinal.natural(3).fundamental(1)

    def test_fundamental_sequences_ascend_to_the_limit(self):
        rng = random.Random(5)
        limits = [Ordinal.OMEGA_OMEGA]
        while len(limits) < 60:
            alpha = _random_ordinal(rng)
            if alpha.is_limit:
                limits.append(alpha)
        for alpha in limits:
            sequence = [alpha.fundamental(x) for x in range(8)]
            self.assertTrue(all(a < b for a, b in zip(sequence, sequence[1:])))
            self.assertTrue(all(a < alpha for a in sequence))

    def test_predecessor(self):
        self.assertEqual(str(Ordinal.parse('w+3').predecessor()), 'w+2')
        with self.assertRaises(OrdinalError):
            W.predecessor()

    def test_ordinals_below(self):
        self.assertEqual([str(a) for a in ordinals_below(1, 1)], ['0', '1', 'w', 'w+1'])


class HierarchyTests(SimpleTestCase):
    def test_hardy_at_omega(self):
        for x in range(11):
            self.assertEqual(hardy(succ, W, x), 2 * x + 1)
            self.assertEqual(hardy(succ, Ordinal.from_cnf([2, 0]), x), 4 * x + 3)

    def test_hardy_at_omega_squared(self):
        for x in range(11):
            self.assertEqual(hardy(succ, Ordinal.omega_power(2), x), 2 ** (x + 1) * (x + 1) - 1)

    def test_hardy_of_a_natural_iterates(self):
        self.assertEqual(hardy(CONTROLS['double'], Ordinal.natural(3), 1), iterate_control(CONTROLS['double'], 3, 1))

    def test_cichon_counts_applications(self):
        self.assertEqual([cichon(succ, Ordinal.omega_power(2), n) for n in range(3)], [1, 6, 21])

    def test_hardy_and_cichon_agree_on_random_ordinals(self):
        rng = random.Random(3)
        evaluated = 0
        for _ in range(200):
            alpha = _random_ordinal(rng)
            x = rng.randint(0, 5)
            h = CONTROLS[rng.choice(['succ', 'double'])]
            try:
                value = hardy(h, alpha, x, budget=20_000)
                steps = cichon(h, alpha, x, budget=20_000)
            except BudgetExceeded:
                continue
            evaluated += 1
            self.assertEqual(iterate_control(h, steps, x), value)
            if h is succ:
                self.assertEqual(value, steps + x)
        self.assertGreater(evaluated, 100)

    def test_hardy_composes_along_cantor_normal_form(self):
        rng = random.Random(8)
        evaluated = 0
        for _ in range(200):
            beta = Ordinal.from_cnf([0, rng.randint(0, 2), rng.randint(0, 3)])
            low = beta.degree
            alpha = Ordinal([0] * low + [rng.randint(0, 2) for _ in range(2 - low)] + [rng.choice([0, 0, 0, 1])])
            x = rng.randint(0, 5)
            try:
                inner = hardy(succ, beta, x, budget=50_000)
                expected = hardy(succ, alpha, inner, budget=50_000)
                combined = hardy(succ, alpha + beta, x, budget=100_000)
            except BudgetExceeded:
                continue
            evaluated += 1
            self.assertEqual(combined, expected)
        self.assertGreater(evaluated, 100)

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            hardy(succ, Ordinal.omega_power(3), 5, budget=100)

    def test_controls(self):
        for name in CONTROLS:
            self.assertIs(control(name), CONTROLS[name])
        with self.assertRaises(InputError):
            control('tetration')

    def test_control_that_shrinks_is_rejected(self):
        table = {'half': ControlFunction('half', lambda x: x // 2)}
        self.assertFalse(table['half'].check())
        with self.assertRaises(InputError):
            control('half', table)


class DescentTests(SimpleTestCase):
    def test_naturals_only(self):
        for start in range(4):
            self.assertEqual(max_controlled_descent(0, start, succ), start + 1)

    def test_matches_the_cichon_function(self):
        for start in range(3):
            self.assertEqual(
                max_controlled_descent(1, start, succ),
                cichon(succ, Ordinal.omega_power(2), start),
            )

    def test_budget(self):
        with self.assertRaises(BudgetExceeded):
            max_controlled_descent(2, 3, succ, budget=10)


class BoundReportTests(SimpleTestCase):
    def test_report_lines(self):
        report = bound_report(n=1, s=2, g=3, c=4, size=7, classes=['first', 'second']).as_dict()
        self.assertEqual(report['rank_below'], 'w^2')
        self.assertIn('2^8', report['control'])
        self.assertEqual(report['class_2'], 'second')
