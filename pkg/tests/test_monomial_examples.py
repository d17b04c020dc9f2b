import math
import unittest

from univalence.boundary import AlphaMode, SamplingConfig
from univalence.errors import CoefficientTooLarge, ConfigError
from univalence.monomial_examples import example_end_to_end, example_for_id, rho_min

SQRT2 = math.sqrt(2)


class TestRhoMin(unittest.TestCase):
    def test_formulas(self):
        self.assertAlmostEqual(rho_min(1, 1, 0.2), 5 * SQRT2, delta=1e-12)
        self.assertAlmostEqual(rho_min(1, 1, 0.2), 7.0710678, delta=1e-7)
        self.assertAlmostEqual(rho_min(2, 1, 0.2), SQRT2 / 0.6, delta=1e-12)
        self.assertAlmostEqual(rho_min(2, 1, 0.2), 2.3570226, delta=1e-7)
        self.assertAlmostEqual(rho_min(5, 1, 0.2), SQRT2 / 0.6, delta=1e-12)
        self.assertAlmostEqual(rho_min(2, 2, 0.1), SQRT2 / 0.7, delta=1e-12)
        self.assertAlmostEqual(rho_min("Ex1", 3, 0.05), SQRT2 / 0.6, delta=1e-12)
        for example_id in [1, 2, 5]:
            self.assertGreater(rho_min(example_id, 1, 1e-6), 1)

    def test_coefficient_limits(self):
        with self.assertRaises(CoefficientTooLarge):
            rho_min(1, 1, 0.3)
        with self.assertRaises(CoefficientTooLarge):
            rho_min(1, 1, 0.25)
        with self.assertRaises(CoefficientTooLarge):
            rho_min(2, 2, 1 / 3)
        with self.assertRaises(CoefficientTooLarge):
            rho_min(5, 4, 0.5)
        # Example 5 does not depend on n
        rho_min(5, 4, 0.45)

        for a_mod in [0, -0.1, float("nan")]:
            with self.assertRaises(ConfigError):
                rho_min(1, 1, a_mod)
        with self.assertRaises(ConfigError):
            rho_min(3, 1, 0.1)
        with self.assertRaises(ConfigError):
            rho_min(1, 0, 0.1)

    def test_example_ids(self):
        self.assertEqual(example_for_id("Ex5").mode, AlphaMode.F_OVER_Z_MEAN)
        self.assertEqual(example_for_id("2").example_id, 2)
        with self.assertRaises(ConfigError):
            example_for_id("Ex4")
        with self.assertRaises(ConfigError):
            example_for_id("first")


class TestExampleEndToEnd(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.cfg = SamplingConfig(angular_samples=512, refine_iters=48)

    def assert_chain(self, report):
        self.assertTrue(report.chain_ok)
        self.assertEqual(len(report.example_chain), 4)
        self.assertAlmostEqual(report.example_chain[-1], report.conclusion_bound)

    def test_example1(self):
        report = example_end_to_end(1, 1, 0.2, self.cfg)
        self.assertEqual(report.theorem_id, "T1")
        self.assertAlmostEqual(report.alpha, 1.2 + 0.2j, delta=1e-15)
        self.assertAlmostEqual(report.rho, 5 * SQRT2, delta=1e-12)
        self.assertAlmostEqual(report.hypothesis_bound, 2 / 3, delta=1e-12)
        self.assertGreater(report.hypothesis_sup.value, 0.66)
        self.assertAlmostEqual(report.conclusion_bound, 2, delta=1e-12)
        self.assertTrue(report.verified())
        self.assert_chain(report)
        # (n+1)|a| = 0.4 and (n+1)|a| / (1 - 2(n+1)|a|) = 2
        self.assertAlmostEqual(report.example_chain[1], 0.4, delta=1e-15)
        self.assertAlmostEqual(report.example_chain[2], 2, delta=1e-12)

    def test_example2(self):
        report = example_end_to_end(2, 1, 0.2, self.cfg)
        self.assertEqual(report.theorem_id, "T2")
        self.assertAlmostEqual(report.rho, SQRT2 / 0.6, delta=1e-12)
        self.assertAlmostEqual(report.hypothesis_bound, 4 / 15, delta=1e-12)
        self.assertGreater(report.hypothesis_sup.value, 0.266)
        self.assertLess(report.hypothesis_sup.value, 4 / 15)
        self.assertAlmostEqual(report.conclusion_bound, 2 / 3, delta=1e-12)
        self.assertTrue(report.verified())
        self.assert_chain(report)

        report = example_end_to_end(2, 2, 0.1, self.cfg)
        self.assertEqual(report.n, 2)
        self.assertTrue(report.verified())
        self.assert_chain(report)

    def test_example5(self):
        report = example_end_to_end(5, 1, 0.2, self.cfg)
        self.assertEqual(report.theorem_id, "T5")
        self.assertAlmostEqual(report.alpha, 1.1 + 0.1j, delta=1e-15)
        self.assertAlmostEqual(report.hypothesis_bound, 1 / 4, delta=1e-12)
        self.assertAlmostEqual(report.conclusion_bound, 1 / 3, delta=1e-12)
        self.assertLess(report.conclusion_sup.value, 0.2)
        self.assertTrue(report.verified())
        self.assert_chain(report)

    def test_complex_coefficients(self):
        for example_id, n, a in [(1, 2, 0.1j), (2, 3, -0.1 + 0.1j), (5, 2, 0.3 - 0.2j)]:
            report = example_end_to_end(example_id, n, a, self.cfg)
            self.assertTrue(report.verified(), f"Example {example_id}, n = {n}, a = {a}")
            self.assert_chain(report)

    def test_too_large(self):
        with self.assertRaises(CoefficientTooLarge):
            example_end_to_end(1, 1, 0.3, self.cfg)


if __name__ == "__main__":
    unittest.main()
