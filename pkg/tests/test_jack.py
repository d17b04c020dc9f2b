import os
import unittest
from unittest import mock

import numpy as np

from univalence.boundary import SamplingConfig
from univalence.errors import ConfigError, ZeroFunction
from univalence.jack import probe, random_function, random_probe_suite
from univalence.power_series import PowerPoly
from univalence.utils import THREADS_VARIABLE


class TestProbe(unittest.TestCase):
    def test_monomials(self):
        for n in [1, 2, 3]:
            for r in [0.5, 0.9]:
                w = PowerPoly([0] * n + [1])
                result = probe(w, r)
                self.assertTrue(result.passed())
                self.assertEqual(result.n, n)
                self.assertAlmostEqual(abs(result.z0), r, delta=1e-12)
                self.assertAlmostEqual(result.k, n, delta=1e-9)
                self.assertAlmostEqual(result.value, r**n, delta=1e-12)

    def test_quadratic(self):
        # |w| = |z| |1 + z/2| is largest at z = r; k = (1 + r) / (1 + r/2)
        result = probe(PowerPoly([0, 1, 0.5]), 0.8)
        self.assertTrue(result.passed())
        self.assertAlmostEqual(result.z0, 0.8, delta=1e-9)
        self.assertAlmostEqual(result.k.real, 9 / 7, delta=1e-9)
        self.assertAlmostEqual(result.k.imag, 0, delta=1e-9)
        self.assertAlmostEqual(result.value, 1.12, delta=1e-12)
        self.assertEqual(result.r, 0.8)
        self.assertEqual(result.samples_used, 4096 + 65)

    def test_higher_order(self):
        result = probe([0, 0, 1, 0.1], 0.9)
        self.assertEqual(result.n, 2)
        self.assertTrue(result.k_real_ok)
        self.assertTrue(result.k_lower_ok)
        self.assertTrue(result.second_ok)
        self.assertGreaterEqual(result.k.real, 2)

    def test_rotation_invariance(self):
        w = PowerPoly([0, 1, 0.5, -0.2j])
        reference = probe(w, 0.9)
        self.assertTrue(reference.passed())
        for i in range(1, 11):
            phi = 0.37 * i
            result = probe(w.rotated(phi), 0.9)
            self.assertTrue(result.passed(), f"phi = {phi}")
            self.assertAlmostEqual(result.k.real, reference.k.real, delta=1e-9)
            self.assertAlmostEqual(result.value, reference.value, delta=1e-12)

    def test_scaling_invariance(self):
        w = PowerPoly([0, 1, 0.5, -0.2j])
        reference = probe(w, 0.7)
        result = probe(w.scaled(5), 0.7)
        self.assertAlmostEqual(result.k, reference.k, delta=1e-9)
        self.assertAlmostEqual(result.value, 5 * reference.value, delta=1e-12)

    def test_coarse_sampling(self):
        cfg = SamplingConfig(angular_samples=64, refine_iters=8)
        result = probe(PowerPoly([0, 1, 0.5, -0.2j]), 0.9, cfg)
        self.assertTrue(result.passed())

    def test_invalid_input(self):
        with self.assertRaises(ZeroFunction):
            probe(PowerPoly([0, 0, 0]), 0.5)
        with self.assertRaises(ConfigError):
            probe(PowerPoly([1, 1]), 0.5)
        with self.assertRaises(ConfigError):
            probe(PowerPoly([0, 1]), 1.0)
        with self.assertRaises(ConfigError):
            probe(PowerPoly([0, 1]), 0)

    def test_to_record(self):
        record = probe(PowerPoly([0, 1, 0.5]), 0.8).to_record()
        self.assertEqual(record["n"], 1)
        self.assertEqual(len(record["z0"]), 2)
        self.assertTrue(record["k_real_ok"])


class TestRandomProbeSuite(unittest.TestCase):
    def test_random_function(self):
        for trial in range(20):
            rng = np.random.default_rng([3, trial])
            w = random_function(rng, (2, 3), (0, 4))
            self.assertIn(w.vanishing_order(), [2, 3])
            self.assertLessEqual(len(w), 3 + 1 + 4)
            self.assertGreaterEqual(abs(w[w.vanishing_order()]), 0.1)

        first = random_function(np.random.default_rng([3, 0]), (1, 3), (0, 6))
        second = random_function(np.random.default_rng([3, 0]), (1, 3), (0, 6))
        self.assertEqual(first, second)

    def test_no_failures(self):
        for n in [1, 2, 3]:
            summary = random_probe_suite(42, 100, n_range=(n, n), r_list=(0.5, 0.9))
            self.assertEqual(summary["probes"], 200)
            self.assertEqual(summary["fail_count"], 0, summary["fail_details"])
            self.assertEqual(summary["pass_count"], 200)
            self.assertEqual(summary["seed"], 42)
            self.assertEqual(summary["trials"], 100)

    def test_deterministic_across_thread_counts(self):
        summaries = []
        for threads in ["1", "4"]:
            with mock.patch.dict(os.environ, {THREADS_VARIABLE: threads}):
                summaries.append(random_probe_suite(7, 10, r_list=(0.3, 0.6, 0.95)))
        self.assertEqual(summaries[0], summaries[1])
        self.assertEqual(summaries[0]["probes"], 30)

    def test_invalid_arguments(self):
        with self.assertRaises(ConfigError):
            random_probe_suite(42, 0)
        with self.assertRaises(ConfigError):
            random_probe_suite(42, 5, n_range=(0, 2))
        with self.assertRaises(ConfigError):
            random_probe_suite(42, 5, n_range=(3, 2))
        with self.assertRaises(ConfigError):
            random_probe_suite(42, 5, degree_range=(-1, 2))
        with self.assertRaises(ConfigError):
            random_probe_suite(42, 5, r_list=())


if __name__ == "__main__":
    unittest.main()
