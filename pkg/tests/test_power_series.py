import cmath
import os
import tempfile
import unittest

import numpy as np
from hypothesis import given
from hypothesis.strategies import floats, lists

from univalence.errors import ClassViolation, ConfigError, DomainError, NonFiniteValue
from univalence.power_series import (
    NOT_IN_ANY_PROPER_CLASS,
    ClassMember,
    PowerPoly,
    class_order,
    differentiate,
    evaluate,
    parse_coefficient_lines,
    read_coefficient_file,
    write_coefficient_file,
)


class TestPowerPoly(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.p = PowerPoly([0, 1, 0.2])
        cls.rng = np.random.default_rng(1)

    def test_construction(self):
        self.assertEqual(self.p.coeffs, (0j, 1 + 0j, 0.2 + 0j))
        self.assertEqual(len(self.p), 3)
        self.assertEqual(self.p[2], 0.2)
        self.assertEqual(self.p[7], 0j)
        self.assertEqual(repr(PowerPoly([1])), "P((1+0j))")

        with self.assertRaises(ConfigError):
            PowerPoly([])
        with self.assertRaises(NonFiniteValue):
            PowerPoly([0, float("nan")])

    def test_eq_and_hash(self):
        self.assertEqual(self.p, PowerPoly([0j, 1, 0.2]))
        self.assertNotEqual(self.p, PowerPoly([0, 1, 0.2, 0]))
        self.assertFalse(self.p == (0, 1, 0.2))
        self.assertEqual(hash(self.p), hash(PowerPoly([0, 1, 0.2])))

    def test_degree_and_vanishing_order(self):
        self.assertEqual(self.p.degree(), 2)
        self.assertEqual(PowerPoly([0, 0, 3, 0]).degree(), 2)
        self.assertEqual(PowerPoly([0, 0]).degree(), 0)
        self.assertEqual(self.p.vanishing_order(), 1)
        self.assertEqual(PowerPoly([0, 0, 0, 1j]).vanishing_order(), 3)
        self.assertTrue(PowerPoly([0, 0]).is_zero())
        with self.assertRaises(ValueError):
            PowerPoly([0]).vanishing_order()

    def test_evaluate(self):
        self.assertAlmostEqual(evaluate(self.p, 0.5), 0.55, delta=1e-15)
        self.assertAlmostEqual(self.p.evaluate(1j), complex(-0.2, 1), delta=1e-15)
        self.assertEqual(self.p.evaluate(0), 0j)
        # Closed disk plus slack
        self.p.evaluate(1 + 1e-13)

        with self.assertRaises(DomainError):
            self.p.evaluate(1.5)
        with self.assertRaises(DomainError):
            self.p.evaluate_many(np.array([0.5, 2j]))
        with self.assertRaises(NonFiniteValue):
            self.p.evaluate(complex("nan"))

    def test_evaluate_many_matches_evaluate(self):
        p = PowerPoly([0, 1, 0.3 - 0.1j, 0, 0.05j, -0.02])
        radii = self.rng.uniform(0, 1, 50)
        angles = self.rng.uniform(0, 2 * np.pi, 50)
        zs = radii * np.exp(1j * angles)
        values = p.evaluate_many(zs)
        for z, value in zip(zs, values):
            self.assertAlmostEqual(value, p.evaluate(z), delta=1e-13)
        self.assertEqual(p.evaluate_many(np.array([])).size, 0)

    def test_differentiate(self):
        self.assertEqual(differentiate(self.p), PowerPoly([1, 0.4]))
        self.assertEqual(differentiate(PowerPoly([5])), PowerPoly([0]))
        self.assertEqual(differentiate(PowerPoly([0, 0, 0, 1])), PowerPoly([0, 0, 3]))

    def test_shift_and_transform(self):
        self.assertEqual(PowerPoly([0, 0, 2, 3]).shifted(2), PowerPoly([2, 3]))
        self.assertEqual(PowerPoly([0, 0]).shifted(2), PowerPoly([0]))
        self.assertEqual(self.p.times_z(), PowerPoly([0, 0, 1, 0.2]))
        self.assertEqual(self.p.with_constant(-1), PowerPoly([-1, 1, 0.2]))
        self.assertEqual(self.p.scaled(2), PowerPoly([0, 2, 0.4]))
        with self.assertRaises(AssertionError):
            self.p.shifted(2)

    def test_rotated(self):
        p = PowerPoly([0, 1, 0.3, -0.2j])
        phi = 0.7
        rotated = p.rotated(phi)
        for z in [0.5, 0.3j, -0.6 + 0.2j]:
            self.assertAlmostEqual(
                rotated.evaluate(z), p.evaluate(cmath.exp(1j * phi) * z), delta=1e-14
            )

    @given(
        lists(floats(min_value=-1, max_value=1), min_size=1, max_size=6),
        floats(min_value=-0.5, max_value=0.5),
    )
    def test_derivative_matches_finite_difference(self, coefficients, x):
        p = PowerPoly(coefficients)
        h = 1e-6
        difference = (p.evaluate(x + h) - p.evaluate(x - h)) / (2 * h)
        self.assertAlmostEqual(differentiate(p).evaluate(x), difference, delta=1e-6)


class TestClassMember(unittest.TestCase):
    def test_class_order(self):
        self.assertEqual(class_order(PowerPoly([0, 1, 0.2])), 1)
        self.assertEqual(class_order(PowerPoly([0, 1, 0, 0.1])), 2)
        self.assertEqual(class_order(PowerPoly([0, 1, 0, 0])), NOT_IN_ANY_PROPER_CLASS)
        self.assertIs(class_order(PowerPoly([0, 1])), NOT_IN_ANY_PROPER_CLASS)

        with self.assertRaises(ClassViolation):
            class_order(PowerPoly([1, 1]))
        with self.assertRaises(ClassViolation):
            class_order(PowerPoly([0, 2]))
        with self.assertRaises(ClassViolation):
            class_order(PowerPoly([0]))

    def test_membership(self):
        f = ClassMember(PowerPoly([0, 1, 0, 0.1]), 2)
        self.assertEqual(f.n, 2)
        self.assertEqual(ClassMember([0, 1, 0, 0.1], 1).n, 1)
        self.assertEqual(f.derivative, PowerPoly([1, 0, 0.30000000000000004]))
        self.assertEqual(f.quotient, PowerPoly([1, 0, 0.1]))
        self.assertEqual(f.second_derivative, differentiate(f.derivative))

        with self.assertRaises(ClassViolation):
            ClassMember([0, 1, 0.2], 2)
        with self.assertRaises(ClassViolation):
            ClassMember([0, 1.5, 0.2], 1)
        with self.assertRaises(ConfigError):
            ClassMember([0, 1, 0.2], 0)
        with self.assertRaises(ConfigError):
            ClassMember([0, 1, 0.2], True)
        with self.assertRaises(ConfigError):
            ClassMember([0, 1, 0.2], 1.0)

    def test_from_poly(self):
        self.assertEqual(ClassMember.from_poly([0, 1, 0, 0, 0.1]).n, 3)
        identity = ClassMember.from_poly(PowerPoly([0, 1]))
        self.assertEqual(identity.n, 1)
        self.assertTrue(identity.is_identity())
        self.assertFalse(ClassMember.from_poly([0, 1, 0.2]).is_identity())

    def test_monomial(self):
        f = ClassMember.monomial(0.2, 1)
        self.assertEqual(f.poly, PowerPoly([0, 1, 0.2]))
        self.assertEqual(f, ClassMember([0, 1, 0.2], 1))
        self.assertNotEqual(f, ClassMember([0, 1, 0.2, 0], 1))
        self.assertEqual(ClassMember.monomial(0.1j, 3).poly[4], 0.1j)
        self.assertEqual(len({f, ClassMember.monomial(0.2, 1)}), 1)


class TestCoefficientFiles(unittest.TestCase):
    def test_parse_lines(self):
        lines = ["# z + 0.2 z^2 - 0.1i z^4", "1,1.0,0.0", "", "2,0.2,0", "4,0,-0.1"]
        self.assertEqual(parse_coefficient_lines(lines), PowerPoly([0, 1, 0.2, 0, -0.1j]))

        malformed = [["1,1,0", "1,0.2,0"], ["2,1,0", "1,1,0"], ["1,1"], ["a,1,0"], []]
        for bad_lines in malformed:
            with self.assertRaises(ConfigError):
                parse_coefficient_lines(bad_lines)
        with self.assertRaises(ConfigError):
            parse_coefficient_lines(["-1,1,0"])

    def test_write_and_read(self):
        p = PowerPoly([0, 1, 0.2 - 0.3j, 0, 1e-17])
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "f.csv")
            write_coefficient_file(p, path)
            with open(path) as f:
                self.assertEqual(f.readline(), "1,1.0,0.0\n")
            self.assertEqual(read_coefficient_file(path), p)

            write_coefficient_file(PowerPoly([0, 0]), path)
            self.assertEqual(read_coefficient_file(path), PowerPoly([0]))


if __name__ == "__main__":
    unittest.main()
