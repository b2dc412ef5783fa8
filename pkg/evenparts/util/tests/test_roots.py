import unittest
from fractions import Fraction

import numpy as np
from numpy.testing import assert_allclose

from evenparts.exceptions import ConvergenceError
from evenparts.util.polycore import IntPolynomial
from evenparts.util.roots import (
    ComplexRootSet, cluster_roots, find_multiplicity, find_roots,
    strip_known_factors
)

GOLDEN = (np.sqrt(5) - 1) / 2


class TestFindRoots(unittest.TestCase):
    def test_quadratic(self):
        roots = find_roots(IntPolynomial((1, -1, -1)))
        assert_allclose(roots.values, [GOLDEN, -1 - GOLDEN], atol=1e-12)
        self.assertTrue(roots.is_simple)
        self.assertTrue(roots.converged)
        self.assertEqual(roots.degree, 2)
        self.assertLess(roots.residual, 1e-12)

    def test_linear(self):
        roots = find_roots(IntPolynomial((1, -2)))
        assert_allclose(roots.values, [0.5])

    def test_zero_root(self):
        roots = find_roots(IntPolynomial((0, 0, 1, -1)))
        self.assertEqual(roots.roots[0], (0j, 2))
        assert_allclose(roots.values[1], 1.0)

    def test_roots_of_unity(self):
        # 1 - x^5
        roots = find_roots(IntPolynomial((1, 0, 0, 0, 0, -1)))
        assert_allclose(np.abs(roots.values), np.ones(5), atol=1e-12)
        assert_allclose(np.sort(np.angle(roots.values)),
                        2 * np.pi * np.array([-2, -1, 0, 1, 2]) / 5,
                        atol=1e-10)

    def test_threshold_denominator(self):
        # (1 - 2x)(1 + x) + x^14
        p = IntPolynomial((1, -1, -2) + (0,) * 11 + (1,))
        roots = find_roots(p)
        self.assertEqual(len(roots), 14)
        self.assertTrue(roots.is_simple)
        for root in roots.values:
            self.assertLess(abs(p(complex(root))), 1e-9)
        # the dominant root sits just above 1/2
        self.assertAlmostEqual(abs(roots.values[0]), 0.5, places=3)

    def test_double_root(self):
        # (1 - 2x)^2 (1 + x)
        roots = find_roots(IntPolynomial((1, -3, 0, 4)))
        self.assertEqual(roots.multiplicities, [2, 1])
        assert_allclose(roots.values, [0.5, -1.0], atol=1e-12)
        self.assertEqual(roots.simple, [False, True])
        self.assertTrue(roots.converged)

    def test_close_simple_roots_stay_apart(self):
        # (x - 1/2)(x - 1/2 - 1/1000) scaled to integers
        roots = find_roots(IntPolynomial((501, -2002, 2000)))
        self.assertEqual(roots.multiplicities, [1, 1])
        self.assertTrue(roots.is_simple)

    def test_residual_decides_convergence(self):
        # no double can bring the residual below 1e-300
        p = IntPolynomial((1, -1, -2) + (0,) * 11 + (1,))
        with self.assertLogs('evenparts.util.roots', level='WARNING'):
            roots = find_roots(p, tol=1e-300, max_iter=30)
        self.assertFalse(roots.converged)
        self.assertGreater(roots.residual, 1e-300)
        self.assertEqual(len(roots), 14)
        self.assertTrue(find_roots(p).converged)

    def test_constant(self):
        with self.assertRaises(ValueError):
            find_roots(IntPolynomial((3,)))

    def test_strict(self):
        p = IntPolynomial((1, -1, -1, 1, 2, -3, 1))
        with self.assertRaises(ConvergenceError):
            find_roots(p, tol=0.0, max_iter=1, strict=True)


class TestMultiplicity(unittest.TestCase):
    def test_find_multiplicity(self):
        candidates = np.array([0.5, 0.5 + 1e-10, -1.0, 0.25])
        self.assertEqual(find_multiplicity(0.5, candidates, 1e-8), 2)
        self.assertEqual(find_multiplicity(-1.0, candidates, 1e-8), 1)
        self.assertEqual(find_multiplicity(2.0, candidates, 1e-8), 0)

    def test_cluster(self):
        approx = [0.5 + 1e-10, -1.0, 0.5 - 1e-10, 0.5j]
        clusters = cluster_roots(approx, 1e-8)
        self.assertEqual([mult for _, mult in clusters], [2, 1, 1])
        self.assertAlmostEqual(clusters[0][0], 0.5)

    def test_root_set(self):
        roots = ComplexRootSet([(0.5, 2), (-1.0, 1)], 3, 0.0)
        self.assertEqual(roots.simple, [False, True])
        self.assertFalse(roots.is_simple)
        self.assertEqual(roots.multiplicities, [2, 1])
        self.assertAlmostEqual(roots.min_separation(), 1.5)


class TestStripKnownFactors(unittest.TestCase):
    def test_strip(self):
        rest = IntPolynomial((1, -1, -1))
        p = (IntPolynomial((1, -2)) ** 2 * IntPolynomial((1, 1)) *
             IntPolynomial((1, -1)) ** 3 * rest)
        poles, remainder = strip_known_factors(p)
        self.assertEqual(poles, [(Fraction(1, 2), 2), (Fraction(1), 3),
                                 (Fraction(-1), 1)])
        self.assertEqual(remainder, rest)

    def test_nothing_to_strip(self):
        p = IntPolynomial((1, -1, -1))
        self.assertEqual(strip_known_factors(p), ([], p))
