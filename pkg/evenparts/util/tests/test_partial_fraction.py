import unittest
from fractions import Fraction
from unittest import mock

from numpy.testing import assert_allclose

from evenparts.exceptions import DecompositionError, NonSimpleRootError
from evenparts.model.genfun import count_gf, reduced_pair, total_gf
from evenparts.util import partial_fraction
from evenparts.util.partial_fraction import (
    PoleTerm, double_pole_constants, multi_pole_coeff,
    recover_shape_constants, simple_pole_coeff
)
from evenparts.util.polycore import IntPolynomial, RationalGF
from evenparts.util.roots import ComplexRootSet, find_roots


class TestRecoverShapeConstants(unittest.TestCase):
    def test_geometric(self):
        g = RationalGF(IntPolynomial((1,)), IntPolynomial((1, -2)))
        decomposition = recover_shape_constants(g)
        self.assertEqual(len(decomposition.terms), 1)
        term = decomposition.terms[0]
        self.assertAlmostEqual(term.pole, 0.5)
        self.assertEqual(term.order, 1)
        self.assertAlmostEqual(term.coeff, 1.0)
        self.assertAlmostEqual(decomposition.coefficient(10), 1024.0)

    def test_polynomial_only(self):
        g = RationalGF(IntPolynomial((1, 3, 1)), IntPolynomial((1,)))
        decomposition = recover_shape_constants(g)
        self.assertEqual(decomposition.terms, [])
        assert_allclose(decomposition.poly, [1, 3, 1])
        self.assertAlmostEqual(decomposition.coefficient(1), 3.0)
        self.assertAlmostEqual(decomposition.coefficient(5), 0.0)

    def test_two_simple_poles(self):
        # 1 / ((1 - 2x)(1 - x)) = 2 / (1 - 2x) - 1 / (1 - x)
        g = RationalGF(IntPolynomial((1,)), IntPolynomial((1, -3, 2)))
        decomposition = recover_shape_constants(g)
        weights = {complex(t.pole): t.coeff for t in decomposition.terms}
        self.assertAlmostEqual(weights[0.5 + 0j], 2.0)
        self.assertAlmostEqual(weights[1 + 0j], -1.0)
        for n in range(10):
            self.assertAlmostEqual(decomposition.coefficient(n).real,
                                   2 ** (n + 1) - 1)

    def test_double_pole_weights(self):
        g = RationalGF(IntPolynomial((1,)), IntPolynomial((1, -4, 4)))
        decomposition = recover_shape_constants(g)
        assert_allclose(decomposition.binomial_weights(0.5 + 0j), [0, 1],
                        atol=1e-12)
        for n in range(12):
            self.assertAlmostEqual(decomposition.coefficient(n).real,
                                   (n + 1) * 2 ** n)

    def test_total_constants(self):
        # T_1(n) = (n/12 + 1/36) 2^n + (2/9)(-1)^n for n >= 1
        decomposition = recover_shape_constants(total_gf(1))
        A, B, C = double_pole_constants(decomposition)
        self.assertAlmostEqual(A, 1 / 12)
        self.assertAlmostEqual(B, 1 / 36)
        self.assertAlmostEqual(C, 2 / 9)
        self.assertEqual(len(decomposition.poly), 1)

    def test_total_has_one_double_pole(self):
        decomposition = recover_shape_constants(total_gf(12))
        orders = dict(decomposition.poles)
        self.assertEqual(orders[0.5 + 0j], 2)
        self.assertEqual(orders[-1 + 0j], 1)
        self.assertEqual(len(orders), 2)

    def test_repeated_numeric_roots(self):
        # a_{n,2} for k = 2 has triple poles at the roots of R_2
        g = count_gf(2, 2)
        decomposition = recover_shape_constants(g)
        exact = g.series(50)
        for n in (12, 17, 30, 50):
            assert_allclose(multi_pole_coeff(g, n, decomposition).real,
                            exact[n], rtol=1e-7)

    def test_reconstruction_failure(self):
        g = RationalGF(IntPolynomial((1,)), IntPolynomial((1, -1)))
        wrong = [PoleTerm(Fraction(1), 1, Fraction(2))]
        with mock.patch.object(partial_fraction, '_exact_local_coefficients',
                               return_value=wrong):
            with self.assertRaises(DecompositionError):
                recover_shape_constants(g)

    def test_missing_key(self):
        decomposition = recover_shape_constants(total_gf(3))
        with self.assertRaises(KeyError):
            decomposition.binomial_weights(2 + 0j)


class TestSimplePoleCoeff(unittest.TestCase):
    def test_fibonacci(self):
        # k = 1: compositions into odd parts
        P, R = reduced_pair(1, 0)
        roots = find_roots(R)
        fib = [1, 1]
        for _ in range(30):
            fib.append(fib[-1] + fib[-2])
        expected = [1] + fib[:30]
        for n, value in enumerate(expected):
            self.assertEqual(round(simple_pole_coeff(P, R, roots, n).real),
                             value)

    def test_refuses_multiple_roots(self):
        roots = ComplexRootSet([(0.5 + 0j, 2)], 2, 0.0)
        with self.assertRaises(NonSimpleRootError):
            simple_pole_coeff(IntPolynomial((1,)),
                              IntPolynomial((1, -4, 4)), roots, 3)
