import unittest
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from evenparts.exceptions import NormalizationError
from evenparts.util.polycore import (
    BivariateGF, IntPolynomial, RationalGF, YPolynomial, bivariate_series,
    poly_divmod, poly_exact_div, poly_mul, poly_pow, poly_shift,
    recurrence_of, recurrence_residual, series_coeffs
)

small_polys = st.lists(st.integers(-20, 20), min_size=0, max_size=6).map(
    IntPolynomial)


class TestIntPolynomial(unittest.TestCase):
    def test_trim_and_degree(self):
        p = IntPolynomial((1, 2, 0, 0))
        self.assertEqual(p.coeffs, (1, 2))
        self.assertEqual(p.degree, 1)
        self.assertEqual(IntPolynomial().degree, -1)
        self.assertTrue(IntPolynomial((0, 0)).is_zero)

    def test_rejects_float_coefficients(self):
        with self.assertRaises(TypeError):
            IntPolynomial((1, 0.5))

    def test_str(self):
        self.assertEqual(str(IntPolynomial((1, -1, -2, 0, 1))),
                         '1 - x - 2x^2 + x^4')
        self.assertEqual(str(YPolynomial((7, 1))), '7 + y')
        self.assertEqual(str(YPolynomial((1,))), '1')
        self.assertEqual(str(IntPolynomial()), '0')
        self.assertEqual(str(IntPolynomial((0, -3))), '-3x')

    def test_arithmetic(self):
        a = IntPolynomial((1, -2))
        b = IntPolynomial((1, 1))
        self.assertEqual(a * b, IntPolynomial((1, -1, -2)))
        self.assertEqual(a - b, IntPolynomial((0, -3)))
        self.assertEqual(1 - a, IntPolynomial((0, 2)))
        self.assertEqual(2 * a, IntPolynomial((2, -4)))
        self.assertEqual(a ** 2, IntPolynomial((1, -4, 4)))
        self.assertEqual(a ** 0, 1)
        self.assertEqual(poly_shift(b, 2), IntPolynomial((0, 0, 1, 1)))

    def test_evaluate(self):
        p = IntPolynomial((1, -1, -1))
        self.assertEqual(p(2), -5)
        self.assertEqual(p(Fraction(1, 2)), Fraction(1, 4))
        self.assertAlmostEqual(p(0.5 + 0j), 0.25 + 0j)

    def test_y_totals(self):
        f = YPolynomial((7, 1))
        self.assertEqual(f.total(), 8)
        self.assertEqual(f.signed_total(), 6)
        self.assertEqual(f.weighted_total(), 1)

    def test_variable_distinguishes_equality(self):
        self.assertNotEqual(IntPolynomial((1, 1)), YPolynomial((1, 1)))

    @given(small_polys, small_polys, small_polys)
    def test_ring_laws(self, a, b, c):
        self.assertEqual(poly_mul(a, b), poly_mul(b, a))
        self.assertEqual(a * (b + c), a * b + a * c)

    @given(small_polys, st.integers(0, 4))
    def test_power_matches_repeated_product(self, a, e):
        expected = IntPolynomial((1,))
        for _ in range(e):
            expected = expected * a
        self.assertEqual(poly_pow(a, e), expected)


class TestDivision(unittest.TestCase):
    def test_divmod(self):
        a = IntPolynomial((0, 0, 1, -1))
        b = IntPolynomial((1, -3, 0, 4))
        quotient, remainder = poly_divmod(a, b)
        self.assertEqual(quotient, [Fraction(-1, 4)])
        self.assertEqual(remainder, [Fraction(1, 4), Fraction(-3, 4),
                                     Fraction(1)])

    def test_divmod_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            poly_divmod(IntPolynomial((1,)), IntPolynomial())

    def test_exact_division(self):
        product = IntPolynomial((1, -2)) * IntPolynomial((1, -1, -1))
        self.assertEqual(poly_exact_div(product, IntPolynomial((1, -2))),
                         IntPolynomial((1, -1, -1)))
        self.assertIsNone(poly_exact_div(IntPolynomial((1, -1, -1)),
                                         IntPolynomial((1, 1))))


class TestSeries(unittest.TestCase):
    def test_geometric(self):
        g = RationalGF(IntPolynomial((1,)), IntPolynomial((1, -2)))
        self.assertEqual(series_coeffs(g, 5), [1, 2, 4, 8, 16, 32])

    def test_uncancelled_numerator(self):
        # (1 - x) / (1 - 2x) counts compositions, 1 at n = 0
        g = RationalGF(IntPolynomial((1, -1)), IntPolynomial((1, -2)))
        self.assertEqual(g.series(4), [1, 1, 2, 4, 8])

    def test_normalization(self):
        with self.assertRaises(NormalizationError):
            RationalGF(IntPolynomial((1,)), IntPolynomial((2, -1)))
        with self.assertRaises(NormalizationError):
            RationalGF(IntPolynomial((1,)), IntPolynomial((1, -2)),
                       factors=((IntPolynomial((1, -1)), 1),))
        with self.assertRaises(NormalizationError):
            BivariateGF([YPolynomial((1,))], [YPolynomial((1, 1))])

    def test_negative_n_max(self):
        g = RationalGF(IntPolynomial((1,)), IntPolynomial((1, -1)))
        with self.assertRaises(ValueError):
            series_coeffs(g, -1)

    def test_bivariate_fibonacci_by_y(self):
        # 1 / (1 - x - y x^2), coefficients are binomials in y
        g = BivariateGF([YPolynomial((1,))],
                        [YPolynomial((1,)), YPolynomial((-1,)),
                         YPolynomial((0, -1))])
        f = bivariate_series(g, 4)
        self.assertEqual(f[4], YPolynomial((1, 3, 1)))
        self.assertEqual([row.total() for row in f], [1, 1, 2, 3, 5])

    @given(small_polys, st.lists(st.integers(-5, 5), max_size=4),
           st.lists(st.integers(-5, 5), max_size=4))
    def test_common_factor_leaves_series(self, num, den_tail, common_tail):
        den = IntPolynomial([1] + den_tail)
        common = IntPolynomial([1] + common_tail)
        plain = RationalGF(num, den)
        padded = RationalGF(poly_mul(num, common), poly_mul(den, common))
        self.assertEqual(series_coeffs(padded, 15), series_coeffs(plain, 15))

    def test_recurrence(self):
        g = RationalGF(IntPolynomial((1, 0, -1)), IntPolynomial((1, -1, -1)))
        lags, valid_from = recurrence_of(g)
        self.assertEqual(lags, [(1, 1), (2, 1)])
        self.assertEqual(valid_from, 3)
        self.assertEqual(recurrence_residual(g, series_coeffs(g, 20)),
                         [0] * 21)
