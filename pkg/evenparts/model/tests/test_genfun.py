import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from evenparts.exceptions import ParameterError
from evenparts.model.genfun import (
    Threshold, allowed_parts_gf, build_F, count_gf, even_tail_gf,
    first_at_gf, late_gf, make_threshold, part_weight_series, reduced_pair,
    single_part_gfs, specialize_y, total_gf
)
from evenparts.util.polycore import (
    IntPolynomial, RationalGF, YPolynomial, bivariate_series, poly_add,
    poly_mul, poly_pow, series_coeffs
)
from evenparts.util.roots import find_roots


class TestThreshold(unittest.TestCase):
    def test_delta(self):
        for k, delta, smallest in [(1, 1, 2), (2, 2, 4), (11, 1, 12),
                                   (12, 2, 14)]:
            t = Threshold(k)
            self.assertEqual(t.delta, delta)
            self.assertEqual(t.smallest, smallest)

    def test_invalid(self):
        with self.assertRaises(ParameterError):
            Threshold(0)
        with self.assertRaises(TypeError):
            Threshold(True)
        with self.assertRaises(TypeError):
            Threshold(2.0)

    def test_make_threshold(self):
        t = Threshold(5)
        self.assertIs(make_threshold(t), t)
        self.assertEqual(make_threshold(5), t)


class TestBuildF(unittest.TestCase):
    def test_first_rows(self):
        f = bivariate_series(build_F(2), 4)
        self.assertEqual(f[:4], [YPolynomial((1,)), YPolynomial((1,)),
                                 YPolynomial((2,)), YPolynomial((4,))])
        self.assertEqual(f[4], YPolynomial((7, 1)))

    def test_all_compositions_at_y_one(self):
        g = specialize_y(build_F(3), 1)
        self.assertEqual(series_coeffs(g, 6), [1, 1, 2, 4, 8, 16, 32])

    def test_matches_part_weights(self):
        for k in range(1, 6):
            self.assertEqual(bivariate_series(build_F(k), 30),
                             part_weight_series(k, 30))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(1, 8))
    def test_recurrence_residual_vanishes(self, k):
        g = build_F(k)
        f = bivariate_series(g, 200)
        for n in range(4, 201):
            residual = YPolynomial()
            for j, q in enumerate(g.den):
                if j <= n:
                    residual = residual + q * f[n - j]
            self.assertTrue(residual.is_zero)

    def test_rows_at_y_one_count_compositions(self):
        compositions = series_coeffs(
            RationalGF(IntPolynomial((1, -1)), IntPolynomial((1, -2))), 40)
        for k in (1, 2, 7, 12):
            rows = bivariate_series(build_F(k), 40)
            self.assertEqual([row.total() for row in rows], compositions)

    def test_dominant_root(self):
        for k in range(1, 13):
            _, R = reduced_pair(k, 0)
            values = find_roots(R).values
            with self.subTest(k=k):
                self.assertLess(abs(values[0].imag), 1e-12)
                self.assertGreater(values[0].real, 0.5)
                self.assertLess(values[0].real, 1.0)
                self.assertGreater(abs(values[1]), abs(values[0]))

    def test_denominator_at_zero(self):
        P, R = reduced_pair(1, 0)
        self.assertEqual(R, IntPolynomial((1, -1, -1)))
        self.assertEqual(P, IntPolynomial((1, 0, -1)))
        uncancelled = specialize_y(build_F(1), 0)
        self.assertEqual(uncancelled.den, IntPolynomial((1, -1)) * R)

    def test_signed_denominator(self):
        _, R = reduced_pair(2, -1)
        self.assertEqual(R, IntPolynomial((1, -1, -2, 0, 2)))


class TestPositionalGFs(unittest.TestCase):
    def test_single_parts(self):
        U, B, S = single_part_gfs(3)
        self.assertEqual(series_coeffs(U, 6), [0, 1, 1, 1, 1, 1, 1])
        self.assertEqual(series_coeffs(B, 8), [0, 0, 0, 0, 1, 0, 1, 0, 1])
        self.assertEqual(series_coeffs(S, 8), [0, 1, 1, 1, 0, 1, 0, 1, 0])
        self.assertEqual(B, even_tail_gf(3))

    def test_single_parts_add_up(self):
        for k in range(1, 13):
            U, B, S = single_part_gfs(k)
            lhs = poly_mul(U.num, poly_mul(S.den, B.den))
            rhs = poly_mul(poly_add(poly_mul(S.num, B.den),
                                    poly_mul(B.num, S.den)), U.den)
            self.assertEqual(lhs, rhs)

    def test_late_at_zero_counts_everything(self):
        self.assertEqual(series_coeffs(late_gf(4, 0), 5), [1, 1, 2, 4, 8, 16])
        self.assertEqual(series_coeffs(allowed_parts_gf(4, 0), 3),
                         [1, 0, 0, 0])

    def test_first_at_zero(self):
        # first part is the large even part
        self.assertEqual(series_coeffs(first_at_gf(1, 0), 4), [0, 0, 1, 1, 3])

    def test_ell_bounds(self):
        with self.assertRaises(ParameterError):
            late_gf(2, -1)
        with self.assertRaises(ParameterError):
            first_at_gf(2, 65)
        with self.assertRaises(TypeError):
            allowed_parts_gf(2, 1.5)
        self.assertIsNotNone(late_gf(2, 70, ell_cap=80))

    def test_factors_recorded(self):
        g = late_gf(5, 3)
        self.assertEqual(dict((f, m) for f, m in g.factors),
                         {IntPolynomial((1, -2)): 1,
                          IntPolynomial((1, -1)): 3,
                          IntPolynomial((1, 1)): 3})


class TestTotalsAndCounts(unittest.TestCase):
    def test_total_matches_weighted(self):
        for k in range(1, 7):
            f = bivariate_series(build_F(k), 40)
            totals = series_coeffs(total_gf(k), 40)
            self.assertEqual(totals, [row.weighted_total() for row in f])

    def test_total_is_y_derivative(self):
        # N (1 - x) x^(k+delta) / D(x, 1)^2, cross multiplied
        for k in range(1, 13):
            at_one = specialize_y(build_F(k), 1)
            total = total_gf(k)
            derivative = poly_mul(
                poly_mul(at_one.num, IntPolynomial((1, -1))),
                IntPolynomial.monomial(Threshold(k).smallest))
            self.assertEqual(poly_mul(total.num, poly_pow(at_one.den, 2)),
                             poly_mul(derivative, total.den))

    def test_count_columns(self):
        for k in (1, 2, 5):
            f = bivariate_series(build_F(k), 40)
            for tcount in range(4):
                column = series_coeffs(count_gf(k, tcount), 40)
                self.assertEqual(column, [row.coeff(tcount) for row in f])

    def test_negative_count(self):
        with self.assertRaises(ParameterError):
            count_gf(3, -1)
