import unittest
from fractions import Fraction
import numpy as np

from core.exceptions import LimitingCaseError, RegimeError, ValidationError
from core.exponents import ParamSet
from rates import (
    approximation_rate_mixed,
    bernstein_rate_isotropic,
    bernstein_rate_mixed,
    classify_region,
    compare_bernstein_weyl,
    fit_dyadic_slope,
    fit_rate,
    identity_order,
    nonlinear_width_rate,
    weyl_rate_isotropic,
    weyl_rate_mixed,
)


def P(d, t, p1, p2, q='2'):
    return ParamSet.build(d, Fraction(t), p1, p2, q)


class TestBernsteinIsotropic(unittest.TestCase):
    def test_case_i(self):
        rate = bernstein_rate_isotropic(P(2, '1.5', 1, 2, q=1))
        self.assertEqual((rate.alpha, rate.case), (Fraction(3, 4), 'i'))
        self.assertEqual(rate.beta, 0)

    def test_case_iv_small_smoothness(self):
        rate = bernstein_rate_isotropic(P(1, '0.2', 4, 2))
        self.assertEqual((rate.alpha, rate.case), (Fraction(2, 5), 'iv'))

    def test_case_ii(self):
        rate = bernstein_rate_isotropic(P(2, 3, 4, '1.5'))
        self.assertEqual((rate.alpha, rate.case), (Fraction(7, 4), 'ii'))

    def test_boundary_is_limiting_case(self):
        """t/d = 1/p1 está na banda de guarda"""
        with self.assertRaises(LimitingCaseError) as ctx:
            bernstein_rate_isotropic(P(2, '0.5', 4, '1.5'))
        self.assertIn('limiting case not covered', str(ctx.exception))

    def test_not_compact(self):
        with self.assertRaises(RegimeError):
            bernstein_rate_isotropic(P(2, 1, 1, 4))

    def test_cases_iii_iv_continuous_across_split(self):
        """nos dois lados da fronteira t/d = (1/p2 - 1/p1)/(p1/2 - 1) os expoentes se encontram"""
        offset = Fraction(1, 10 ** 6)
        for d, p1, p2 in ((1, 4, 3), (2, 6, 3), (3, 12, 4), (2, 8, '8/3')):
            reference = P(d, 1, p1, p2)
            u1, u2 = reference.u1, reference.u2
            split = (u2 - u1) * 2 * u1 / (1 - 2 * u1)
            self.assertEqual(split + u2 - u1, split / (2 * u1))
            with self.assertRaises(LimitingCaseError):
                bernstein_rate_isotropic(P(d, d * split, p1, p2))
            above = bernstein_rate_isotropic(P(d, d * (split + offset), p1, p2))
            below = bernstein_rate_isotropic(P(d, d * (split - offset), p1, p2))
            self.assertEqual((above.case, below.case), ('iii', 'iv'))
            self.assertLess(abs(above.alpha - below.alpha), 10 * offset)


class TestBernsteinMixed(unittest.TestCase):
    def test_case_i(self):
        rate = bernstein_rate_mixed(P(2, '0.4', 1, '1.5'))
        self.assertEqual((rate.alpha, rate.beta, rate.case), (Fraction(2, 5), 0, 'i'))

    def test_case_i_requires_compactness(self):
        with self.assertRaises(RegimeError) as ctx:
            bernstein_rate_mixed(P(2, '0.3', 1, '1.5'))
        self.assertIn('not compact', str(ctx.exception))

    def test_case_ii(self):
        rate = bernstein_rate_mixed(P(2, 1, 2, 2))
        self.assertEqual(rate.to_dict(), {
            'alpha': 1.0, 'beta': 1.0, 'beta_lo': 1.0, 'beta_hi': 1.0, 'case': 'ii', 'two_sided': True,
        })

    def test_open_case_interval(self):
        rate = bernstein_rate_mixed(P(2, 1, 4, 6))
        self.assertEqual(rate.alpha, 1)
        self.assertEqual(rate.beta, (Fraction(1), Fraction(5, 4)))
        self.assertFalse(rate.two_sided)
        self.assertEqual(rate.to_dict()['beta'], [1.0, 1.25])

    def test_p2_range(self):
        with self.assertRaises(RegimeError):
            bernstein_rate_mixed(P(2, 1, 2, 1))
        with self.assertRaises(RegimeError):
            bernstein_rate_mixed(P(2, 1, 2, 'inf'))

    def test_large_p1_cases(self):
        """p2 <= 2 <= p1: t > 1/p1 dá expoente t - 1/p1 + 1/2 nos dois fatores"""
        rate = bernstein_rate_mixed(P(2, 1, 4, '1.5'))
        self.assertEqual((rate.alpha, rate.beta, rate.case), (Fraction(5, 4), Fraction(5, 4), 'iii'))
        small = bernstein_rate_mixed(P(2, '0.2', 4, '1.5'))
        self.assertEqual((small.alpha, small.beta, small.case), (Fraction(2, 5), Fraction(9, 20), 'v'))

    def test_d1_matches_isotropic(self):
        for t, p1, p2 in [('1.5', 1, 2), ('0.2', 4, 2), (3, 4, '1.5'), (2, 6, 3)]:
            params = P(1, t, p1, p2)
            self.assertEqual(bernstein_rate_mixed(params).alpha, bernstein_rate_isotropic(params).alpha)


class TestWeyl(unittest.TestCase):
    def test_isotropic(self):
        rate = weyl_rate_isotropic(P(2, 2, 1, 4))
        self.assertEqual((rate.alpha, rate.case), (Fraction(3, 4), 'ii'))
        self.assertEqual(weyl_rate_isotropic(P(1, 2, 2, 2)).alpha, 2)
        self.assertEqual(weyl_rate_isotropic(P(1, '0.2', 4, 2)).alpha, Fraction(2, 5))

    def test_mixed(self):
        rate = weyl_rate_mixed(P(2, 1, 1, 4))
        self.assertEqual((rate.alpha, rate.beta, rate.case), (Fraction(3, 4), Fraction(1, 4), 'iii'))
        rate = weyl_rate_mixed(P(2, 1, 2, 2))
        self.assertEqual((rate.alpha, rate.beta), (1, 1))
        rate = weyl_rate_mixed(P(2, '0.2', 4, '1.5'))
        self.assertEqual((rate.alpha, rate.beta, rate.case), (Fraction(2, 5), Fraction(9, 20), 'vi'))

    def test_bernstein_not_slower(self):
        for t, p1, p2 in [(1, 1, 4), (1, 2, 2), ('0.2', 4, '1.5'), (1, 4, 6), (2, 3, 8)]:
            params = P(2, t, p1, p2)
            self.assertGreaterEqual(bernstein_rate_mixed(params).alpha, weyl_rate_mixed(params).alpha)


class TestNonlinearAndApproximation(unittest.TestCase):
    def test_nonlinear_isotropic(self):
        self.assertEqual(nonlinear_width_rate(P(3, '1.2', 2, 2), 'isotropic').alpha, Fraction(2, 5))

    def test_nonlinear_mixed(self):
        rate = nonlinear_width_rate(P(2, '1.5', 1, 2), 'mixed')
        self.assertEqual((rate.alpha, rate.beta), (Fraction(3, 2), Fraction(1)))
        self.assertFalse(rate.two_sided)

    def test_nonlinear_unknown_scale(self):
        with self.assertRaises(ValidationError):
            nonlinear_width_rate(P(2, 1, 2, 2), 'anisotropic')

    def test_approximation(self):
        rate = approximation_rate_mixed(P(2, 1, 1, 2))
        self.assertEqual((rate.alpha, rate.beta, rate.case), (Fraction(1, 2), Fraction(1, 2), 'i'))
        rate = approximation_rate_mixed(P(2, 1, 4, 2))
        self.assertEqual((rate.alpha, rate.beta, rate.case), (Fraction(1), Fraction(5, 4), 'ii'))
        with self.assertRaises(RegimeError):
            approximation_rate_mixed(P(2, 1, '3/2', '4/3'))


class TestRegions(unittest.TestCase):
    def test_classify(self):
        self.assertEqual(classify_region(1, 2), 'I')
        self.assertEqual(classify_region('3/2', 4), 'II')
        self.assertEqual(classify_region(3, 4), 'III')
        self.assertEqual(classify_region(4, 3), 'IV')
        self.assertEqual(classify_region(4, '3/2'), 'V')

    def test_same_order_agrees_with_tables(self):
        for t, p1, p2 in [(1, 1, '3/2'), (1, '3/2', 4), (1, 3, 4), (2, 4, 3), (1, 4, '3/2')]:
            params = P(2, t, p1, p2)
            b, w = bernstein_rate_mixed(params), weyl_rate_mixed(params)
            same = (b.alpha, b.beta_lo, b.beta_hi) == (w.alpha, w.beta_lo, w.beta_hi)
            self.assertEqual(compare_bernstein_weyl(p1, p2).same_order, same, (p1, p2))

    def test_identity_orders(self):
        self.assertEqual(identity_order('gelfand', 1, 4), Fraction(-1, 2))
        self.assertEqual(identity_order('gelfand', 3, 4), 0)
        self.assertEqual(identity_order('bernstein', 4, 3), 0)
        self.assertEqual(identity_order('bernstein', 4, '3/2'), Fraction(1, 6))
        self.assertEqual(identity_order('bernstein', 1, 2), Fraction(-1, 2))
        with self.assertRaises(ValidationError):
            identity_order('weyl', 1, 2)

    def test_report_dict(self):
        report = compare_bernstein_weyl(1, 4).to_dict()
        self.assertEqual(report['region'], 'II')
        self.assertEqual(report['relation'], 'bernstein strictly faster')


class TestFitting(unittest.TestCase):
    def test_pure_power(self):
        ns = [2 ** k for k in range(3, 11)]
        fit = fit_rate(ns, [n ** -0.75 for n in ns], d=1)
        self.assertAlmostEqual(fit.alpha, 0.75, places=9)
        self.assertEqual(fit.beta, 0.0)
        self.assertLess(fit.residual, 1e-10)

    def test_log_factor(self):
        ns = [2 ** k for k in range(4, 13)]
        values = [np.log(n) ** 2 / n for n in ns]
        fit = fit_rate(ns, values, d=3)
        self.assertAlmostEqual(fit.alpha, 1.0, places=6)
        self.assertAlmostEqual(fit.beta, 1.0, places=6)

    def test_invalid_input(self):
        with self.assertRaises(ValidationError):
            fit_rate([1, 2, 3, 4], [1.0, 0.0, 0.5, 0.2], d=1)
        with self.assertRaises(ValidationError):
            fit_rate([1, 2], [1.0, 0.5], d=1)
        with self.assertRaises(ValidationError):
            fit_rate([4, 3, 2, 1], [1.0, 0.5, 0.3, 0.2], d=1)

    def test_dyadic_slope(self):
        fit = fit_dyadic_slope([4, 5, 6, 7], [2.0 ** (-1.5 * mu + 3) for mu in range(4, 8)])
        self.assertAlmostEqual(fit.slope, -1.5)
        self.assertAlmostEqual(fit.intercept, 3.0)


if __name__ == '__main__':
    unittest.main()
