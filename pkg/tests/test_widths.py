import unittest
import numpy as np

from config.grids import BERN_GELFAND_PAIRS, PUKHOV_INSTANCES
from core.exceptions import GuardError, ValidationError
from core.exponents import TWO
from core.operator_norm import OptimBudget
from widths import (
    KINDS,
    EstimateDiagnostics,
    FiniteOperator,
    SubspaceBasis,
    WidthEstimate,
    approximation_number,
    bernstein_number,
    check_bern_gelfand_duality,
    check_hilbert_collapse,
    check_ideal_property,
    check_pietsch,
    check_pukhov,
    check_sandwich,
    check_tikhomirov,
    enforce_monotone,
    estimate_width,
    exact_identity_width,
    gelfand_number,
    kolmogorov_number,
    parse_kinds,
    weyl_number,
    width_table,
)
from widths.estimators import restricted_norm


def _estimate(kind, n, value, direction):
    return WidthEstimate(kind, n, value, direction, EstimateDiagnostics())


class TestFiniteOperator(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(ValidationError):
            FiniteOperator(np.array([[np.nan, 1.0]]), 2, 2)
        with self.assertRaises(ValidationError):
            FiniteOperator(np.zeros(3), 2, 2)
        with self.assertRaises(ValidationError):
            FiniteOperator.identity_of(0, 1, 2)

    def test_adjoint_swaps_dual_exponents(self):
        T = FiniteOperator(np.arange(6.0).reshape(2, 3), 1, 4)
        A = T.adjoint()
        self.assertEqual(A.matrix.shape, (3, 2))
        self.assertEqual(str(A.src), '4/3')
        self.assertEqual(str(A.tgt), 'inf')

    def test_inverse(self):
        T = FiniteOperator.diagonal([2, 4], 1, 2)
        inv = T.inverse()
        np.testing.assert_allclose(inv.matrix, np.diag([0.5, 0.25]))
        self.assertEqual(str(inv.src), '2')
        with self.assertRaises(ValidationError):
            FiniteOperator(np.ones((2, 2)), 2, 2).inverse()

    def test_rank(self):
        self.assertEqual(FiniteOperator(np.ones((3, 3)), 1, 2).rank, 1)
        self.assertTrue(FiniteOperator.identity_of(3, 1, 2).is_identity)

    def test_subspace_basis(self):
        self.assertEqual(SubspaceBasis(np.eye(4)[:, :2]).dim, 2)
        with self.assertRaises(ValidationError):
            SubspaceBasis(np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]]))
        with self.assertRaises(ValidationError):
            SubspaceBasis(np.ones((2, 3)))

    def test_parse_kinds(self):
        self.assertEqual(parse_kinds('all'), list(KINDS))
        self.assertEqual(parse_kinds('bernstein, weyl'), ['bernstein', 'weyl'])
        with self.assertRaises(ValidationError):
            parse_kinds('bernstein,mystery')


class TestClosedForms(unittest.TestCase):
    def test_identity_values(self):
        self.assertEqual(exact_identity_width('bernstein', 5, 3, 4, 4), 1.0)
        self.assertAlmostEqual(exact_identity_width('bernstein', 9, 9, 1, 2), 1 / 3)
        self.assertAlmostEqual(exact_identity_width('gelfand', 4, 4, 2, 'inf'), 0.5)
        self.assertEqual(exact_identity_width('kolmogorov', 4, 4, 'inf', 1), 1.0)
        self.assertAlmostEqual(exact_identity_width('approximation', 4, 1, 1, 2), 1.0)
        self.assertAlmostEqual(exact_identity_width('approximation', 4, 1, 2, 1), 2.0)
        self.assertEqual(exact_identity_width('gelfand', 3, 4, 1, 2), 0.0)

    def test_weyl_only_for_hilbert(self):
        self.assertEqual(exact_identity_width('weyl', 4, 2, 2, 2), 1.0)
        self.assertIsNone(exact_identity_width('weyl', 4, 2, 1, 1))

    def test_unknown_returns_none(self):
        self.assertIsNone(exact_identity_width('bernstein', 4, 2, 1, 2))


class TestEstimators(unittest.TestCase):
    def setUp(self):
        self.budget = OptimBudget(restarts=8, max_iter=150, seed=42)
        self.T = FiniteOperator.diagonal([3.0, 2.0, 1.0], 1, 2)

    def test_closed_form_branch(self):
        """b_m(id_{1,2}^m) = m^{-1/2}"""
        estimate = bernstein_number(FiniteOperator.identity_of(5, 1, 2), 5, self.budget)
        self.assertEqual(estimate.direction, 'exact')
        self.assertAlmostEqual(estimate.value, 5 ** -0.5, places=12)

    def test_hilbert_branch(self):
        M = np.random.default_rng(42).standard_normal((4, 4))
        sigma = np.linalg.svd(M, compute_uv=False)
        T = FiniteOperator(M, 2, 2)
        for kind in KINDS:
            for n in range(1, 5):
                estimate = estimate_width(kind, T, n, self.budget)
                self.assertEqual(estimate.direction, 'exact')
                self.assertAlmostEqual(estimate.value, sigma[n - 1], places=10)

    def test_rank_branch(self):
        T = FiniteOperator(np.outer([1.0, 2.0, 3.0], [1.0, 0.0, 1.0]), 1, 3)
        estimate = gelfand_number(T, 2, self.budget)
        self.assertEqual((estimate.value, estimate.direction), (0.0, 'exact'))

    def test_operator_norm_branch(self):
        estimate = kolmogorov_number(self.T, 1, self.budget)
        self.assertEqual(estimate.direction, 'exact')
        self.assertAlmostEqual(estimate.value, 3.0)

    def test_index_validation(self):
        with self.assertRaises(ValidationError):
            bernstein_number(self.T, 0, self.budget)
        with self.assertRaises(ValidationError):
            bernstein_number(self.T, 4, self.budget)
        with self.assertRaises(ValidationError):
            estimate_width('entropy', self.T, 1, self.budget)

    def test_search_directions(self):
        self.assertEqual(bernstein_number(self.T, 2, self.budget).direction, 'lower_bound')
        self.assertEqual(gelfand_number(self.T, 2, self.budget).direction, 'upper_bound')
        self.assertEqual(kolmogorov_number(self.T, 2, self.budget).direction, 'upper_bound')
        self.assertIn(approximation_number(self.T, 2, self.budget).direction, ('upper_bound', 'heuristic'))
        self.assertIn(weyl_number(self.T, 2, self.budget).direction, ('lower_bound', 'heuristic'))

    def test_search_ordering(self):
        """cota inferior de b abaixo das cotas superiores de c e d"""
        b = bernstein_number(self.T, 2, self.budget).value
        c = gelfand_number(self.T, 2, self.budget).value
        d = kolmogorov_number(self.T, 2, self.budget).value
        a = approximation_number(self.T, 2, self.budget).value
        tol = 1e-8
        self.assertLessEqual(b, c + tol)
        self.assertLessEqual(b, d + tol)
        # a_2 <= ||diag(0, 2, 1)|| = 2
        self.assertLessEqual(a, 2.0 + tol)

    def test_determinism(self):
        first = bernstein_number(self.T, 2, self.budget)
        second = bernstein_number(self.T, 2, self.budget)
        self.assertEqual(first.value, second.value)

    def test_restricted_norm_exact_for_hilbert_target(self):
        A = np.random.default_rng(42).standard_normal((3, 4))
        B = np.linalg.qr(np.random.default_rng(7).standard_normal((4, 2)))[0]
        value, witness, exact = restricted_norm(A, B, TWO, TWO, self.budget, 0, True)
        self.assertTrue(exact)
        self.assertAlmostEqual(value, np.linalg.svd(A @ B, compute_uv=False)[0])


class TestMonotonicity(unittest.TestCase):
    def test_upper_bounds_use_running_minimum(self):
        sequence = [_estimate('gelfand', n, v, 'upper_bound') for n, v in enumerate([1.0, 2.0, 0.5], start=1)]
        clamped = enforce_monotone(sequence)
        self.assertEqual([e.value for e in clamped], [1.0, 1.0, 0.5])
        self.assertTrue(clamped[1].diagnostics.clamped)
        self.assertFalse(clamped[2].diagnostics.clamped)
        # entrada intacta
        self.assertEqual(sequence[1].value, 2.0)

    def test_lower_bounds_use_reverse_maximum(self):
        sequence = [_estimate('bernstein', n, v, 'lower_bound') for n, v in enumerate([0.5, 1.0, 0.2], start=1)]
        lifted = enforce_monotone(sequence)
        self.assertEqual([e.value for e in lifted], [1.0, 1.0, 0.2])
        self.assertTrue(lifted[0].diagnostics.clamped)

    def test_exact_values_anchor(self):
        sequence = [
            _estimate('gelfand', 1, 1.0, 'exact'),
            _estimate('gelfand', 2, 1.5, 'upper_bound'),
        ]
        self.assertEqual(enforce_monotone(sequence)[1].value, 1.0)

    def test_width_table_is_nonincreasing(self):
        T = FiniteOperator(np.random.default_rng(42).standard_normal((4, 4)), 1, 2)
        table = width_table(T, ['gelfand', 'bernstein'], budget=OptimBudget(restarts=4, max_iter=100))
        for kind, estimates in table.items():
            values = [e.value for e in estimates]
            self.assertEqual([e.n for e in estimates], [1, 2, 3, 4])
            for a, b in zip(values, values[1:]):
                self.assertLessEqual(b, a + 1e-9, kind)

    def test_width_table_guard(self):
        with self.assertRaises(GuardError):
            width_table(FiniteOperator.identity_of(17, 1, 2))


class TestChecks(unittest.TestCase):
    def setUp(self):
        self.budget = OptimBudget(restarts=8, max_iter=150, seed=42)

    def test_hilbert_collapse(self):
        report = check_hilbert_collapse(np.random.default_rng(42).standard_normal((4, 4)), self.budget)
        self.assertTrue(report.passed)
        self.assertLess(report.lhs, 1e-8)

    def test_bern_gelfand_hilbert(self):
        report = check_bern_gelfand_duality(4, 2, 2, 2, self.budget)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.product, 1.0)

    def test_bern_gelfand_full_dimension(self):
        """b_4(id_{1,2}^4) · c_1(id_{2,1}^4) = 4^{-1/2} · 2"""
        report = check_bern_gelfand_duality(4, 4, 1, 2, self.budget)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.product, 1.0)

    def test_bern_gelfand_invalid_index(self):
        with self.assertRaises(ValidationError):
            check_bern_gelfand_duality(3, 4, 1, 2, self.budget)

    def test_pukhov_instances(self):
        """✅ Produto b_n · d_{n+1} do dual em [0.9, 1.1] com o orçamento padrão"""
        for n, p1, p2 in PUKHOV_INSTANCES:
            with self.subTest(n=n, p1=p1, p2=p2):
                report = check_pukhov(n, p1, p2, OptimBudget())
                self.assertFalse(report.inconclusive)
                self.assertTrue(report.passed, report.to_dict())
                self.assertGreaterEqual(report.product, 0.9)
                self.assertLessEqual(report.product, 1.1)

    def test_bern_gelfand_pairs(self):
        for m, n, p1, p2 in BERN_GELFAND_PAIRS:
            with self.subTest(m=m, n=n, p1=p1, p2=p2):
                report = check_bern_gelfand_duality(m, n, p1, p2, OptimBudget())
                self.assertTrue(report.passed, report.to_dict())
                self.assertLessEqual(abs(report.product - 1.0), 0.1)

    def test_pukhov_inconclusive_above_cap(self):
        report = check_pukhov(7, 1, 2, self.budget)
        self.assertTrue(report.inconclusive)
        self.assertFalse(report.passed)

    def test_pietsch(self):
        certified = check_pietsch(FiniteOperator.diagonal([4, 2, 1], 2, 2), 2, self.budget)
        self.assertTrue(certified.passed)
        diagnostic = check_pietsch(FiniteOperator.diagonal([4, 2, 1], 1, 2), 2, self.budget)
        self.assertTrue(diagnostic.diagnostic)

    def test_pietsch_index_above_dimension(self):
        report = check_pietsch(FiniteOperator.identity_of(2, 2, 2), 2, self.budget)
        self.assertEqual(report.lhs, 0.0)
        self.assertTrue(report.passed)

    def test_sandwich(self):
        report = check_sandwich(FiniteOperator.identity_of(3, 1, 2), 2, self.budget)
        self.assertTrue(report.passed)
        self.assertEqual(set(report.values), {'bernstein', 'gelfand', 'kolmogorov', 'approximation'})

    def test_tikhomirov(self):
        self.assertTrue(check_tikhomirov(FiniteOperator.identity_of(4, 1, 2), 2, self.budget).passed)

    def test_ideal_property(self):
        report = check_ideal_property([0.5, 1.0, 2.0], 2, self.budget)
        self.assertTrue(report.passed)
        self.assertAlmostEqual(report.lhs, 1.0)
        self.assertAlmostEqual(report.rhs, 2.0)
        with self.assertRaises(ValidationError):
            check_ideal_property([1.0, -1.0], 1, self.budget)


if __name__ == '__main__':
    unittest.main()
