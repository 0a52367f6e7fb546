import tempfile
import unittest
from fractions import Fraction
from pathlib import Path
import numpy as np

from core.exceptions import GuardError, RegimeError, ValidationError
from core.exponents import ParamSet
from core.operator_norm import OptimBudget
from hypercross import (
    CoeffField,
    HyperIndex,
    LevelIndex,
    block_dimension,
    block_embedding_norm_probe,
    bnorm,
    compositions,
    enumerate_block,
    fnorm,
    level_pnorms,
    predicted_exponents,
    truncate,
)
from rates import fit_dyadic_slope


class TestIndexing(unittest.TestCase):
    def test_level_positions(self):
        level = LevelIndex((1, 2))
        positions = level.positions()
        self.assertEqual(level.total, 3)
        self.assertEqual(level.cardinality, 8)
        self.assertEqual(positions.shape, (8, 2))
        self.assertEqual(tuple(positions[0]), (0, 0))
        self.assertEqual(tuple(positions[1]), (0, 1))
        self.assertEqual(tuple(positions[-1]), (1, 3))

    def test_hyper_index_range(self):
        HyperIndex((2, 0), (3, 0))
        with self.assertRaises(ValidationError):
            HyperIndex((2, 0), (4, 0))
        with self.assertRaises(ValidationError):
            HyperIndex((2, 0), (1,))
        with self.assertRaises(ValidationError):
            LevelIndex((-1,))

    def test_dyadic_cell(self):
        cell = HyperIndex((1, 2), (1, 3)).cell()
        self.assertEqual(cell.bounds(), [(0.5, 1.0), (0.75, 1.0)])
        self.assertEqual(cell.volume, 0.125)
        self.assertTrue(cell.indicator([0.6, 0.8]))
        self.assertFalse(cell.indicator([0.4, 0.8]))

    def test_compositions(self):
        self.assertEqual(compositions(2, 2), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(len(compositions(3, 3)), 10)

    def test_block_layout(self):
        layout = enumerate_block(3, 2)
        levels, positions = layout.arrays()
        self.assertEqual(block_dimension(3, 2), 32)
        self.assertEqual(layout.dimension, 32)
        self.assertEqual(len(layout), 4)
        self.assertEqual(levels.shape, (32, 2))
        self.assertTrue(np.all(levels.sum(axis=1) == 3))
        self.assertEqual(len(list(layout.indices())), 32)

    def test_block_guards(self):
        with self.assertRaises(ValidationError):
            enumerate_block(-1, 2)
        with self.assertRaises(ValidationError):
            enumerate_block(2, 0)
        with self.assertRaises(GuardError):
            enumerate_block(70, 2)
        with self.assertRaises(GuardError):
            enumerate_block(25, 2).arrays()


class TestCoeffField(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(42)
        layout = enumerate_block(3, 2)
        self.field = CoeffField.on_block(layout, self.rng.standard_normal(layout.dimension))

    def test_sorted_and_immutable(self):
        field = CoeffField([[1, 0], [0, 0]], [[1, 0], [0, 0]], [2.0, 1.0])
        self.assertEqual(tuple(field.levels[0]), (0, 0))
        self.assertEqual(field.values[0], 1.0)
        with self.assertRaises(ValueError):
            field.values[0] = 5.0

    def test_validation(self):
        with self.assertRaises(ValidationError):
            CoeffField([[1], [1]], [[0], [0]], [1.0, 2.0])
        with self.assertRaises(ValidationError):
            CoeffField([[1]], [[2]], [1.0])
        with self.assertRaises(ValidationError):
            CoeffField([[1]], [[0]], [np.inf])

    def test_dict_round_trip(self):
        entries = {((0, 1), (0, 1)): 1.5, ((2, 0), (3, 0)): -2.0}
        field = CoeffField.from_dict(entries)
        self.assertEqual(field.to_dict(), entries)
        self.assertEqual(field.support_size(), 2)
        self.assertEqual(CoeffField.from_dict({}, d=3).size, 0)

    def test_text_round_trip(self):
        """Floats em repr: leitura devolve o mesmo campo"""
        self.assertEqual(CoeffField.from_text(self.field.to_text()), self.field)
        complex_field = self.field.map_values(lambda v: v * (1 + 0.5j))
        self.assertEqual(CoeffField.from_text(complex_field.to_text()), complex_field)

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'field.txt'
            self.field.save(path)
            self.assertEqual(CoeffField.load(path), self.field)

    def test_text_errors(self):
        with self.assertRaises(ValidationError):
            CoeffField.from_text('1 0 x 0.0\n')
        with self.assertRaises(ValidationError):
            CoeffField.from_text('1 0 1.0\n')
        with self.assertRaises(ValidationError):
            CoeffField.from_text('')
        self.assertEqual(CoeffField.from_text('# d=2\n').d, 2)

    def test_arithmetic(self):
        other = CoeffField.atom((5, 0), (7, 0), 3.0)
        total = self.field.add(other)
        self.assertEqual(total.size, self.field.size + 1)
        difference = total.subtract(other)
        self.assertEqual(difference.restrict_to_block(3), self.field)
        self.assertEqual(difference.restrict_to_block(5).support_size(), 0)
        self.assertEqual(total.truncate(3), self.field)
        self.assertEqual(total.max_level, 5)
        np.testing.assert_allclose(self.field.scale(2.0).values, 2.0 * self.field.values)

    def test_dimension_mismatch(self):
        with self.assertRaises(ValidationError):
            self.field.add(CoeffField.atom((1,), (0,)))


class TestNorms(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(42)

    def _multilevel_field(self, d, J):
        parts = [CoeffField.on_block(enumerate_block(mu, d), self.rng.standard_normal(enumerate_block(mu, d).dimension))
                 for mu in range(J + 1)]
        field = parts[0]
        for part in parts[1:]:
            field = field.add(part)
        return field

    def test_atom(self):
        """átomo no nível ν̄: b = f = 2^{|ν̄|(t - 1/p)}"""
        atom = CoeffField.atom((1, 2), (1, 3), 1.0)
        expected = 2.0 ** (3 * (1.5 - 1 / 3))
        self.assertAlmostEqual(bnorm(atom, 1.5, 3, 2), expected)
        self.assertAlmostEqual(fnorm(atom, 1.5, 3, 2), expected)

    def test_level_pnorms(self):
        field = CoeffField([[0], [1], [1]], [[0], [0], [1]], [1.0, 3.0, 4.0])
        levels, norms = level_pnorms(field, 2)
        self.assertEqual(levels.tolist(), [[0], [1]])
        np.testing.assert_allclose(norms, [1.0, 5.0])

    def test_identity_p_equals_q(self):
        """f = b quando p = q, em qualquer campo finito"""
        field = self._multilevel_field(2, 4)
        for p in ('1', '3/2', '2', '4'):
            b = bnorm(field, 0.5, p, p)
            f = fnorm(field, 0.5, p, p, method='grid')
            self.assertLess(abs(f - b) / b, 1e-10, p)

    def test_refine_does_not_change_value(self):
        field = self._multilevel_field(2, 3)
        base = fnorm(field, 0, 3, 2)
        self.assertAlmostEqual(fnorm(field, 0, 3, 2, refine=2), base, places=12)

    def test_overlapping_levels(self):
        """d=1: λ_0 = 1, λ_{1,0} = 1; q=1 soma, q=∞ máximo"""
        field = CoeffField([[0], [1]], [[0], [0]], [1.0, 2.0])
        self.assertAlmostEqual(fnorm(field, 0, 1, 'inf'), 1.5)
        unit = CoeffField([[0], [1]], [[0], [0]], [1.0, 1.0])
        self.assertAlmostEqual(fnorm(unit, 0, 2, 1), np.sqrt(2.5))

    def test_auto_uses_identity(self):
        field = self._multilevel_field(2, 3)
        self.assertEqual(fnorm(field, 0, 2, 2, method='auto'), bnorm(field, 0, 2, 2))

    def test_empty_field(self):
        self.assertEqual(bnorm(CoeffField.empty(2), 1, 2, 2), 0.0)
        self.assertEqual(fnorm(CoeffField.empty(2), 1, 2, 2), 0.0)

    def test_fnorm_guards(self):
        atom = CoeffField.atom((1,), (0,))
        with self.assertRaises(ValidationError):
            fnorm(atom, 0, 'inf', 2)
        with self.assertRaises(ValidationError):
            fnorm(atom, 0, 2, 2, method='spline')
        with self.assertRaises(GuardError):
            fnorm(CoeffField.atom((1, 0, 0, 0), (0, 0, 0, 0)), 0, 2, 1)
        with self.assertRaises(GuardError):
            fnorm(CoeffField.atom((11,), (0,)), 0, 2, 1)

    def test_triangle_inequality(self):
        """||a + b|| <= ||a|| + ||b|| em pares aleatórios com suportes sobrepostos"""
        for p, q in (('3', '2'), ('3/2', '1'), ('2', 'inf'), ('4', '4/3'), ('1', '2')):
            for _ in range(3):
                a = self._multilevel_field(2, 3)
                b = self._multilevel_field(2, 2).add(CoeffField.atom((4, 0), (5, 0), self.rng.standard_normal()))
                total = a.add(b)
                self.assertLessEqual(fnorm(total, 0.5, p, q), (fnorm(a, 0.5, p, q) + fnorm(b, 0.5, p, q)) * (1 + 1e-12))
                self.assertLessEqual(bnorm(total, 0.5, p, q), (bnorm(a, 0.5, p, q) + bnorm(b, 0.5, p, q)) * (1 + 1e-12))

    def test_absolute_homogeneity(self):
        field = self._multilevel_field(2, 3)
        for p, q in (('3', '2'), ('3/2', '1'), ('2', 'inf')):
            base_f, base_b = fnorm(field, 0.5, p, q), bnorm(field, 0.5, p, q)
            for c in (-2.5, 1.5 - 2j, 0.0):
                scaled = field.scale(c)
                self.assertLessEqual(abs(fnorm(scaled, 0.5, p, q) - abs(c) * base_f), 1e-12 * max(1.0, base_f))
                self.assertLessEqual(abs(bnorm(scaled, 0.5, p, q) - abs(c) * base_b), 1e-12 * max(1.0, base_b))

    def test_truncation_error_decay(self):
        """||λ - S_L λ|| em f(0, p2, 2) decai em L com o expoente previsto para a identidade"""
        params = ParamSet.build(2, 1, 2, '3/2')
        J = 10
        field = CoeffField.empty(2)
        for mu in range(J + 1):
            layout = enumerate_block(mu, 2)
            block = CoeffField.on_block(layout, self.rng.standard_normal(layout.dimension))
            field = field.add(block.scale(1.0 / bnorm(block, params.t, params.p1, params.p1)))
        field = field.scale(1.0 / bnorm(field, params.t, params.p1, params.p1))

        cuts = list(range(2, 7))
        tails = [fnorm(field.subtract(truncate(field, L)), 0, params.p2, 2) for L in cuts]
        for later, earlier in zip(tails[1:], tails[:-1]):
            self.assertLess(later, earlier)
        expected = float(predicted_exponents(params)[0])
        self.assertEqual(expected, -1.0)
        self.assertLess(abs(fit_dyadic_slope(cuts, tails).slope - expected), 0.15)


class TestProbes(unittest.TestCase):
    def setUp(self):
        self.budget = OptimBudget(restarts=4, seed=42)

    def test_predicted_exponents(self):
        self.assertEqual(predicted_exponents(ParamSet.build(2, 1, 2, 2)), (Fraction(-1), Fraction(0)))
        self.assertEqual(predicted_exponents(ParamSet.build(2, '1.5', 1, 2)), (Fraction(-1), Fraction(0)))
        self.assertEqual(predicted_exponents(ParamSet.build(2, 1, 4, 2)), (Fraction(-1), Fraction(1, 4)))

    def test_hilbert_probe_is_exact(self):
        """p1 = p2 = 2: a razão vale 2^{-μ t} para todo campo do bloco"""
        result = block_embedding_norm_probe(4, ParamSet.build(2, 1, 2, 2), self.budget)
        self.assertAlmostEqual(result.value, 2.0 ** -4, places=12)
        self.assertEqual(result.to_dict()['predicted_exponent'], -1.0)

    def test_probe_dominates_atom(self):
        params = ParamSet.build(2, '1.5', 1, 2)
        result = block_embedding_norm_probe(4, params, self.budget)
        atom = CoeffField.atom((4, 0), (0, 0))
        ratio = fnorm(atom, 0, 2, 2, method='auto') / bnorm(atom, params.t, 1, 1)
        self.assertGreaterEqual(result.value, ratio - 1e-15)

    def test_probe_requires_compactness(self):
        with self.assertRaises(RegimeError):
            block_embedding_norm_probe(4, ParamSet.build(2, '0.3', 1, 2), self.budget)


if __name__ == '__main__':
    unittest.main()
