# ============================================================================
# FILE: tests/test_integration.py - Testes de Integração (CLI e experimentos)
# ============================================================================

import io
import json
from fractions import Fraction
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
from unittest import mock

import numpy as np

import main as cli
from config.grids import DECAY_PRESET, PROBE_CONFIGS, PROBE_LEVELS
from config.settings import settings
from core.exceptions import ValidationError
from core.exponents import ParamSet
from core.operator_norm import OptimBudget
from experiments import (
    DECAY_COLUMNS,
    DecayRow,
    ReportGenerator,
    fit_decay,
    run_decay_experiment,
    run_probe_sweep,
    run_width_table,
)
from hypercross.probes import predicted_exponents
from rates.classifiers import bernstein_rate_mixed
from verification import CheckResult, InvariantSuite
from verification.case_tables import WEYL_MIXED
from verification.invariant_suite import CASE_TABLES


def run_cli(*args):
    """Executa main() e devolve (código de saída, stdout)"""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli.main(list(args))
    return code, buffer.getvalue()


class TestMatrixCommand(unittest.TestCase):
    def test_closed_form_row(self):
        """✅ b_5(id_{1,2}^5) = 5^{-1/2}"""
        code, out = run_cli('matrix', '--m', '5', '--p1', '1', '--p2', '2', '--kinds', 'bernstein',
                            '--restarts', '8', '--seed', '7')
        self.assertEqual(code, 0)
        df = ReportGenerator.read_csv(out)
        self.assertEqual(list(df.columns), cli.MATRIX_COLUMNS)
        self.assertEqual(len(df), 5)
        last = df[df['n'] == 5].iloc[0]
        self.assertAlmostEqual(last['value'], 5 ** -0.5, places=6)
        self.assertEqual(last['direction'], 'exact')

    def test_hilbert_identity_all_kinds(self):
        code, out = run_cli('matrix', '--m', '4', '--p1', '2', '--p2', '2', '--kinds', 'all', '--restarts', '4')
        self.assertEqual(code, 0)
        df = ReportGenerator.read_csv(out)
        self.assertEqual(len(df), 20)
        self.assertTrue(np.all(df['value'] == 1.0))
        self.assertTrue(np.all(df['direction'] == 'exact'))

    def test_determinism(self):
        """✅ Mesma configuração, mesma saída byte a byte"""
        args = ('matrix', '--m', '3', '--p1', '1', '--p2', '3', '--kinds', 'gelfand,bernstein',
                '--restarts', '4', '--seed', '3')
        self.assertEqual(run_cli(*args), run_cli(*args))

    def test_config_echo(self):
        _, out = run_cli('matrix', '--m', '2', '--p1', '2', '--p2', '2', '--seed', '11', '--restarts', '2')
        header = out.splitlines()[0]
        self.assertTrue(header.startswith('# config: '))
        config = json.loads(header[len('# config: '):])
        self.assertEqual(config['seed'], 11)
        self.assertEqual(config['command'], 'matrix')

    def test_config_file_precedence(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'config.json'
            path.write_text(json.dumps({'m': 3, 'p1': '2', 'p2': '2', 'kinds': 'weyl'}))
            code, out = run_cli('matrix', '--config', str(path), '--m', '2', '--restarts', '2')
        self.assertEqual(code, 0)
        df = ReportGenerator.read_csv(out)
        self.assertEqual(len(df), 2)
        self.assertEqual(set(df['kind']), {'weyl'})

    def test_json_and_svg_formats(self):
        code, out = run_cli('matrix', '--m', '2', '--p1', '2', '--p2', '2', '--format', 'json', '--restarts', '2')
        self.assertEqual(code, 0)
        document = json.loads(out)
        self.assertIn('config', document)
        self.assertEqual(len(document['widths']), 10)
        code, out = run_cli('matrix', '--m', '2', '--p1', '2', '--p2', '2', '--format', 'svg-plot-data',
                            '--restarts', '2')
        self.assertEqual(code, 0)
        self.assertIn('<polyline data-series="bernstein"', out)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'results' / 'widths.csv'
            code, out = run_cli('matrix', '--m', '2', '--p1', '2', '--p2', '2', '--restarts', '2',
                                '--output', str(path))
            self.assertEqual(code, 0)
            self.assertEqual(out, '')
            self.assertEqual(len(ReportGenerator.read_csv(path.read_text())), 10)

    def test_exit_codes(self):
        self.assertEqual(run_cli('matrix', '--m', '17')[0], 3)
        self.assertEqual(run_cli('matrix', '--m', '3', '--p1', '0.5')[0], 2)
        self.assertEqual(run_cli('matrix', '--m', '3', '--kinds', 'entropy')[0], 2)
        self.assertEqual(run_cli('matrix', '--m', '3', '--restarts', '0')[0], 2)
        self.assertEqual(run_cli('matrix', '--bogus')[0], 2)

    def test_bad_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'config.json'
            path.write_text(json.dumps({'mystery': 1}))
            self.assertEqual(run_cli('matrix', '--config', str(path))[0], 2)
            path.write_text('{not json')
            self.assertEqual(run_cli('matrix', '--config', str(path))[0], 2)


class TestRatesCommand(unittest.TestCase):
    def _rates(self, *args):
        code, out = run_cli('rates', *args)
        return code, json.loads(out)

    def test_mixed_case_ii(self):
        code, report = self._rates('--scale', 'mixed', '--d', '2', '--t', '1', '--p1', '2', '--p2', '2')
        self.assertEqual(code, 0)
        self.assertEqual(report['bernstein']['alpha'], 1.0)
        self.assertEqual(report['bernstein']['beta'], 1.0)
        self.assertEqual(report['bernstein']['case'], 'ii')
        self.assertEqual(report['region']['region'], 'I')
        self.assertIn('approximation', report)

    def test_isotropic_case_i(self):
        code, report = self._rates('--scale', 'isotropic', '--d', '2', '--t', '1.5', '--p1', '1', '--p2', '2')
        self.assertEqual(code, 0)
        self.assertEqual((report['bernstein']['alpha'], report['bernstein']['beta']), (0.75, 0.0))
        self.assertNotIn('region', report)

    def test_open_case(self):
        _, report = self._rates('--scale', 'mixed', '--d', '2', '--t', '1', '--p1', '4', '--p2', '6')
        self.assertEqual(report['bernstein']['beta'], [1.0, 1.25])
        self.assertFalse(report['bernstein']['two_sided'])

    def test_boundary_exits_3(self):
        code, report = self._rates('--scale', 'isotropic', '--d', '2', '--t', '0.5', '--p1', '4', '--p2', '1.5')
        self.assertEqual(code, 3)
        self.assertIn('limiting case not covered', report['bernstein']['error'])

    def test_partial_tables(self):
        """Tabela sem regime vira {"error": ...} sem mudar o código de saída"""
        code, report = self._rates('--scale', 'mixed', '--d', '2', '--t', '1', '--p1', '3/2', '--p2', '4/3')
        self.assertEqual(code, 0)
        self.assertIn('error', report['approximation'])

    def test_invalid_number(self):
        self.assertEqual(run_cli('rates', '--t', 'abc')[0], 2)


class TestThresholdCommand(unittest.TestCase):
    ARGS = ('threshold', '--d', '2', '--t', '1.5', '--p1', '1', '--p2', '2',
            '--jmin', '2', '--jmax', '4', '--trials', '2', '--seed', '42')

    def test_csv_with_fit(self):
        code, out = run_cli(*self.ARGS, '--fit')
        self.assertEqual(code, 0)
        df = ReportGenerator.read_csv(out)
        self.assertEqual(list(df.columns), DECAY_COLUMNS)
        self.assertEqual(df['J'].tolist(), [2, 3, 4])
        fit_line = [line for line in out.splitlines() if line.startswith('# fit: ')]
        self.assertEqual(len(fit_line), 1)
        self.assertIn('alpha_hat', json.loads(fit_line[0][len('# fit: '):]))

    def test_determinism(self):
        self.assertEqual(run_cli(*self.ARGS), run_cli(*self.ARGS))

    def test_guard(self):
        code, out = run_cli('threshold', '--jmax', '30')
        self.assertEqual(code, 3)
        self.assertEqual(out, '')

    def test_regime(self):
        self.assertEqual(run_cli('threshold', '--p1', '4', '--p2', '2', '--t', '2')[0], 3)


class TestVerifyCommand(unittest.TestCase):
    def test_unknown_fault(self):
        self.assertEqual(run_cli('verify', '--fault', 'bogus')[0], 2)
        with self.assertRaises(ValidationError):
            InvariantSuite(fault='bogus')

    def test_failure_exit_code(self):
        """Qualquer verificação falhando -> código 1 com a verificação nomeada"""
        fake = [CheckResult('monotonicity', False, 'sequence rises at n=2')]
        with mock.patch.object(InvariantSuite, 'run', return_value=fake), \
                mock.patch.object(InvariantSuite, 'all_passed', new_callable=mock.PropertyMock, return_value=False):
            code, out = run_cli('verify', '--fault', 'monotonicity')
        self.assertEqual(code, 1)
        self.assertIn('monotonicity,False', out)


class TestInvariantSuite(unittest.TestCase):
    def setUp(self):
        self.budget = OptimBudget(restarts=4, max_iter=100, seed=0)

    def test_monotonicity_fault(self):
        self.assertTrue(InvariantSuite(self.budget).check_monotonicity().passed)
        result = InvariantSuite(self.budget, fault='monotonicity').check_monotonicity()
        self.assertFalse(result.passed)
        self.assertIn('rises', result.detail)

    def test_block_identity_fault(self):
        self.assertFalse(InvariantSuite(self.budget, fault='block-identity').check_block_identity().passed)

    def test_rate_table_checks(self):
        """✅ Contagens completas: 10^4 conjuntos válidos (10^3 no colapso d=1)"""
        suite = InvariantSuite(self.budget)
        results = {check.__name__: check() for check in (
            suite.check_d1_collapse, suite.check_dominance,
            suite.check_nonlinear_dominance, suite.check_region_consistency,
        )}
        for result in results.values():
            self.assertTrue(result.passed, f"{result.name}: {result.detail}")
        self.assertEqual(results['check_d1_collapse'].detail, '1000 valid parameter sets')
        self.assertEqual(results['check_dominance'].detail, '10000 valid parameter sets')
        self.assertEqual(results['check_region_consistency'].detail, '10000 mixed, 10000 isotropic parameter sets')

    def test_case_exhaustiveness_counts(self):
        result = InvariantSuite(self.budget).check_case_exhaustiveness()
        self.assertTrue(result.passed, result.detail)
        for table in CASE_TABLES:
            self.assertIn(f"{table}: 10000 sets", result.detail)

    def test_case_exhaustiveness_detects_wrong_table(self):
        """Classificador de Bernstein conferido contra a tabela de Weyl deve falhar"""
        swapped = {'weyl-mixed': (bernstein_rate_mixed, 'mixed', WEYL_MIXED)}
        with mock.patch.dict(CASE_TABLES, swapped):
            result = InvariantSuite(self.budget, samples=200).check_case_exhaustiveness()
        self.assertFalse(result.passed)
        self.assertIn('weyl-mixed', result.detail)

    def test_sample_target_not_reached(self):
        """Sem conjuntos válidos suficientes o check falha em vez de passar com menos"""
        with mock.patch.object(settings, 'MAX_DRAWS_PER_SAMPLE', 0):
            result = InvariantSuite(self.budget, samples=50).check_dominance()
        self.assertFalse(result.passed)
        self.assertEqual(result.detail, '0 valid parameter sets')

    def test_threshold_checks(self):
        suite = InvariantSuite(self.budget)
        self.assertTrue(suite.check_soft_threshold_contraction().passed)
        self.assertTrue(suite.check_sparsify_continuity().passed)


class TestExperiments(unittest.TestCase):
    def test_decay_rows_round_trip(self):
        """✅ CSV volta aos mesmos DecayRow (floats em precisão total)"""
        params = ParamSet.build(2, '1.5', 1, 2)
        rows = run_decay_experiment(params, [2, 3], trials=2, seed=5)
        text = ReportGenerator.to_csv([row.to_row() for row in rows], DECAY_COLUMNS, {'seed': 5})
        parsed = [DecayRow(**record) for record in ReportGenerator.read_csv(text).to_dict('records')]
        self.assertEqual(parsed, rows)

    def test_block_concentrated_generator(self):
        params = ParamSet.build(2, '1.5', 1, 2)
        rows = run_decay_experiment(params, [3, 4], trials=1, seed=1, generator='block-concentrated')
        self.assertTrue(all(row.max_error > 0 for row in rows))

    def test_probe_sweep_slope(self):
        sweep = run_probe_sweep(ParamSet.build(2, 1, 2, 2), range(3, 7), OptimBudget(restarts=2))
        self.assertAlmostEqual(sweep.fit.slope, -1.0, places=9)
        self.assertLess(sweep.deviation, 1e-9)

    def test_width_table_runner(self):
        estimates = run_width_table(3, 2, 2, ['gelfand'], OptimBudget(restarts=2))
        self.assertEqual([e.n for e in estimates], [1, 2, 3])


class TestDecayAcceptance(unittest.TestCase):
    """Preset d=2, t=1.5, p1=1, p2=2, J=4..10, 20 tentativas por nível"""

    @classmethod
    def setUpClass(cls):
        cls.params = ParamSet.build(DECAY_PRESET['d'], DECAY_PRESET['t'], DECAY_PRESET['p1'], DECAY_PRESET['p2'])
        cls.levels = list(range(DECAY_PRESET['jmin'], DECAY_PRESET['jmax'] + 1))
        cls.dense = run_decay_experiment(cls.params, cls.levels, trials=settings.DECAY_TRIALS,
                                         seed=settings.DEFAULT_SEED)
        cls.concentrated = run_decay_experiment(cls.params, cls.levels, trials=settings.DECAY_TRIALS,
                                                seed=settings.DEFAULT_SEED, generator='block-concentrated')

    def test_fitted_rate(self):
        """✅ α̂ em [1.35, 1.65]"""
        fit = fit_decay(self.dense)
        self.assertIsNotNone(fit)
        self.assertGreaterEqual(-fit.slope, 1.35)
        self.assertLessEqual(-fit.slope, 1.65)

    def test_worst_error_nonincreasing(self):
        errors = [row.max_error for row in self.dense]
        for J, (a, b) in zip(self.levels[1:], zip(errors, errors[1:])):
            self.assertLessEqual(b, a, f"erro cresce em J={J}")

    def test_sparsity_constant_stable(self):
        """c0 = não nulos / (2^J J) varia menos de 4x"""
        c0 = [row.c0 for row in self.dense]
        self.assertGreater(min(c0), 0.0)
        self.assertLess(max(c0) / min(c0), 4.0)

    def test_error_constant_stable_on_extremal_family(self):
        """c1 = erro · 2^{Jt} · J^{1/2} varia menos de 4x no gerador concentrado"""
        c1 = [row.c1 for row in self.concentrated]
        for row in self.concentrated:
            expected = row.max_error * 2.0 ** (1.5 * row.J) * row.J ** 0.5
            self.assertAlmostEqual(row.c1, expected, delta=1e-9 * expected)
        self.assertGreater(min(c1), 0.0)
        self.assertLess(max(c1) / min(c1), 4.0)


class TestBlockSweepAcceptance(unittest.TestCase):
    def test_configured_sweeps_match_prediction(self):
        """✅ Inclinação em μ = 4..10 a menos de 0.1 de -t + (1/p1 - 1/p2)_+"""
        expected = {'hilbert': (Fraction(-1), Fraction(0)), 'l1_to_l2': (Fraction(-1), Fraction(0))}
        for name, config in PROBE_CONFIGS.items():
            with self.subTest(config=name):
                params = ParamSet.build(config['d'], config['t'], config['p1'], config['p2'])
                self.assertEqual(predicted_exponents(params), expected[name])
                sweep = run_probe_sweep(params, PROBE_LEVELS, OptimBudget(restarts=4))
                self.assertEqual(sweep.predicted_slope, -1.0)
                self.assertLessEqual(sweep.deviation, 0.1)


class TestSetup(unittest.TestCase):
    def test_bootstrap(self):
        """✅ Diretórios, .env e .gitignore criados; .env existente preservado"""
        import setup
        with tempfile.TemporaryDirectory() as tmp, redirect_stdout(io.StringIO()):
            root = Path(tmp)
            setup.create_directory_structure(root)
            setup.create_env_file(root)
            setup.create_gitignore(root)
            self.assertTrue((root / "data" / "logs").is_dir())
            self.assertTrue((root / "data" / "results").is_dir())
            self.assertIn("WIDTHS_LAB_THREADS=1", (root / ".env").read_text())
            (root / ".env").write_text("LOG_LEVEL=DEBUG\n")
            setup.create_env_file(root)
            self.assertEqual((root / ".env").read_text(), "LOG_LEVEL=DEBUG\n")
            self.assertIn(".env", (root / ".gitignore").read_text())

    def test_dependencies_present(self):
        import setup
        with redirect_stdout(io.StringIO()):
            self.assertEqual(setup.check_dependencies(), [])


if __name__ == '__main__':
    unittest.main()
