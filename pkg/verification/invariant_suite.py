"""
Bateria de verificações cruzadas do comando `verify`.

Cada verificação devolve CheckResult(nome, passou, detalhe, testemunha);
falhas não interrompem a bateria. Faults injetam defeitos conhecidos para
confirmar que a verificação correspondente falha.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional
import numpy as np
from loguru import logger

from config.grids import (
    BERN_GELFAND_PAIRS,
    CLOSED_FORM_EXPONENTS,
    CLOSED_FORM_MAX_M,
    PROBE_CONFIGS,
    PROBE_LEVELS,
    PUKHOV_INSTANCES,
    SANDWICH_INSTANCES,
)
from config.settings import settings
from core.exceptions import LimitingCaseError, RegimeError, ValidationError
from core.exponents import ParamSet
from core.operator_norm import OptimBudget
from core.utils import restart_rng
from experiments.width_tables import run_probe_sweep
from hypercross.fields import CoeffField
from hypercross.indexing import enumerate_block
from hypercross.norms import bnorm, fnorm
from rates.classifiers import (
    bernstein_rate_isotropic,
    bernstein_rate_mixed,
    nonlinear_width_rate,
    weyl_rate_isotropic,
    weyl_rate_mixed,
)
from rates.regions import compare_bernstein_weyl, identity_order
from thresholding.generators import unit_ball_field
from thresholding.schedule import ThresholdSchedule
from thresholding.sparsifier import soft_threshold, sparsify
from verification.case_tables import (
    BERNSTEIN_ISOTROPIC,
    BERNSTEIN_MIXED,
    WEYL_ISOTROPIC,
    WEYL_MIXED,
    matching_cases,
)
from widths.checks import (
    check_bern_gelfand_duality,
    check_hilbert_collapse,
    check_ideal_property,
    check_pietsch,
    check_pukhov,
    check_sandwich,
    check_tikhomirov,
)
from widths.closed_forms import exact_identity_width
from widths.operators import FiniteOperator
from widths.tables import enforce_monotone, estimate_width

FAULTS = ('monotonicity', 'block-identity')
EXPONENT_GRID = ['1', '4/3', '3/2', '2', '3', '4', '6', 'inf']
# (d, μ, p, campos): 100 campos no total
BLOCK_IDENTITY_CASES = [(1, 8, '1', 30), (2, 8, '2', 30), (2, 6, '3', 20), (3, 6, '3/2', 18), (3, 8, '4', 2)]
# tabela -> (classificador, escala, casos em predicados planos)
CASE_TABLES = {
    'bernstein-isotropic': (bernstein_rate_isotropic, 'isotropic', BERNSTEIN_ISOTROPIC),
    'bernstein-mixed': (bernstein_rate_mixed, 'mixed', BERNSTEIN_MIXED),
    'weyl-isotropic': (weyl_rate_isotropic, 'isotropic', WEYL_ISOTROPIC),
    'weyl-mixed': (weyl_rate_mixed, 'mixed', WEYL_MIXED),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ''
    witness: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'name': self.name, 'passed': self.passed, 'detail': self.detail, 'witness': self.witness}


def _lexicographic_faster_or_equal(a: tuple, b: tuple) -> bool:
    """n^{-α_a}(log n)^{β_a} <= C n^{-α_b}(log n)^{β_b}"""
    return a[0] > b[0] or (a[0] == b[0] and a[1] <= b[1])


def _sample_params(rng: np.random.Generator, d: int = None) -> ParamSet:
    p1 = EXPONENT_GRID[int(rng.integers(len(EXPONENT_GRID)))]
    p2 = EXPONENT_GRID[int(rng.integers(1, len(EXPONENT_GRID) - 1))]
    dim = int(rng.integers(1, 5)) if d is None else d
    t = Fraction(int(rng.integers(1, 400)), 100) + Fraction(1, 997)
    return ParamSet.build(dim, t, p1, p2)


class InvariantSuite:
    """Executa a bateria completa com orçamento e semente fixos"""

    def __init__(self, budget: OptimBudget = None, fault: Optional[str] = None, samples: Optional[int] = None):
        if fault is not None and fault not in FAULTS:
            raise ValidationError(f"unknown fault '{fault}', expected one of {FAULTS}")
        self.budget = (budget or OptimBudget()).validate()
        self.fault = fault
        self.samples = None if samples is None else int(samples)
        self.results: List[CheckResult] = []

    @property
    def checks(self) -> List[Callable[[], CheckResult]]:
        return [
            self.check_closed_forms,
            self.check_hilbert_collapse,
            self.check_pukhov,
            self.check_bern_gelfand,
            self.check_pietsch,
            self.check_sandwich,
            self.check_tikhomirov,
            self.check_monotonicity,
            self.check_ideal_property,
            self.check_block_identity,
            self.check_probe_decay,
            self.check_soft_threshold_contraction,
            self.check_sparsify_continuity,
            self.check_case_exhaustiveness,
            self.check_d1_collapse,
            self.check_dominance,
            self.check_nonlinear_dominance,
            self.check_region_consistency,
        ]

    def run(self) -> List[CheckResult]:
        logger.info(f"Bateria de verificação: {len(self.checks)} checks, seed={self.budget.seed}, fault={self.fault}")
        self.results = []
        for check in self.checks:
            try:
                result = check()
            except (ValidationError, RegimeError) as e:
                result = CheckResult(check.__name__.replace('check_', ''), False, f"error: {e}")
            (logger.info if result.passed else logger.error)(
                f"{'PASS' if result.passed else 'FAIL'} {result.name}: {result.detail}"
            )
            self.results.append(result)
        return self.results

    @property
    def all_passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    # ---------- larguras de matrizes ----------

    def check_closed_forms(self) -> CheckResult:
        for p in CLOSED_FORM_EXPONENTS:
            for m in range(1, CLOSED_FORM_MAX_M + 1):
                for n in range(1, m + 1):
                    value = estimate_width('bernstein', FiniteOperator.identity_of(m, p, p), n, self.budget).value
                    if abs(value - 1.0) > 1e-6:
                        return CheckResult('closed_forms', False, f"b_{n}(id_{p},{p}^{m}) = {value}",
                                           {'m': m, 'n': n, 'p': p})
        for m in range(1, CLOSED_FORM_MAX_M + 1):
            value = estimate_width('bernstein', FiniteOperator.identity_of(m, 1, 2), m, self.budget).value
            if abs(value - m ** -0.5) > 0.01 * m ** -0.5:
                return CheckResult('closed_forms', False, f"b_{m}(id_1,2^{m}) = {value}", {'m': m})
        # permutação: isometria de ℓ_p, sem atalho de identidade, resolvida pela busca
        small = self.budget.scaled(restarts=16)
        for p in CLOSED_FORM_EXPONENTS:
            for m in range(2, 5):
                P = FiniteOperator(np.roll(np.eye(m), 1, axis=0), p, p)
                for n in range(2, m + 1):
                    value = estimate_width('bernstein', P, n, small).value
                    if abs(value - 1.0) > 1e-6:
                        return CheckResult('closed_forms', False, f"b_{n}(P_{p},{p}^{m}) = {value}",
                                           {'m': m, 'n': n, 'p': p})
        expected = {('bernstein', 9, 9, 1, 2): 1 / 3, ('bernstein', 7, 7, 3, 2): 1.0, ('kolmogorov', 5, 3, 2, 2): 1.0}
        for (kind, m, n, p1, p2), target in expected.items():
            if abs(exact_identity_width(kind, m, n, p1, p2) - target) > 1e-12:
                return CheckResult('closed_forms', False, f"{kind} m={m} n={n}", {'p1': p1, 'p2': p2})
        return CheckResult('closed_forms', True, f"p in {CLOSED_FORM_EXPONENTS}, m <= {CLOSED_FORM_MAX_M}")

    def check_hilbert_collapse(self) -> CheckResult:
        worst = 0.0
        for index in range(20):
            M = restart_rng(self.budget.seed, index).standard_normal((6, 6))
            report = check_hilbert_collapse(M, self.budget)
            worst = max(worst, report.lhs)
            if not report.passed:
                return CheckResult('hilbert_collapse', False, f"matrix #{index}: deviation {report.lhs:.3e}")
        return CheckResult('hilbert_collapse', True, f"20 matrices 6x6, max deviation {worst:.3e}")

    def _products(self, name: str, reports) -> CheckResult:
        failed = [r for r in reports if not r.passed and not r.inconclusive]
        detail = ', '.join(f"{r.name}={r.product:.4f}" for r in reports)
        if failed:
            return CheckResult(name, False, detail, failed[0].to_dict())
        return CheckResult(name, True, detail)

    def check_pukhov(self) -> CheckResult:
        return self._products('pukhov', [check_pukhov(n, p1, p2, self.budget) for n, p1, p2 in PUKHOV_INSTANCES])

    def check_bern_gelfand(self) -> CheckResult:
        reports = [check_bern_gelfand_duality(m, n, p1, p2, self.budget) for m, n, p1, p2 in BERN_GELFAND_PAIRS]
        return self._products('bern_gelfand', reports)

    def check_pietsch(self) -> CheckResult:
        rng = restart_rng(self.budget.seed, 7)
        G = rng.standard_normal((6, 6))
        operators = [
            (FiniteOperator.diagonal([4, 2, 1], 2, 2), 2),
            (FiniteOperator.identity_of(4, 2, 2), 2),
            (FiniteOperator(G @ G.T + 0.1 * np.eye(6), 2, 2), 3),
        ]
        for T, n in operators:
            report = check_pietsch(T, n, self.budget)
            if not report.passed:
                return CheckResult('pietsch', False, f"{report.name}: {report.lhs} > {report.rhs}", report.to_dict())
        return CheckResult('pietsch', True, f"{len(operators)} Hilbert operators")

    def check_sandwich(self) -> CheckResult:
        for m, n, p1, p2 in SANDWICH_INSTANCES:
            report = check_sandwich(FiniteOperator.identity_of(m, p1, p2), n, self.budget)
            if not report.passed:
                return CheckResult('sandwich', False, report.name, report.to_dict())
        rng = restart_rng(self.budget.seed, 11)
        T = FiniteOperator(rng.standard_normal((3, 3)), 1, 2)
        report = check_sandwich(T, 2, self.budget)
        return CheckResult('sandwich', bool(report.passed), f"{len(SANDWICH_INSTANCES) + 1} instances", report.to_dict())

    def check_tikhomirov(self) -> CheckResult:
        report = check_tikhomirov(FiniteOperator.identity_of(4, 1, 2), 2, self.budget)
        return CheckResult('tikhomirov', bool(report.passed), f"{report.lhs:.6g} <= {report.rhs:.6g}")

    def check_monotonicity(self) -> CheckResult:
        rng = restart_rng(self.budget.seed, 13)
        T = FiniteOperator(rng.standard_normal((4, 4)), 1, 2)
        estimates = [estimate_width('gelfand', T, n, self.budget) for n in range(1, 5)]
        if self.fault == 'monotonicity':
            # sequência crescente sem a correção
            for offset, e in enumerate(estimates):
                e.value = 1.0 + offset
            sequence = estimates
        else:
            sequence = enforce_monotone(estimates)
        values = [e.value for e in sequence]
        rising = [n for n in range(1, len(values)) if values[n] > values[n - 1] + settings.MONOTONE_CLAMP_TOL]
        if rising:
            return CheckResult('monotonicity', False, f"sequence rises at n={rising[0] + 1}", {'values': values})
        return CheckResult('monotonicity', True, f"gelfand n=1..4 nonincreasing")

    def check_ideal_property(self) -> CheckResult:
        s = 0.5 + restart_rng(self.budget.seed, 17).random(4)
        report = check_ideal_property(s, 2, self.budget)
        return CheckResult('ideal_property', bool(report.passed), f"{report.lhs:.6g} <= {report.rhs:.6g}")

    # ---------- cruz hiperbólica ----------

    def check_block_identity(self) -> CheckResult:
        worst = 0.0
        for d, mu, p, count in BLOCK_IDENTITY_CASES:
            layout = enumerate_block(mu, d)
            levels, positions = layout.arrays()
            for index in range(count):
                rng = restart_rng(self.budget.seed, 1000 * d + 10 * mu + index)
                coeffs = CoeffField(levels, positions, rng.standard_normal(levels.shape[0]))
                f_side = coeffs
                if self.fault == 'block-identity' and index == 0:
                    values = coeffs.values.copy()
                    values[0] += 1.0
                    f_side = CoeffField(levels, positions, values)
                b = bnorm(coeffs, 0, p, p)
                f = fnorm(f_side, 0, p, p, method='grid')
                deviation = abs(f - b) / b
                worst = max(worst, deviation)
                if deviation > 1e-10:
                    return CheckResult('block_identity', False, f"d={d} mu={mu} p={p}: relative {deviation:.3e}")
        return CheckResult('block_identity', True, f"max relative deviation {worst:.3e}")

    def check_probe_decay(self) -> CheckResult:
        details = []
        for name, config in PROBE_CONFIGS.items():
            params = ParamSet.build(config['d'], config['t'], config['p1'], config['p2'])
            sweep = run_probe_sweep(params, PROBE_LEVELS, self.budget.scaled(restarts=4))
            details.append(f"{name}: slope {sweep.fit.slope:.4f} vs {sweep.predicted_slope:.4f}")
            if sweep.deviation > 0.1:
                return CheckResult('probe_decay', False, details[-1])
        return CheckResult('probe_decay', True, '; '.join(details))

    # ---------- limiarização ----------

    def check_soft_threshold_contraction(self) -> CheckResult:
        rng = restart_rng(self.budget.seed, 19)
        z = rng.standard_normal(5000) + 1j * rng.standard_normal(5000)
        eps = np.abs(rng.standard_normal(5000)) * 2
        gap = np.abs(soft_threshold(z, eps) - z) - np.abs(z)
        passed = bool(np.all(gap <= 1e-15))
        return CheckResult('soft_threshold_contraction', passed, f"max excess {gap.max():.3e}")

    def check_sparsify_continuity(self) -> CheckResult:
        params = ParamSet.build(2, Fraction(3, 2), 1, 2)
        J = 4
        schedule = ThresholdSchedule.build(J, params)
        rng = restart_rng(self.budget.seed, 23)
        coeffs = unit_ball_field('random-dense', J, schedule.K, params, rng)
        perturbed = coeffs.map_values(lambda v: v + 1e-6 * rng.uniform(-1, 1, v.size))
        a, stats = sparsify(coeffs, J, params, schedule)
        b, _ = sparsify(perturbed, J, params, schedule)
        diff = a.subtract(b).values
        deviation = float(np.abs(diff).max()) if diff.size else 0.0
        if deviation > 2e-6:
            return CheckResult('sparsify_continuity', False, f"deviation {deviation:.3e} > 2e-6")
        if not stats.within_bounds():
            return CheckResult('sparsify_continuity', False, "retained counts exceed the counting bound",
                               {'retained': stats.retained, 'bounds': stats.bounds})
        return CheckResult('sparsify_continuity', True, f"deviation {deviation:.3e}, counts within bounds")

    # ---------- tabelas de taxas ----------

    def _target(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def _valid_pairs(self, first, second, target: int, d=None, seed_offset=0):
        """Sorteia até juntar `target` conjuntos em que os dois classificadores valem"""
        rng = restart_rng(self.budget.seed, 29 + seed_offset)
        pairs = []
        draws = 0
        limit = target * settings.MAX_DRAWS_PER_SAMPLE
        while len(pairs) < target and draws < limit:
            draws += 1
            params = _sample_params(rng, d)
            try:
                pairs.append((params, first(params), second(params)))
            except RegimeError:
                continue
        if len(pairs) < target:
            logger.warning(f"Só {len(pairs)} conjuntos válidos em {draws} sorteios (alvo {target})")
        return pairs

    def check_case_exhaustiveness(self) -> CheckResult:
        target = self._target(settings.RATE_CHECK_SAMPLES)
        details = []
        for index, (name, (classify, scale, rules)) in enumerate(CASE_TABLES.items()):
            rng = restart_rng(self.budget.seed, 41 + index)
            valid = boundary = draws = 0
            while valid < target:
                if draws >= target * settings.MAX_DRAWS_PER_SAMPLE:
                    return CheckResult('case_exhaustiveness', False, f"{name}: {valid} valid sets in {draws} draws")
                draws += 1
                params = _sample_params(rng)
                if not params.is_compact(scale):
                    continue
                try:
                    result = classify(params)
                except LimitingCaseError:
                    boundary += 1
                    continue
                except RegimeError as e:
                    return CheckResult('case_exhaustiveness', False,
                                       f"{name}: {params.to_dict()} raised off any boundary: {e}")
                matches = matching_cases(rules, params, scale)
                formulas = {exponents for _, exponents in matches}
                if len(formulas) != 1:
                    return CheckResult('case_exhaustiveness', False,
                                       f"{name}: {len(formulas)} distinct cases match {params.to_dict()}",
                                       {'cases': [case for case, _ in matches]})
                got = (result.alpha, result.beta_lo, result.beta_hi)
                if result.case not in {case for case, _ in matches} or got not in formulas:
                    return CheckResult('case_exhaustiveness', False,
                                       f"{name}: case {result.case} disagrees with the table at {params.to_dict()}")
                if result.alpha <= 0:
                    return CheckResult('case_exhaustiveness', False, f"{name}: alpha <= 0 at {params.to_dict()}")
                valid += 1
            details.append(f"{name}: {valid} sets, {boundary} on boundaries")
        return CheckResult('case_exhaustiveness', True, '; '.join(details))

    def check_d1_collapse(self) -> CheckResult:
        target = self._target(settings.D1_COLLAPSE_SAMPLES)
        pairs = self._valid_pairs(bernstein_rate_mixed, bernstein_rate_isotropic, target, d=1)
        for params, mixed, isotropic in pairs:
            if mixed.case != 'open' and mixed.alpha != isotropic.alpha:
                return CheckResult('d1_collapse', False, f"{params.to_dict()}: {mixed.alpha} != {isotropic.alpha}")
        return CheckResult('d1_collapse', len(pairs) >= target, f"{len(pairs)} valid parameter sets")

    def check_dominance(self) -> CheckResult:
        target = self._target(settings.RATE_CHECK_SAMPLES)
        pairs = self._valid_pairs(bernstein_rate_mixed, weyl_rate_mixed, target, seed_offset=1)
        for params, b, w in pairs:
            if not _lexicographic_faster_or_equal((b.alpha, b.beta_hi), (w.alpha, w.beta_hi)):
                return CheckResult('dominance', False, f"{params.to_dict()}: bernstein {b.case} vs weyl {w.case}")
        return CheckResult('dominance', len(pairs) >= target, f"{len(pairs)} valid parameter sets")

    def check_nonlinear_dominance(self) -> CheckResult:
        target = self._target(settings.RATE_CHECK_SAMPLES)
        mixed = self._valid_pairs(bernstein_rate_mixed, lambda p: nonlinear_width_rate(p, 'mixed'), target,
                                  seed_offset=2)
        iso = self._valid_pairs(bernstein_rate_isotropic, lambda p: nonlinear_width_rate(p, 'isotropic'), target,
                                seed_offset=3)
        for params, b, nl in mixed + iso:
            if not _lexicographic_faster_or_equal((b.alpha, b.beta_hi), (nl.alpha, nl.beta_hi)):
                return CheckResult('nonlinear_dominance', False, f"{params.to_dict()}: {b.regime_label}")
        enough = len(mixed) >= target and len(iso) >= target
        return CheckResult('nonlinear_dominance', enough, f"{len(mixed)} mixed, {len(iso)} isotropic parameter sets")

    def check_region_consistency(self) -> CheckResult:
        target = self._target(settings.RATE_CHECK_SAMPLES)
        pairs = self._valid_pairs(bernstein_rate_mixed, weyl_rate_mixed, target, seed_offset=4)
        for params, b, w in pairs:
            region = compare_bernstein_weyl(params.p1, params.p2)
            same = b.alpha == w.alpha and b.beta_lo == w.beta_lo and b.beta_hi == w.beta_hi
            if same != region.same_order:
                return CheckResult('region_consistency', False,
                                   f"{params.to_dict()}: region {region.region} vs {b.case}/{w.case}")
        for p1 in EXPONENT_GRID:
            for p2 in EXPONENT_GRID:
                if identity_order('bernstein', p1, p2) > identity_order('gelfand', p1, p2):
                    return CheckResult('region_consistency', False, f"identity orders at p1={p1}, p2={p2}")
        # o mesmo critério isotrópico: Weyl nunca decai mais rápido que Bernstein
        iso = self._valid_pairs(bernstein_rate_isotropic, weyl_rate_isotropic, target, seed_offset=5)
        for params, b, w in iso:
            if b.alpha < w.alpha:
                return CheckResult('region_consistency', False, f"isotropic {params.to_dict()}")
        enough = len(pairs) >= target and len(iso) >= target
        return CheckResult('region_consistency', enough, f"{len(pairs)} mixed, {len(iso)} isotropic parameter sets")
