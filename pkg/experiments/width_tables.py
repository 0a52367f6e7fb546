"""
Tabelas de larguras para o comando `matrix` e a varredura da sonda de blocos.
"""
from dataclasses import dataclass
from typing import Iterable, List, Optional
import numpy as np

from config.settings import settings
from core.exceptions import GuardError, ValidationError
from core.exponents import ParamSet
from core.operator_norm import OptimBudget
from hypercross.probes import ProbeResult, block_embedding_norm_probe
from rates.fitting import SlopeFit, fit_dyadic_slope
from widths.operators import FiniteOperator, WidthEstimate
from widths.tables import width_table


def run_width_table(
    m: int,
    p1,
    p2,
    kinds: List[str],
    budget: OptimBudget,
    matrix: Optional[np.ndarray] = None,
) -> List[WidthEstimate]:
    """Linhas ordenadas por (tipo, n); identidade m × m quando matrix é None"""
    if int(m) < 1:
        raise ValidationError(f"dimension m must be >= 1, got {m}")
    if m > settings.MAX_MATRIX_DIM:
        raise GuardError(f"matrix dimension m={m} exceeds the desk-scale cap m <= {settings.MAX_MATRIX_DIM}")
    T = FiniteOperator.identity_of(m, p1, p2) if matrix is None else FiniteOperator(matrix, p1, p2)
    table = width_table(T, kinds, budget=budget)
    return [estimate for kind in table for estimate in table[kind]]


@dataclass
class ProbeSweep:
    results: List[ProbeResult]
    fit: SlopeFit

    @property
    def predicted_slope(self) -> float:
        return float(self.results[0].predicted_exponent)

    @property
    def deviation(self) -> float:
        return abs(self.fit.slope - self.predicted_slope)


def run_probe_sweep(params: ParamSet, levels: Iterable[int], budget: OptimBudget = None) -> ProbeSweep:
    results = [block_embedding_norm_probe(mu, params, budget) for mu in levels]
    fit = fit_dyadic_slope([r.mu for r in results], [r.value for r in results])
    return ProbeSweep(results, fit)
