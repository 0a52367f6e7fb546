"""
Registro de estimadores, atalhos por tipo e tabela de larguras n = 1..m
com a correção de monotonicidade.
"""
from dataclasses import replace
from typing import Dict, Iterable, List, Optional
import math
from loguru import logger

from config.settings import settings
from core.exceptions import GuardError, ValidationError
from core.operator_norm import OptimBudget
from widths.estimators import (
    ApproximationEstimator,
    BernsteinEstimator,
    GelfandEstimator,
    KolmogorovEstimator,
    WeylEstimator,
)
from widths.operators import KINDS, FiniteOperator, SearchHints, WidthEstimate

ESTIMATORS = {
    'approximation': ApproximationEstimator(),
    'kolmogorov': KolmogorovEstimator(),
    'gelfand': GelfandEstimator(),
    'bernstein': BernsteinEstimator(),
    'weyl': WeylEstimator(),
}


def estimate_width(kind: str, T: FiniteOperator, n: int, budget: OptimBudget = None,
                   hints: Optional[SearchHints] = None) -> WidthEstimate:
    if kind not in ESTIMATORS:
        raise ValidationError(f"unknown width kind '{kind}'")
    return ESTIMATORS[kind].estimate(T, n, budget, hints)


def bernstein_number(T, n, budget=None, hints=None) -> WidthEstimate:
    return estimate_width('bernstein', T, n, budget, hints)


def approximation_number(T, n, budget=None, hints=None) -> WidthEstimate:
    return estimate_width('approximation', T, n, budget, hints)


def kolmogorov_number(T, n, budget=None, hints=None) -> WidthEstimate:
    return estimate_width('kolmogorov', T, n, budget, hints)


def gelfand_number(T, n, budget=None, hints=None) -> WidthEstimate:
    return estimate_width('gelfand', T, n, budget, hints)


def weyl_number(T, n, budget=None, hints=None) -> WidthEstimate:
    return estimate_width('weyl', T, n, budget, hints)


def enforce_monotone(estimates: Iterable[WidthEstimate], tol: float = None) -> List[WidthEstimate]:
    """
    Torna a sequência não crescente em n sem invalidar as direções:
    cotas superiores/heurísticas recebem o mínimo acumulado (para frente),
    cotas inferiores o máximo acumulado (para trás). Violações acima de
    `tol` ficam marcadas em diagnostics.clamped.
    """
    tol = settings.MONOTONE_CLAMP_TOL if tol is None else tol
    ordered = [replace(e, diagnostics=replace(e.diagnostics)) for e in sorted(estimates, key=lambda e: e.n)]

    running = math.inf
    for e in ordered:
        if e.direction in ('upper_bound', 'heuristic'):
            if e.value > running + tol:
                logger.warning(f"{e.kind} n={e.n}: {e.value:.10g} > {running:.10g}, valor reduzido (monotonicidade)")
                e.diagnostics.clamped = True
            e.value = min(e.value, running)
        if e.direction in ('upper_bound', 'heuristic', 'exact'):
            running = min(running, e.value)

    running = -math.inf
    for e in reversed(ordered):
        if e.direction == 'lower_bound':
            if running > e.value + tol:
                logger.warning(f"{e.kind} n={e.n}: {e.value:.10g} < {running:.10g}, valor elevado (monotonicidade)")
                e.diagnostics.clamped = True
            e.value = max(e.value, running)
        if e.direction in ('lower_bound', 'exact'):
            running = max(running, e.value)
    return ordered


def width_table(
    T: FiniteOperator,
    kinds: Optional[List[str]] = None,
    n_range: Optional[Iterable[int]] = None,
    budget: OptimBudget = None,
    monotone: bool = True,
) -> Dict[str, List[WidthEstimate]]:
    """Estimativas por tipo para n = 1..m_in (ordem de KINDS)"""
    if max(T.m_in, T.m_out) > settings.MAX_MATRIX_DIM:
        raise GuardError(
            f"matrix dimension {max(T.m_in, T.m_out)} exceeds the desk-scale cap m <= {settings.MAX_MATRIX_DIM}"
        )
    budget = (budget or OptimBudget()).validate()
    kinds = list(KINDS) if kinds is None else kinds
    ns = list(n_range) if n_range is not None else list(range(1, T.m_in + 1))

    table = {}
    for kind in KINDS:
        if kind not in kinds:
            continue
        logger.info(f"Estimando {kind} para {T.describe()}, n = {ns[0]}..{ns[-1]}")
        estimates = [estimate_width(kind, T, n, budget) for n in ns]
        table[kind] = enforce_monotone(estimates) if monotone else estimates
    return table
