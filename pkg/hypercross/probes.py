"""
Sonda da norma do mergulho restrito a um bloco:

    sup { fnorm(λ, 0, p2, 2) / bnorm(λ, t, p1, p1) : supp λ ⊂ ∇_μ }

amostrada em átomos coordenados, campo constante no bloco, constantes em um
só nível e campos gaussianos. Em log2 a previsão é μ·(-t + (1/p1 - 1/p2)_+)
mais (d-1)·γ·log2 μ, com γ = 0 se p1 < p2 e (1/2 - 1/p1)_+ caso contrário.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple
import numpy as np
from loguru import logger

from core.exponents import ParamSet
from core.operator_norm import OptimBudget
from core.utils import parallel_map, positive_part, restart_rng
from hypercross.fields import CoeffField
from hypercross.indexing import enumerate_block
from hypercross.norms import bnorm, fnorm

MAX_RANDOM_PROBES = 16


@dataclass
class ProbeResult:
    mu: int
    value: float
    predicted_exponent: Fraction
    predicted_log_exponent: Fraction
    witness: str

    def to_dict(self) -> dict:
        return {
            'mu': self.mu,
            'value': self.value,
            'predicted_exponent': float(self.predicted_exponent),
            'predicted_log_exponent': float(self.predicted_log_exponent),
            'witness': self.witness,
        }


def predicted_exponents(params: ParamSet) -> Tuple[Fraction, Fraction]:
    """(expoente diádico, expoente do fator log)"""
    dyadic = -params.t + positive_part(params.u1 - params.u2)
    if params.p1 < params.p2:
        log_factor = Fraction(0)
    else:
        log_factor = (params.d - 1) * positive_part(Fraction(1, 2) - params.u1)
    return dyadic, log_factor


def _ratio(field: CoeffField, params: ParamSet) -> float:
    den = bnorm(field, params.t, params.p1, params.p1)
    if den == 0:
        return 0.0
    return fnorm(field, 0, params.p2, 2, method='auto') / den


def block_embedding_norm_probe(mu: int, params: ParamSet, budget: OptimBudget = None) -> ProbeResult:
    budget = (budget or OptimBudget()).validate()
    params.require_compact('mixed')
    layout = enumerate_block(mu, params.d)
    levels, positions = layout.arrays()
    size = levels.shape[0]

    # === 1. CAMPOS ESTRUTURADOS ===
    candidates: List[Tuple[str, CoeffField]] = [
        ('atom', CoeffField(levels[:1], positions[:1], [1.0])),
        ('constant-on-block', CoeffField.on_block(layout, np.ones(size))),
    ]
    for nu in layout.levels:
        mask = np.all(levels == np.asarray(nu), axis=1)
        candidates.append((f'single-level{nu}', CoeffField(levels[mask], positions[mask], np.ones(int(mask.sum())))))

    # === 2. CAMPOS ALEATÓRIOS ===
    for index in range(min(budget.restarts, MAX_RANDOM_PROBES)):
        rng = restart_rng(budget.seed, index)
        candidates.append((f'gaussian#{index}', CoeffField.on_block(layout, rng.standard_normal(size))))

    ratios = parallel_map(lambda item: _ratio(item[1], params), candidates)
    best = int(np.argmax(ratios))
    dyadic, log_factor = predicted_exponents(params)
    logger.debug(f"probe mu={mu}: {ratios[best]:.10g} ({candidates[best][0]})")
    return ProbeResult(mu, float(ratios[best]), dyadic, log_factor, candidates[best][0])
