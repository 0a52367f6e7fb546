"""
Soft thresholding por bloco (S*_K) e estatísticas de esparsidade/erro.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple
import math
import numpy as np
from loguru import logger

from core.exceptions import ValidationError
from core.exponents import ParamSet
from hypercross.fields import CoeffField
from hypercross.indexing import block_dimension
from hypercross.norms import bnorm, fnorm
from thresholding.schedule import ThresholdSchedule

UNIT_BALL_SLACK = 1e-12


def soft_threshold(z, eps):
    """
    φ(z) = 0 se |z| <= ε;  (2|z| - 2ε)·z/|z| se ε < |z| <= 2ε;  z se |z| > 2ε.
    Vetorizado; escalar entra, escalar sai.
    """
    eps_array = np.asarray(eps, dtype=float)
    if np.any(eps_array < 0):
        raise ValidationError("threshold must be >= 0")
    z_array = np.asarray(z)
    a = np.abs(z_array)
    with np.errstate(divide='ignore', invalid='ignore'):
        ramp = np.where(a > 0, (2 * a - 2 * eps_array) * z_array / np.where(a > 0, a, 1.0), 0.0)
    out = np.where(a <= eps_array, 0.0 * z_array, np.where(a <= 2 * eps_array, ramp, z_array))
    if np.ndim(out) == 0:
        return out.item()
    return out


def block_retained_bound(mu: int, schedule: ThresholdSchedule, params: ParamSet) -> float:
    """
    Cota de contagem |{|λ| > ε_μ}| <= min(D_μ, ε_μ^{-p1} 2^{-μ(t - 1/p1) p1})
    para ||λ||_b <= 1; D_μ nos blocos sem limiar.
    """
    dimension = float(block_dimension(mu, params.d))
    eps = schedule.epsilon(mu)
    if eps == 0:
        return dimension
    p1 = params.p1.value
    log2_bound = -p1 * math.log2(eps) - mu * (float(params.t) - float(params.u1)) * p1
    return min(dimension, 2.0 ** log2_bound) if log2_bound < 1024 else dimension


@dataclass
class SparsifyStats:
    J: int
    K: int
    d: int
    retained: Dict[int, int] = field(default_factory=dict)
    mid_branch: Dict[int, int] = field(default_factory=dict)
    bounds: Dict[int, float] = field(default_factory=dict)
    total_nonzeros: int = 0
    guaranteed: bool = True
    error: Optional[float] = None
    c1: Optional[float] = None

    @property
    def c0(self) -> float:
        return self.total_nonzeros / (2.0 ** self.J * self.J ** (self.d - 1))

    def within_bounds(self) -> bool:
        """|Λ_μ| <= cota de contagem + entradas no ramo intermediário"""
        return all(self.retained[mu] <= self.bounds[mu] + self.mid_branch[mu] for mu in self.retained)

    def record_error(self, error: float, params: ParamSet) -> None:
        self.error = float(error)
        scale = 2.0 ** (-self.J * float(params.t)) * self.J ** ((self.d - 1) * (0.5 - float(params.u1)))
        self.c1 = self.error / scale

    def to_dict(self) -> dict:
        return {
            'J': self.J,
            'K': self.K,
            'retained': {str(mu): n for mu, n in self.retained.items()},
            'mid_branch': {str(mu): n for mu, n in self.mid_branch.items()},
            'bounds': {str(mu): b for mu, b in self.bounds.items()},
            'total_nonzeros': self.total_nonzeros,
            'c0': self.c0,
            'error': self.error,
            'c1': self.c1,
            'guaranteed': self.guaranteed,
        }


def sparsify(
    field_: CoeffField,
    J: int,
    params: ParamSet,
    schedule: ThresholdSchedule = None,
) -> Tuple[CoeffField, SparsifyStats]:
    """λ ↦ λ*: soft threshold com ε_μ do bloco de cada entrada, níveis > K descartados"""
    schedule = schedule or ThresholdSchedule.build(J, params)
    if schedule.J != J or schedule.d != params.d or len(schedule.epsilons) != schedule.K + 1:
        raise ValidationError(f"invalid schedule for J={J}, d={params.d}")
    if field_.d != params.d:
        raise ValidationError(f"field dimension {field_.d} does not match d={params.d}")

    stats = SparsifyStats(J=J, K=schedule.K, d=params.d)
    norm = bnorm(field_, params.t, params.p1, params.p1)
    if norm > 1 + UNIT_BALL_SLACK:
        logger.warning(f"sparsify: bnorm = {norm:.6g} > 1, estatísticas sem garantia")
        stats.guaranteed = False

    mu = field_.level_totals
    keep = mu <= schedule.K
    values = field_.values[keep]
    eps = schedule.epsilons[mu[keep]]
    thresholded = np.asarray(soft_threshold(values, eps))

    nonzero = thresholded != 0
    magnitudes = np.abs(values)
    mid = (magnitudes > eps) & (magnitudes <= 2 * eps)
    kept_mu = mu[keep]
    for block in range(schedule.K + 1):
        in_block = kept_mu == block
        stats.retained[block] = int(np.count_nonzero(nonzero & in_block))
        stats.mid_branch[block] = int(np.count_nonzero(mid & in_block))
        stats.bounds[block] = block_retained_bound(block, schedule, params)
    stats.total_nonzeros = int(np.count_nonzero(nonzero))

    result = CoeffField(
        field_.levels[keep][nonzero],
        field_.positions[keep][nonzero],
        thresholded[nonzero],
        d=field_.d,
    )
    return result, stats


def approx_error(field_: CoeffField, approximant: CoeffField, params: ParamSet) -> float:
    """fnorm(λ - λ*, 0, p2, 2)"""
    if params.p2.is_infinite:
        raise ValidationError("f-scale requires p < ∞: approximation error needs p2 < ∞")
    return fnorm(field_.subtract(approximant), 0, params.p2, 2, method='auto')
