"""
Normas das sequências de suavidade mista dominante:

  b: ( Σ_ν̄ [ 2^{|ν̄|_1 (t - 1/p)} (Σ_m̄ |λ_{ν̄,m̄}|^p)^{1/p} ]^q )^{1/q}
  f: || ( Σ_{ν̄,m̄} |2^{|ν̄|_1 t} λ_{ν̄,m̄} χ_{ν̄,m̄}|^q )^{1/q} ||_{L_p(Ω)}

A norma f é integrada exatamente: a função é constante em cada célula da
grade de resolução 2^{R_ℓ} por eixo, R_ℓ = max ν_ℓ do suporte.
"""
from typing import Tuple
import numpy as np
from loguru import logger

from config.settings import settings
from core.exceptions import GuardError, ValidationError
from core.exponents import Exponent
from core.norms import pnorm
from hypercross.fields import CoeffField

FNORM_METHODS = ('grid', 'auto')


def _level_groups(field: CoeffField) -> Tuple[np.ndarray, np.ndarray]:
    """Índices de início de cada nível (campo ordenado por nível) e os níveis"""
    L = field.levels
    change = np.ones(field.size, dtype=bool)
    if field.size > 1:
        change[1:] = np.any(L[1:] != L[:-1], axis=1)
    starts = np.flatnonzero(change)
    return starts, L[starts]


def level_pnorms(field: CoeffField, p) -> Tuple[np.ndarray, np.ndarray]:
    """(níveis distintos, (Σ_m̄ |λ|^p)^{1/p} por nível)"""
    p = Exponent.of(p)
    if field.size == 0:
        return np.zeros((0, field.d), dtype=np.int64), np.zeros(0)
    starts, levels = _level_groups(field)
    a = np.abs(field.values)
    peak = a.max()
    if peak == 0:
        return levels, np.zeros(starts.size)
    if p.is_infinite:
        return levels, np.maximum.reduceat(a, starts)
    scaled = np.power(a / peak, p.value)
    return levels, peak * np.power(np.add.reduceat(scaled, starts), 1.0 / p.value)


def bnorm(field: CoeffField, t, p, q) -> float:
    p, q = Exponent.of(p), Exponent.of(q)
    if field.size == 0:
        return 0.0
    levels, inner = level_pnorms(field, p)
    exponent = float(t) - float(p.inverse)
    weighted = np.exp2(levels.sum(axis=1) * exponent) * inner
    return pnorm(weighted, q)


def _grid_norm(field: CoeffField, t: float, p: Exponent, q: Exponent, refine: int) -> float:
    d = field.d
    resolution = field.levels.max(axis=0) + int(refine)
    cells = 2 ** int(resolution.sum())
    if d > settings.FNORM_MAX_D:
        raise GuardError(f"fnorm grid integration supports d <= {settings.FNORM_MAX_D}, got d={d}")
    if field.max_level > settings.FNORM_MAX_LEVEL + int(refine):
        raise GuardError(f"fnorm grid integration supports levels <= {settings.FNORM_MAX_LEVEL}, got {field.max_level}")
    if cells > settings.FNORM_MAX_CELLS:
        raise GuardError(f"fnorm grid has {cells} cells, above the cap {settings.FNORM_MAX_CELLS}")

    magnitudes = np.exp2(field.level_totals * t) * np.abs(field.values)
    peak = magnitudes.max()
    if peak == 0:
        return 0.0
    magnitudes = magnitudes / peak
    if not q.is_infinite:
        magnitudes = np.power(magnitudes, q.value)

    shape = tuple(2 ** int(r) for r in resolution)
    acc = np.zeros(shape)
    starts, levels = _level_groups(field)
    bounds = list(starts[1:]) + [field.size]
    for start, stop, nu in zip(starts, bounds, levels):
        coarse = tuple(2 ** int(v) for v in nu)
        block = np.zeros(coarse)
        block[tuple(field.positions[start:stop].T)] = magnitudes[start:stop]
        # cada célula de nível ν̄ cobre 2^{R_ℓ - ν_ℓ} células finas por eixo
        view_shape, block_shape = [], []
        for r, v in zip(resolution, nu):
            view_shape += [2 ** int(v), 2 ** int(r - v)]
            block_shape += [2 ** int(v), 1]
        view = acc.reshape(view_shape)
        if q.is_infinite:
            np.maximum(view, block.reshape(block_shape), out=view)
        else:
            view += block.reshape(block_shape)

    # g = acc^{1/q}; ||g||_p com células de volume 1/cells
    exponent = p.value if q.is_infinite else p.value / q.value
    return float(peak * np.power(np.mean(np.power(acc, exponent)), 1.0 / p.value))


def fnorm(field: CoeffField, t, p, q, method: str = 'grid', refine: int = 0) -> float:
    """
    method='grid' sempre integra; 'auto' usa a identidade exata f = b quando p = q.
    refine > 0 integra numa grade mais fina que a necessária (mesmo valor).
    """
    p, q = Exponent.of(p), Exponent.of(q)
    if p.is_infinite:
        raise ValidationError("f-scale requires p < ∞")
    if method not in FNORM_METHODS:
        raise ValidationError(f"unknown fnorm method '{method}', expected one of {FNORM_METHODS}")
    if field.size == 0:
        return 0.0
    if method == 'auto' and p == q:
        return bnorm(field, t, p, q)
    value = _grid_norm(field, float(t), p, q, refine)
    logger.debug(f"fnorm grid: {field.size} entradas, J={field.max_level}, valor {value:.12g}")
    return value


def truncate(field: CoeffField, J: int) -> CoeffField:
    return field.truncate(J)
