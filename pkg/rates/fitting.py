"""
Ajuste log-log de sequências medidas contra v_n ≈ C n^{-α} (log n)^{(d-1)β}.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple
import math
import numpy as np
from loguru import logger

from config.settings import settings
from core.exceptions import ValidationError


@dataclass
class FitResult:
    alpha: float
    beta: float
    residual: float
    n_range: Tuple[int, int]
    condition: float = 1.0
    intercept: float = 0.0

    def to_dict(self) -> dict:
        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'residual': self.residual,
            'n_min': self.n_range[0],
            'n_max': self.n_range[1],
            'condition': self.condition,
        }


@dataclass
class SlopeFit:
    slope: float
    intercept: float
    residual: float

    def to_dict(self) -> dict:
        return {'slope': self.slope, 'intercept': self.intercept, 'residual': self.residual}


def _positive(values: Sequence[float]) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if np.any(~np.isfinite(v)) or np.any(v <= 0):
        raise ValidationError("fit requires positive finite values (nonpositive values cannot be log-fitted)")
    return v


def fit_rate(ns: Sequence[int], values: Sequence[float], d: int) -> FitResult:
    """
    Mínimos quadrados em log v = c - α log n + (d-1) β log log n.
    β = 0 quando d = 1 ou max n < e².
    """
    n = np.asarray(ns, dtype=float)
    v = _positive(values)
    if n.size < 4 or n.size != v.size:
        raise ValidationError("fit_rate requires at least 4 points with matching values")
    if np.any(n < 1) or np.any(n != np.round(n)) or np.any(np.diff(n) <= 0):
        raise ValidationError("fit_rate requires strictly increasing positive integers n")
    if int(d) < 1:
        raise ValidationError("d must be >= 1")

    with_log = d > 1 and n.max() >= math.e ** 2
    columns = [np.ones_like(n), -np.log(n)]
    if with_log:
        if n.min() < 2:
            raise ValidationError("log log n regressor requires n >= 2")
        columns.append((d - 1) * np.log(np.log(n)))
    X = np.column_stack(columns)
    y = np.log(v)

    coeffs, *_ = np.linalg.lstsq(X, y, rcond=None)
    condition = float(np.linalg.cond(X))
    if condition > settings.FIT_CONDITION_WARN:
        logger.warning(f"fit_rate: número de condição {condition:.3e}, log n e log log n quase colineares")
    residual = float(np.sqrt(np.mean((X @ coeffs - y) ** 2)))
    beta = float(coeffs[2]) if with_log else 0.0
    return FitResult(float(coeffs[1]), beta, residual, (int(n[0]), int(n[-1])), condition, float(coeffs[0]))


def fit_dyadic_slope(levels: Sequence[int], values: Sequence[float]) -> SlopeFit:
    """Inclinação MQO de log2 v contra o nível"""
    x = np.asarray(levels, dtype=float)
    v = _positive(values)
    if x.size < 2 or x.size != v.size:
        raise ValidationError("slope fit requires at least 2 points with matching values")
    X = np.column_stack([np.ones_like(x), x])
    y = np.log2(v)
    coeffs, *_ = np.linalg.lstsq(X, y, rcond=None)
    residual = float(np.sqrt(np.mean((X @ coeffs - y) ** 2)))
    return SlopeFit(float(coeffs[1]), float(coeffs[0]), residual)
