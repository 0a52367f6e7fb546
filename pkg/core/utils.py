from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, TypeVar, Union
import numpy as np
from loguru import logger

from core.exceptions import LimitingCaseError, ValidationError
from config.settings import settings

T = TypeVar('T')
R = TypeVar('R')

Real = Union[int, float, Fraction]


def positive_part(value: Real) -> Real:
    """(x)_+ preservando o tipo (Fraction continua exata)"""
    return value if value > 0 else 0 * value


def strict_gt(lhs: Real, rhs: Real, label: str, band: float = None) -> bool:
    """
    Avalia lhs > rhs como desigualdade estrita com banda de guarda.
    Dentro da banda levanta LimitingCaseError nomeando a desigualdade.
    """
    band = settings.GUARD_BAND if band is None else band
    if abs(float(lhs) - float(rhs)) <= band:
        raise LimitingCaseError(f"limiting case not covered: {label} is on its boundary")
    return lhs > rhs


def to_fraction(value) -> Fraction:
    """Converte int/float/str/Fraction para Fraction (decimal exato para floats)"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse number '{value}'")
    if not np.isfinite(float(value)):
        raise ValidationError(f"number must be finite, got {value}")
    return Fraction(str(float(value)))


def restart_rng(seed: int, index: int) -> np.random.Generator:
    """Stream independente por restart: depende só de (seed, index)"""
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, int(index)])


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int = None) -> List[R]:
    """
    Map com ThreadPoolExecutor respeitando WIDTHS_LAB_THREADS.
    A ordem do resultado é a ordem de entrada, independente do agendamento.
    """
    items = list(items)
    threads = settings.THREADS if threads is None else max(1, int(threads))
    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]
    logger.debug(f"parallel_map: {len(items)} tarefas em {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))


def float_repr(value: float) -> str:
    """Decimal de precisão total (round-trip exato)"""
    return repr(float(value))
