"""
Tabelas de casos das taxas escritas como predicados planos, sem if/elif
encadeado. A bateria compara cada classificador com a sua tabela: num
conjunto válido fora das fronteiras, todos os casos que se aplicam devem
dar os mesmos expoentes (α, β_lo, β_hi).

Predicados em recíprocos (u = 1/p): p <= 2 vira u >= 1/2, p1 <= p2 vira u1 >= u2.
Aritmética exata, sem banda de guarda.
"""
from fractions import Fraction
from typing import Callable, List, NamedTuple, Tuple

from core.exponents import ParamSet

HALF = Fraction(1, 2)
Exponents = Tuple[Fraction, Fraction, Fraction]


class CaseRule(NamedTuple):
    case: str
    applies: Callable[[Fraction, ParamSet], bool]
    exponents: Callable[[Fraction, ParamSet], Exponents]


def _split(P: ParamSet) -> Fraction:
    """(1/p2 - 1/p1) / (p1/2 - 1); só com p1 > 2"""
    return (P.u2 - P.u1) * 2 * P.u1 / (1 - 2 * P.u1)


def _both_small(P: ParamSet) -> bool:
    return P.u1 >= HALF and P.u2 >= HALF


def _p1_small_p2_large(P: ParamSet) -> bool:
    return P.u1 >= HALF >= P.u2


def _p2_small_p1_large(P: ParamSet) -> bool:
    return P.u2 >= HALF >= P.u1


def _large_p2_below_p1(P: ParamSet) -> bool:
    """2 <= p2 <= p1 com p1 > 2"""
    return P.u1 < HALF and P.u1 <= P.u2 <= HALF


def _pure(alpha: Fraction) -> Exponents:
    return alpha, Fraction(0), Fraction(0)


def _flat(alpha: Fraction, beta: Fraction) -> Exponents:
    return alpha, beta, beta


BERNSTEIN_ISOTROPIC: List[CaseRule] = [
    CaseRule('i', lambda s, P: P.u1 >= P.u2 or P.u1 >= HALF, lambda s, P: _pure(s)),
    CaseRule('ii', lambda s, P: _p2_small_p1_large(P) and s > P.u1, lambda s, P: _pure(s - P.u1 + HALF)),
    CaseRule('iv', lambda s, P: _p2_small_p1_large(P) and s < P.u1 and P.u2 < 1,
             lambda s, P: _pure(s / (2 * P.u1))),
    CaseRule('iii', lambda s, P: _large_p2_below_p1(P) and s > _split(P), lambda s, P: _pure(s + P.u2 - P.u1)),
    CaseRule('iv', lambda s, P: _large_p2_below_p1(P) and s < _split(P), lambda s, P: _pure(s / (2 * P.u1))),
]

BERNSTEIN_MIXED: List[CaseRule] = [
    CaseRule('open', lambda t, P: P.u1 < HALF and P.u1 > P.u2 > 0, lambda t, P: (t, t, t - P.u1 + HALF)),
    CaseRule('i', lambda t, P: _both_small(P) and t < P.u1 - HALF, lambda t, P: _pure(t)),
    CaseRule('ii', lambda t, P: _both_small(P) and t > P.u1 - HALF, lambda t, P: _flat(t, t + HALF - P.u1)),
    CaseRule('ii', lambda t, P: _p1_small_p2_large(P), lambda t, P: _flat(t, t + HALF - P.u1)),
    CaseRule('iii', lambda t, P: _p2_small_p1_large(P) and t > P.u1,
             lambda t, P: (t - P.u1 + HALF,) * 3),
    CaseRule('v', lambda t, P: _p2_small_p1_large(P) and t < P.u1,
             lambda t, P: _flat(t / (2 * P.u1), t - P.u1 + HALF)),
    CaseRule('iv', lambda t, P: _large_p2_below_p1(P) and t > _split(P),
             lambda t, P: (t + P.u2 - P.u1,) * 3),
    CaseRule('v', lambda t, P: _large_p2_below_p1(P) and t < _split(P),
             lambda t, P: _flat(t / (2 * P.u1), t - P.u1 + HALF)),
]

WEYL_ISOTROPIC: List[CaseRule] = [
    CaseRule('i', lambda s, P: _both_small(P), lambda s, P: _pure(s)),
    CaseRule('ii', lambda s, P: _p1_small_p2_large(P), lambda s, P: _pure(s + P.u2 - HALF)),
    CaseRule('iii', lambda s, P: _p2_small_p1_large(P) and s > P.u1, lambda s, P: _pure(s - P.u1 + HALF)),
    CaseRule('v', lambda s, P: _p2_small_p1_large(P) and s < P.u1, lambda s, P: _pure(s / (2 * P.u1))),
    CaseRule('iv', lambda s, P: HALF >= P.u1 >= P.u2, lambda s, P: _pure(s + P.u2 - P.u1)),
    CaseRule('iv', lambda s, P: _large_p2_below_p1(P) and s > _split(P), lambda s, P: _pure(s + P.u2 - P.u1)),
    CaseRule('v', lambda s, P: _large_p2_below_p1(P) and s < _split(P), lambda s, P: _pure(s / (2 * P.u1))),
]

WEYL_MIXED: List[CaseRule] = [
    CaseRule('i', lambda t, P: _both_small(P) and t < P.u1 - HALF, lambda t, P: _pure(t)),
    CaseRule('ii', lambda t, P: _both_small(P) and t > P.u1 - HALF, lambda t, P: _flat(t, t + HALF - P.u1)),
    CaseRule('iii', lambda t, P: _p1_small_p2_large(P), lambda t, P: _flat(t - HALF + P.u2, t + P.u2 - P.u1)),
    CaseRule('iv', lambda t, P: _p2_small_p1_large(P) and t > P.u1, lambda t, P: (t - P.u1 + HALF,) * 3),
    CaseRule('vi', lambda t, P: _p2_small_p1_large(P) and t < P.u1,
             lambda t, P: _flat(t / (2 * P.u1), t + HALF - P.u1)),
    CaseRule('v', lambda t, P: HALF >= P.u1 >= P.u2, lambda t, P: (t - P.u1 + P.u2,) * 3),
    CaseRule('v', lambda t, P: _large_p2_below_p1(P) and t > _split(P), lambda t, P: (t - P.u1 + P.u2,) * 3),
    CaseRule('vi', lambda t, P: _large_p2_below_p1(P) and t < _split(P),
             lambda t, P: _flat(t / (2 * P.u1), t + HALF - P.u1)),
]


def matching_cases(rules: List[CaseRule], params: ParamSet, scale: str) -> List[Tuple[str, Exponents]]:
    """Casos cujos predicados valem em `params`, com os expoentes de cada um"""
    s = params.smoothness(scale)
    return [(rule.case, rule.exponents(s, params)) for rule in rules if rule.applies(s, params)]
