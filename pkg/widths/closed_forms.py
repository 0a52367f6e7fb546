"""
Formas fechadas para larguras do operador identidade id_{p1,p2}^m.
"""
from typing import Optional

from core.exponents import Exponent
from core.utils import positive_part


def identity_norm(m: int, p1, p2) -> float:
    """||id: ℓ_{p1}^m -> ℓ_{p2}^m|| = m^{(1/p2 - 1/p1)_+}"""
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    return float(m) ** float(positive_part(p2.inverse - p1.inverse))


def full_dimension_value(m: int, p1, p2) -> float:
    """
    Razão mínima ||x||_{p2}/||x||_{p1} em R^m:
    m^{1/p2 - 1/p1} (vetor constante) se p1 <= p2, senão 1 (vetor coordenado).
    """
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    if p1 <= p2:
        return float(m) ** float(p2.inverse - p1.inverse)
    return 1.0


def exact_identity_width(kind: str, m: int, n: int, p1, p2) -> Optional[float]:
    """
    Valor exato de kind_n(id_{p1,p2}^m) quando conhecido, None caso contrário.

    - n > m: 0 (posto)
    - p1 = p2: 1 para todas as s-numbers e Bernstein (Weyl só se p = 2,
      pois x_n(id: ℓ1^n -> ℓ1^n) = n^{-1/2})
    - n = 1: norma do operador
    - n = m: Bernstein, Gelfand e Kolmogorov valem a razão mínima em R^m
    """
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    if n < 1 or m < 1:
        return None
    if n > m:
        return 0.0
    if p1 == p2:
        if kind != 'weyl' or p1 == Exponent.of(2):
            return 1.0
        return None
    if n == 1:
        return identity_norm(m, p1, p2)
    if n == m and kind in ('bernstein', 'gelfand', 'kolmogorov'):
        return full_dimension_value(m, p1, p2)
    return None
