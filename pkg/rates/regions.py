"""
Regiões do quadrado (1/p1, 1/p2) para Bernstein x Weyl (suavidade mista) e
ordens dos números de identidade id^{2n}_{p1,p2}.
"""
from dataclasses import dataclass
from fractions import Fraction

from core.exceptions import ValidationError
from core.exponents import TWO, Exponent

REGIONS = ('I', 'II', 'III', 'IV', 'V')
SAME_ORDER = {'I': True, 'II': False, 'III': False, 'IV': True, 'V': True}


@dataclass
class RegionReport:
    region: str
    same_order: bool
    p1: Exponent
    p2: Exponent

    def to_dict(self) -> dict:
        return {
            'region': self.region,
            'same_order': self.same_order,
            'relation': 'same order' if self.same_order else 'bernstein strictly faster',
            'p1': str(self.p1),
            'p2': str(self.p2),
        }


def classify_region(p1, p2) -> str:
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    if p1 <= TWO and p2 <= TWO:
        return 'I'
    if p1 <= TWO:
        return 'II'
    if p1 < p2:
        return 'III'
    if p2 >= TWO:
        return 'IV'
    return 'V'


def compare_bernstein_weyl(p1, p2) -> RegionReport:
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    region = classify_region(p1, p2)
    return RegionReport(region, SAME_ORDER[region], p1, p2)


def identity_order(kind: str, p1, p2) -> Fraction:
    """
    γ em c_n(id^{2n}_{p1,p2}) ≍ n^γ (gelfand) ou em b_n(id^{2n}_{p1,p2}) ≳ n^γ (bernstein)
    """
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    u1, u2 = p1.inverse, p2.inverse
    half = Fraction(1, 2)
    if kind == 'gelfand':
        if TWO <= p1 <= p2:
            return Fraction(0)
        if p1 <= TWO <= p2:
            return half - u1
        return u2 - u1
    if kind == 'bernstein':
        if TWO <= p2 <= p1:
            return Fraction(0)
        if p2 <= TWO <= p1:
            return u2 - half
        return u2 - u1
    raise ValidationError(f"identity order is tabulated for 'bernstein' and 'gelfand', got '{kind}'")
