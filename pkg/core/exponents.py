"""
Expoentes p em [1, ∞] e o conjunto de parâmetros (d, t, p1, p2, q).

O expoente é guardado pelo recíproco 1/p como Fraction, de modo que
p = ∞ é exatamente 1/p = 0 e fórmulas como (1/p1 - 1/p2)_+ ficam exatas.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
import math
from typing import Union

from config.settings import settings
from core.exceptions import ValidationError, RegimeError
from core.utils import positive_part, strict_gt, to_fraction

_INFINITY_TOKENS = ('inf', 'infinity', '∞', '+inf')


@total_ordering
@dataclass(frozen=True)
class Exponent:
    inverse: Fraction

    def __post_init__(self):
        if not isinstance(self.inverse, Fraction):
            object.__setattr__(self, 'inverse', to_fraction(self.inverse))
        if self.inverse < 0 or self.inverse > 1:
            raise ValidationError(f"exponent must lie in [1, inf], got 1/p = {self.inverse}")

    @classmethod
    def of(cls, value: Union['Exponent', int, float, str, Fraction]) -> 'Exponent':
        """Aceita Exponent, número, Fraction ou texto ('4/3', '2.5', 'inf')"""
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, float) and math.isinf(value):
            if value < 0:
                raise ValidationError("exponent must be >= 1")
            return cls(Fraction(0))
        if isinstance(value, float) and math.isnan(value):
            raise ValidationError("exponent is NaN")
        p = to_fraction(value)
        if p < 1:
            raise ValidationError(f"exponent must be >= 1, got {value}")
        return cls(1 / p)

    @classmethod
    def parse(cls, text: str) -> 'Exponent':
        token = text.strip().lower()
        if token in _INFINITY_TOKENS:
            return cls(Fraction(0))
        try:
            p = Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot parse exponent '{text}'")
        if p < 1:
            raise ValidationError(f"exponent must be >= 1, got {text}")
        return cls(1 / p)

    @property
    def is_infinite(self) -> bool:
        return self.inverse == 0

    @property
    def value(self) -> float:
        """p como float (math.inf para ∞); usar só em contas numéricas"""
        return math.inf if self.is_infinite else float(1 / self.inverse)

    @property
    def exact(self) -> Fraction:
        if self.is_infinite:
            raise ValidationError("infinite exponent has no finite value")
        return 1 / self.inverse

    def dual(self) -> 'Exponent':
        return Exponent(1 - self.inverse)

    def __lt__(self, other: 'Exponent') -> bool:
        other = Exponent.of(other)
        return self.inverse > other.inverse

    def __eq__(self, other) -> bool:
        if isinstance(other, Exponent):
            return self.inverse == other.inverse
        try:
            return self.inverse == Exponent.of(other).inverse
        except (ValidationError, TypeError):
            return False

    def __hash__(self) -> int:
        return hash(self.inverse)

    def __str__(self) -> str:
        if self.is_infinite:
            return 'inf'
        p = 1 / self.inverse
        return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"

    def __repr__(self) -> str:
        return f"Exponent({self})"


ONE = Exponent(Fraction(1))
TWO = Exponent(Fraction(1, 2))
INF = Exponent(Fraction(0))


def dual(p) -> Exponent:
    """Expoente conjugado p' = p/(p-1); dual(1)=∞, dual(∞)=1"""
    return Exponent.of(p).dual()


SCALES = ('isotropic', 'mixed')


@dataclass(frozen=True)
class ParamSet:
    d: int
    t: Fraction
    p1: Exponent
    p2: Exponent
    q: Exponent = field(default=TWO)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValidationError(f"dimension d must be an integer >= 1, got {self.d}")
        object.__setattr__(self, 't', to_fraction(self.t))
        object.__setattr__(self, 'p1', Exponent.of(self.p1))
        object.__setattr__(self, 'p2', Exponent.of(self.p2))
        object.__setattr__(self, 'q', Exponent.of(self.q))

    @classmethod
    def build(cls, d, t, p1, p2, q='2') -> 'ParamSet':
        return cls(int(d), to_fraction(t), Exponent.of(p1), Exponent.of(p2), Exponent.of(q))

    @property
    def u1(self) -> Fraction:
        return self.p1.inverse

    @property
    def u2(self) -> Fraction:
        return self.p2.inverse

    def smoothness(self, scale: str) -> Fraction:
        """t/d no caso isotrópico, t no caso misto"""
        if scale == 'isotropic':
            return self.t / self.d
        if scale == 'mixed':
            return self.t
        raise ValidationError(f"unknown scale '{scale}', expected one of {SCALES}")

    def is_compact(self, scale: str) -> bool:
        s = self.smoothness(scale)
        bound = positive_part(self.u1 - self.u2)
        return abs(float(s - bound)) > settings.GUARD_BAND and s > bound

    def require_compact(self, scale: str) -> None:
        """Compacidade com desigualdade estrita e banda de guarda"""
        s = self.smoothness(scale)
        bound = positive_part(self.u1 - self.u2)
        label = 't/d > (1/p1 - 1/p2)_+' if scale == 'isotropic' else 't > (1/p1 - 1/p2)_+'
        if not strict_gt(s, bound, label):
            raise RegimeError(f"embedding is not compact: requires {label}")

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            't': float(self.t),
            'p1': str(self.p1),
            'p2': str(self.p2),
            'q': str(self.q),
        }
