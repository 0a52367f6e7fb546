"""
Classificadores de regime: expoentes (α, β) das taxas

    n^{-α}              (escala isotrópica, t/d)
    n^{-α} (log n)^{(d-1)β}   (suavidade mista dominante)

para números de Bernstein, números de Weyl, larguras não lineares e
aproximação linear por truncamento. Aritmética exata em Fraction; toda
desigualdade estrita em t passa pela banda de guarda.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple, Union

from core.exceptions import LimitingCaseError, RegimeError
from core.exponents import ONE, TWO, ParamSet
from core.utils import positive_part, strict_gt

HALF = Fraction(1, 2)


@dataclass
class RateExponents:
    table: str
    case: str
    alpha: Fraction
    beta_lo: Fraction
    beta_hi: Fraction
    two_sided: bool = True
    preconditions: List[str] = field(default_factory=list)

    @property
    def beta(self) -> Union[Fraction, Tuple[Fraction, Fraction]]:
        if self.beta_lo == self.beta_hi:
            return self.beta_lo
        return self.beta_lo, self.beta_hi

    @property
    def regime_label(self) -> str:
        return f"{self.table}-case-{self.case}"

    def to_dict(self) -> dict:
        beta = self.beta
        return {
            'alpha': float(self.alpha),
            'beta': [float(b) for b in beta] if isinstance(beta, tuple) else float(beta),
            'beta_lo': float(self.beta_lo),
            'beta_hi': float(self.beta_hi),
            'case': self.case,
            'two_sided': self.two_sided,
        }


def _rate(table: str, case: str, alpha, beta=Fraction(0), beta_hi=None, two_sided=True, why=()) -> RateExponents:
    beta_hi = beta if beta_hi is None else beta_hi
    return RateExponents(table, case, Fraction(alpha), Fraction(beta), Fraction(beta_hi), two_sided, list(why))


def _split_threshold(params: ParamSet) -> Fraction:
    """(1/p2 - 1/p1) / (p1/2 - 1), fronteira dos casos com p1 > 2"""
    u1, u2 = params.u1, params.u2
    return (u2 - u1) * 2 * u1 / (1 - 2 * u1)


def bernstein_rate_isotropic(params: ParamSet) -> RateExponents:
    params.require_compact('isotropic')
    table = 'bernstein-isotropic'
    s, u1, u2 = params.smoothness('isotropic'), params.u1, params.u2
    p1, p2 = params.p1, params.p2

    if (p2 < p1 and p1 <= TWO) or p1 <= p2:
        return _rate(table, 'i', s, why=['p1 <= p2 or p2 < p1 <= 2'])
    if p2 <= TWO <= p1:
        if strict_gt(s, u1, 't/d > 1/p1'):
            return _rate(table, 'ii', s - u1 + HALF, why=['p2 <= 2 <= p1', 't/d > 1/p1'])
        if p2 > ONE:
            return _rate(table, 'iv', s / (2 * u1), why=['p2 <= 2 <= p1', 't/d < 1/p1', 'p2 > 1'])
        raise LimitingCaseError("limiting case not covered: p2 = 1 with t/d < 1/p1")
    threshold = _split_threshold(params)
    label = 't/d > (1/p2 - 1/p1)/(p1/2 - 1)'
    if strict_gt(s, threshold, label):
        return _rate(table, 'iii', s + u2 - u1, why=['2 <= p2 <= p1', label])
    return _rate(table, 'iv', s / (2 * u1), why=['2 <= p2 <= p1', 't/d < (1/p2 - 1/p1)/(p1/2 - 1)'])


def bernstein_rate_mixed(params: ParamSet) -> RateExponents:
    p1, p2 = params.p1, params.p2
    if not (ONE < p2 and not p2.is_infinite):
        raise RegimeError("mixed Bernstein table requires 1 < p2 < ∞")
    params.require_compact('mixed')
    table = 'bernstein-mixed'
    t, u1, u2 = params.t, params.u1, params.u2

    if TWO < p1 < p2:
        # caso em aberto: só o intervalo do expoente do log é conhecido
        return _rate(table, 'open', t, t, t - u1 + HALF, two_sided=False, why=['2 < p1 < p2 < ∞'])
    if p1 <= TWO and p2 <= TWO:
        if strict_gt(u1 - HALF, t, 't < 1/p1 - 1/2'):
            return _rate(table, 'i', t, 0, why=['p1, p2 <= 2', 't < 1/p1 - 1/2'])
        return _rate(table, 'ii', t, t + HALF - u1, why=['p1, p2 <= 2', 't > 1/p1 - 1/2'])
    if p1 <= TWO <= p2:
        return _rate(table, 'ii', t, t + HALF - u1, why=['p1 <= 2 <= p2'])
    if p2 <= TWO <= p1:
        if strict_gt(t, u1, 't > 1/p1'):
            return _rate(table, 'iii', t - u1 + HALF, t - u1 + HALF, why=['p2 <= 2 <= p1', 't > 1/p1'])
        return _rate(table, 'v', t * p1.exact / 2, t - u1 + HALF, why=['p2 <= 2 <= p1', 't < 1/p1'])
    threshold = _split_threshold(params)
    label = 't > (1/p2 - 1/p1)/(p1/2 - 1)'
    if strict_gt(t, threshold, label):
        return _rate(table, 'iv', t + u2 - u1, t + u2 - u1, why=['2 <= p2 <= p1', label])
    return _rate(table, 'v', t * p1.exact / 2, t - u1 + HALF, why=['2 <= p2 <= p1', 't < (1/p2 - 1/p1)/(p1/2 - 1)'])


def weyl_rate_isotropic(params: ParamSet) -> RateExponents:
    params.require_compact('isotropic')
    table = 'weyl-isotropic'
    s, u1, u2 = params.smoothness('isotropic'), params.u1, params.u2
    p1, p2 = params.p1, params.p2

    if p1 <= TWO and p2 <= TWO:
        return _rate(table, 'i', s, why=['p1, p2 <= 2'])
    if p1 <= TWO <= p2:
        return _rate(table, 'ii', s + u2 - HALF, why=['p1 <= 2 <= p2'])
    if p2 <= TWO <= p1:
        if strict_gt(s, u1, 't/d > 1/p1'):
            return _rate(table, 'iii', s - u1 + HALF, why=['p2 <= 2 <= p1', 't/d > 1/p1'])
        return _rate(table, 'v', s * p1.exact / 2, why=['p2 <= 2 <= p1', 't/d < 1/p1'])
    if p1 <= p2:
        return _rate(table, 'iv', s + u2 - u1, why=['2 <= p1 <= p2'])
    threshold = _split_threshold(params)
    label = 't/d > (1/p2 - 1/p1)/(p1/2 - 1)'
    if strict_gt(s, threshold, label):
        return _rate(table, 'iv', s + u2 - u1, why=['2 <= p2 <= p1', label])
    return _rate(table, 'v', s * p1.exact / 2, why=['2 <= p2 < p1', 't/d < (1/p2 - 1/p1)/(p1/2 - 1)'])


def weyl_rate_mixed(params: ParamSet) -> RateExponents:
    params.require_compact('mixed')
    table = 'weyl-mixed'
    t, u1, u2 = params.t, params.u1, params.u2
    p1, p2 = params.p1, params.p2

    if p1 <= TWO and p2 <= TWO:
        if strict_gt(u1 - HALF, t, 't < 1/p1 - 1/2'):
            return _rate(table, 'i', t, 0, why=['p1, p2 <= 2', 't < 1/p1 - 1/2'])
        return _rate(table, 'ii', t, t + HALF - u1, why=['p1, p2 <= 2', 't > 1/p1 - 1/2'])
    if p1 <= TWO <= p2:
        return _rate(table, 'iii', t - HALF + u2, t + u2 - u1, why=['p1 <= 2 <= p2'])
    if p2 <= TWO <= p1:
        if strict_gt(t, u1, 't > 1/p1'):
            return _rate(table, 'iv', t - u1 + HALF, t - u1 + HALF, why=['p2 <= 2 <= p1', 't > 1/p1'])
        return _rate(table, 'vi', t * p1.exact / 2, t + HALF - u1, why=['p2 <= 2 < p1', 't < 1/p1'])
    if p1 <= p2:
        return _rate(table, 'v', t - u1 + u2, t - u1 + u2, why=['2 <= p1 <= p2'])
    threshold = _split_threshold(params)
    label = 't > (1/p2 - 1/p1)/(p1/2 - 1)'
    if strict_gt(t, threshold, label):
        return _rate(table, 'v', t - u1 + u2, t - u1 + u2, why=['2 <= p2 <= p1', label])
    return _rate(table, 'vi', t * p1.exact / 2, t + HALF - u1, why=['2 <= p2 < p1', 't < (1/p2 - 1/p1)/(p1/2 - 1)'])


def nonlinear_width_rate(params: ParamSet, scale: str) -> RateExponents:
    """Larguras não lineares: n^{-t/d} (isotrópico); cota superior n^{-t}(log n)^{(d-1)(t - 1/p1 + 1/2)} (misto)"""
    if scale == 'isotropic':
        params.require_compact('isotropic')
        return _rate('nonlinear-isotropic', 'i', params.smoothness('isotropic'), why=['t/d > (1/p1 - 1/p2)_+'])
    params.smoothness(scale)
    params.require_compact('mixed')
    bound = positive_part(params.u1 - min(params.u2, HALF))
    label = 't > (1/p1 - 1/max(p2,2))_+'
    if not strict_gt(params.t, bound, label):
        raise RegimeError(f"nonlinear width rate requires {label}")
    t, u1 = params.t, params.u1
    return _rate('nonlinear-mixed', 'i', t, t - u1 + HALF, two_sided=False, why=[label])


def approximation_rate_mixed(params: ParamSet) -> RateExponents:
    """Truncamento linear S_J (cota superior)"""
    params.require_compact('mixed')
    t, u1, u2 = params.t, params.u1, params.u2
    p1, p2 = params.p1, params.p2
    d2 = p2 if p2 > TWO else TWO
    if p1 < p2 and not p2.is_infinite:
        return _rate('approximation-mixed', 'i', t - u1 + u2, t - u1 + u2, two_sided=False, why=['p1 < p2 < ∞'])
    if d2 <= p1:
        return _rate('approximation-mixed', 'ii', t, t - u1 + HALF, two_sided=False, why=['p2 <= max(p2,2) <= p1'])
    raise RegimeError("approximation rate table covers p1 < p2 < ∞ or max(p2,2) <= p1 only")


BERNSTEIN_CLASSIFIERS = {
    'isotropic': bernstein_rate_isotropic,
    'mixed': bernstein_rate_mixed,
}

WEYL_CLASSIFIERS = {
    'isotropic': weyl_rate_isotropic,
    'mixed': weyl_rate_mixed,
}
