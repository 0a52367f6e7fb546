"""
Cronograma de limiares da aproximação não linear por soft thresholding.

    θ = ½ (t - 1/p1 + 1/δ2) / (1 - p1/δ2),   δ2 = max(p2, 2)
    α = -t + 1/p1 + θ,   β = -1/p1 - θ
    ε_μ = 0 (μ <= J),    ε_μ = 2^{μα} 2^{Jβ} μ^{-(d-1)/p1}   (J < μ <= K)
"""
from dataclasses import dataclass, field
from fractions import Fraction
import math
import numpy as np

from config.settings import settings
from core.exceptions import GuardError, LimitingCaseError, RegimeError, ValidationError
from core.exponents import Exponent, ParamSet, TWO
from core.utils import positive_part, to_fraction

MAX_K_SEARCH = 4096


def delta2(p2) -> Exponent:
    p2 = Exponent.of(p2)
    return p2 if p2 > TWO else TWO


def theta(t, p1, p2) -> Fraction:
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    t = to_fraction(t)
    d2 = delta2(p2)
    if not p1 < d2:
        raise RegimeError("threshold regime requires p1 < max(p2,2)")
    bound = p1.inverse - d2.inverse
    if abs(float(t - bound)) <= settings.GUARD_BAND:
        raise LimitingCaseError(f"insufficient smoothness: t = 1/p1 - 1/max(p2,2) = {bound} is excluded")
    if t < bound:
        raise RegimeError(f"insufficient smoothness: requires t > 1/p1 - 1/max(p2,2) = {bound}")
    return Fraction(1, 2) * (t - p1.inverse + d2.inverse) / (1 - d2.inverse / p1.inverse)


def _check_regime(params: ParamSet) -> None:
    if params.q != TWO:
        raise RegimeError(f"threshold schedule is defined for target q = 2 only, got q = {params.q}")
    params.require_compact('mixed')


def choose_K(J: int, params: ParamSet) -> int:
    """
    Menor L >= J com cota de truncamento (constante 1) <= 2^{-Jt} J^{(d-1)(1/2 - 1/p1)}:
    2^{L(-t + 1/p1 - 1/p2)} se p1 < p2, senão 2^{-Lt} L^{(d-1)(1/2 - 1/p1)_+}.
    """
    if int(J) != J or J < 1:
        raise ValidationError(f"budget level J must be an integer >= 1, got {J}")
    J = int(J)
    t, u1, u2, d = float(params.t), float(params.u1), float(params.u2), params.d
    target = -J * t + (d - 1) * (0.5 - u1) * math.log2(J)

    if params.p1 < params.p2:
        slope = -t + u1 - u2
        if slope >= 0:
            raise RegimeError("truncation bound does not decay: requires t > 1/p1 - 1/p2")

        def bound(L: int) -> float:
            return L * slope
    else:
        if t <= 0:
            raise RegimeError("truncation bound does not decay: requires t > 0")
        log_power = (d - 1) * float(positive_part(Fraction(1, 2) - params.u1))

        def bound(L: int) -> float:
            return -L * t + log_power * math.log2(L)

    for L in range(J, J + MAX_K_SEARCH):
        if bound(L) <= target + 1e-12:
            return L
    raise RegimeError(f"no cutoff level K found within {MAX_K_SEARCH} levels of J={J}")


@dataclass
class ThresholdSchedule:
    J: int
    K: int
    theta: Fraction
    alpha: Fraction
    beta: Fraction
    delta2: Exponent
    d: int
    epsilons: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, J: int, params: ParamSet, K: int = None) -> 'ThresholdSchedule':
        _check_regime(params)
        if int(J) != J or J < 1:
            raise ValidationError(f"budget level J must be an integer >= 1, got {J}")
        J = int(J)
        if J > settings.THRESHOLD_MAX_J:
            raise GuardError(f"J={J} exceeds the desk-scale cap J <= {settings.THRESHOLD_MAX_J}")
        th = theta(params.t, params.p1, params.p2)
        K = choose_K(J, params) if K is None else int(K)
        if K < J:
            raise ValidationError(f"cutoff K={K} must be >= J={J}")
        alpha = -params.t + params.u1 + th
        beta = -params.u1 - th

        epsilons = np.zeros(K + 1)
        for mu in range(J + 1, K + 1):
            log2_eps = mu * float(alpha) + J * float(beta) - (params.d - 1) * float(params.u1) * math.log2(mu)
            epsilons[mu] = 2.0 ** log2_eps
        epsilons.setflags(write=False)
        return cls(J, K, th, alpha, beta, delta2(params.p2), params.d, epsilons)

    def epsilon(self, mu: int) -> float:
        if mu < 0 or mu > self.K:
            raise ValidationError(f"block {mu} outside the schedule range 0..{self.K}")
        return float(self.epsilons[mu])

    def to_dict(self) -> dict:
        return {
            'J': self.J,
            'K': self.K,
            'theta': float(self.theta),
            'alpha': float(self.alpha),
            'beta': float(self.beta),
            'delta2': str(self.delta2),
            'epsilons': [float(e) for e in self.epsilons],
        }
