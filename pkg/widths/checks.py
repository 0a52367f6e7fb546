"""
Verificações cruzadas entre estimadores: dualidades, desigualdade de Pietsch,
sanduíche b <= c,d <= a, propriedade de ideal e colapso no caso Hilbert.

Cada verificação devolve um relatório; falha não é exceção.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional
import math
import numpy as np
from loguru import logger
from scipy.linalg import null_space

from config.settings import settings
from core.exceptions import ValidationError
from core.exponents import Exponent
from core.operator_norm import OptimBudget
from widths.operators import KINDS, FiniteOperator, SearchHints
from widths.tables import estimate_width


@dataclass
class ProductReport:
    """Produto de dois fatores que deve valer 1"""
    name: str
    factors: Dict[str, float] = field(default_factory=dict)
    product: float = math.nan
    tolerance: float = 0.0
    passed: bool = False
    inconclusive: bool = False
    note: str = ''

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'factors': {k: float(v) for k, v in self.factors.items()},
            'product': float(self.product),
            'tolerance': self.tolerance,
            'passed': self.passed,
            'inconclusive': self.inconclusive,
            'note': self.note,
        }


@dataclass
class ComparisonReport:
    """lhs <= rhs; passed = None em modo diagnóstico"""
    name: str
    lhs: float
    rhs: float
    passed: Optional[bool]
    note: str = ''
    values: Dict[str, float] = field(default_factory=dict)

    @property
    def diagnostic(self) -> bool:
        return self.passed is None

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'lhs': float(self.lhs),
            'rhs': float(self.rhs),
            'passed': self.passed,
            'note': self.note,
            'values': {k: float(v) for k, v in self.values.items()},
        }


def _basis_of(estimate) -> Optional[np.ndarray]:
    witness = estimate.diagnostics.witness
    if isinstance(witness, dict) and witness.get('basis') is not None:
        return np.asarray(witness['basis'])
    return None


def _product_report(name: str, factors: Dict[str, float], tolerance: float, note: str = '') -> ProductReport:
    a, b = factors.values()
    product = a * b
    passed = abs(product - 1.0) <= tolerance
    log = logger.info if passed else logger.warning
    log(f"{name}: produto {product:.6f} ({'ok' if passed else 'FALHOU'})")
    return ProductReport(name, factors, product, tolerance, passed, False, note)


def check_pukhov(n: int, p1, p2, budget: OptimBudget = None, tolerance: float = None) -> ProductReport:
    """
    b_n(id_{p1,p2}^{2n}) · d_{n+1}(id_{p1',p2'}^{2n}) = 1.
    O índice n+1 corresponde à largura clássica com subespaços de dimensão n.
    """
    tolerance = settings.DUALITY_TOLERANCE if tolerance is None else tolerance
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    m = 2 * int(n)
    name = f"pukhov(n={n}, p1={p1}, p2={p2})"
    if m > settings.MAX_DUALITY_DIM:
        logger.warning(f"{name}: dimensão {m} acima de {settings.MAX_DUALITY_DIM}, inconclusivo")
        return ProductReport(name, tolerance=tolerance, inconclusive=True,
                             note=f"dimension 2n={m} exceeds {settings.MAX_DUALITY_DIM}")

    b = estimate_width('bernstein', FiniteOperator.identity_of(m, p1, p2), n, budget)
    d = estimate_width('kolmogorov', FiniteOperator.identity_of(m, p1.dual(), p2.dual()), n + 1, budget)
    return _product_report(name, {'bernstein': b.value, 'kolmogorov': d.value}, tolerance,
                           note=f"{b.direction} x {d.direction}")


def check_bern_gelfand_duality(m: int, n: int, p1, p2, budget: OptimBudget = None,
                               tolerance: float = None) -> ProductReport:
    """b_n(id_{p1,p2}^m) · c_{m-n+1}(id_{p2,p1}^m) = 1"""
    tolerance = settings.DUALITY_TOLERANCE if tolerance is None else tolerance
    if not 1 <= n <= m:
        raise ValidationError(f"duality check requires 1 <= n <= m, got n={n}, m={m}")
    p1, p2 = Exponent.of(p1), Exponent.of(p2)
    name = f"bern_gelfand(m={m}, n={n}, p1={p1}, p2={p2})"
    if m > settings.MAX_DUALITY_DIM:
        return ProductReport(name, tolerance=tolerance, inconclusive=True,
                             note=f"dimension m={m} exceeds {settings.MAX_DUALITY_DIM}")

    T = FiniteOperator.identity_of(m, p1, p2)
    b = estimate_width('bernstein', T, n, budget)
    # o subespaço ótimo de Bernstein é candidato natural para o Gelfand do inverso
    hint = _basis_of(b)
    hints = SearchHints([hint]) if hint is not None else None
    c = estimate_width('gelfand', T.inverse(), m - n + 1, budget, hints)
    return _product_report(name, {'bernstein': b.value, 'gelfand': c.value}, tolerance,
                           note=f"{b.direction} x {c.direction}")


def check_pietsch(T: FiniteOperator, n: int, budget: OptimBudget = None) -> ComparisonReport:
    """
    b_{2n-1}(T) <= e · (x_1 ··· x_n)^{1/n}.
    Certificado só quando src = tgt = 2; caso contrário modo diagnóstico.
    """
    k = 2 * n - 1
    lhs = 0.0 if k > T.m_in else estimate_width('bernstein', T, k, budget).value
    weyl = [estimate_width('weyl', T, j, budget) for j in range(1, n + 1)]
    values = [w.value for w in weyl]
    rhs = math.e * float(np.prod(values)) ** (1.0 / n) if min(values) > 0 else 0.0
    name = f"pietsch({T.describe()}, n={n})"
    if T.is_hilbert:
        passed = lhs <= rhs + settings.PIETSCH_TOL
        (logger.info if passed else logger.warning)(f"{name}: {lhs:.6g} <= {rhs:.6g}: {passed}")
        return ComparisonReport(name, lhs, rhs, passed, 'certified')
    logger.info(f"{name}: modo diagnóstico, {lhs:.6g} vs {rhs:.6g}")
    return ComparisonReport(name, lhs, rhs, None, 'diagnostic: uncertified Weyl/Bernstein values')


def check_sandwich(T: FiniteOperator, n: int, budget: OptimBudget = None) -> ComparisonReport:
    """
    b_n <= min(c_n, d_n) e min(c_n, d_n) <= a_n.
    A fatoração de a_n vira dica para c_n (núcleo de V) e d_n (complemento da imagem de U);
    o subespaço de c_n vira dica para b_n.
    """
    a = estimate_width('approximation', T, n, budget)
    c_hints, d_hints = SearchHints(), SearchHints()
    witness = a.diagnostics.witness
    if isinstance(witness, dict) and 'U' in witness:
        U, V = np.asarray(witness['U']), np.asarray(witness['V'])
        kernel_V = null_space(V)
        kernel_UH = null_space(U.conj().T)
        if kernel_V.shape[1] >= T.m_in - n + 1:
            c_hints.subspaces.append(kernel_V[:, :T.m_in - n + 1])
        if kernel_UH.shape[1] >= T.m_out - n + 1:
            d_hints.subspaces.append(kernel_UH[:, :T.m_out - n + 1])

    c = estimate_width('gelfand', T, n, budget, c_hints)
    d = estimate_width('kolmogorov', T, n, budget, d_hints)
    c_basis = _basis_of(c)
    b = estimate_width('bernstein', T, n, budget, SearchHints([c_basis]) if c_basis is not None else None)

    middle = min(c.value, d.value)
    tol = settings.SANDWICH_TOL * max(1.0, a.value)
    passed = b.value <= middle + tol and middle <= a.value + tol
    name = f"sandwich({T.describe()}, n={n})"
    certified = all(e.diagnostics.certified or e.is_exact for e in (a, c, d))
    (logger.info if passed else logger.warning)(
        f"{name}: b={b.value:.6g} c={c.value:.6g} d={d.value:.6g} a={a.value:.6g}: {passed}"
    )
    return ComparisonReport(
        name, b.value, a.value, passed,
        'certified' if certified else 'uncertified inner norms',
        {'bernstein': b.value, 'gelfand': c.value, 'kolmogorov': d.value, 'approximation': a.value},
    )


def check_tikhomirov(T: FiniteOperator, n: int, budget: OptimBudget = None) -> ComparisonReport:
    """b_n <= 2 a_n"""
    b = estimate_width('bernstein', T, n, budget)
    a = estimate_width('approximation', T, n, budget)
    rhs = 2.0 * a.value
    passed = b.value <= rhs + settings.SANDWICH_TOL * max(1.0, rhs)
    return ComparisonReport(f"tikhomirov({T.describe()}, n={n})", b.value, rhs, passed)


def check_ideal_property(s, n: int, budget: OptimBudget = None, p1='2', p2='2') -> ComparisonReport:
    """b_n(id ∘ diag(s)) <= max(s) · b_n(id)"""
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or s.size < 1 or np.any(s <= 0):
        raise ValidationError("ideal property check requires positive scalings")
    scaled = estimate_width('bernstein', FiniteOperator.diagonal(s, p1, p2), n, budget)
    base = estimate_width('bernstein', FiniteOperator.identity_of(s.size, p1, p2), n, budget)
    rhs = float(s.max()) * base.value
    passed = scaled.value <= rhs + settings.SANDWICH_TOL * max(1.0, rhs)
    return ComparisonReport(f"ideal(m={s.size}, n={n})", scaled.value, rhs, passed)


def check_hilbert_collapse(M, budget: OptimBudget = None, kinds: List[str] = None) -> ComparisonReport:
    """Todas as larguras = valores singulares quando src = tgt = 2"""
    T = FiniteOperator(M, 2, 2)
    sigma = T.singular_values()
    worst = 0.0
    passed = True
    for kind in kinds or KINDS:
        for n in range(1, min(T.m_in, T.m_out) + 1):
            estimate = estimate_width(kind, T, n, budget)
            scale = max(sigma[0], 1e-300)
            deviation = abs(estimate.value - sigma[n - 1]) / scale
            tol = settings.HILBERT_REL_TOL if estimate.is_exact else settings.HEURISTIC_REL_TOL
            worst = max(worst, deviation)
            if deviation > tol:
                passed = False
                logger.warning(f"hilbert collapse: {kind} n={n} desvio {deviation:.3e} > {tol:.0e}")
    return ComparisonReport(f"hilbert_collapse({T.describe()})", worst, settings.HILBERT_REL_TOL, passed,
                            'max relative deviation')
