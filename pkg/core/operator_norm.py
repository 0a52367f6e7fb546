"""
Norma de operador ||M: ℓ_src -> ℓ_tgt|| entre espaços de dimensão finita.

Ramos certificados (valor exato):
  - src = 1: máximo das normas-tgt das colunas
  - tgt = ∞: máximo das normas-src' das linhas
  - src = tgt = 2: maior valor singular
  - m_in = 1 ou m_out = 1: coluna / funcional
  - src = ∞ (real, m_in pequeno): máximo sobre vetores de sinais (pontos extremos do cubo)
  - tgt = 1 (real, m_out pequeno): o mesmo aplicado ao adjunto, ||M: p->1|| = ||M^T: ∞->p'||
Demais casos: ascensão multi-start na esfera de src, cota inferior não certificada.
"""
from dataclasses import dataclass, field
from typing import NamedTuple
import numpy as np
from loguru import logger

from config.settings import settings
from core.exceptions import BudgetError, ValidationError
from core.exponents import Exponent
from core.norms import pnorm_columns
from core.search import ratio_search, random_starts, sign_vectors
from core.utils import restart_rng


@dataclass(frozen=True)
class OptimBudget:
    restarts: int = field(default=settings.DEFAULT_RESTARTS)
    max_iter: int = field(default=settings.DEFAULT_MAX_ITER)
    seed: int = field(default=settings.DEFAULT_SEED)

    def validate(self) -> 'OptimBudget':
        if int(self.restarts) < 1:
            raise BudgetError("empty optimization budget")
        if int(self.max_iter) < 1:
            raise BudgetError("empty optimization budget: max_iter must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise BudgetError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        return self

    def scaled(self, restarts: int = None, max_iter: int = None) -> 'OptimBudget':
        """Cópia com restarts/max_iter reduzidos (triagem barata)"""
        return OptimBudget(
            restarts=max(1, restarts if restarts is not None else self.restarts),
            max_iter=max(1, max_iter if max_iter is not None else self.max_iter),
            seed=self.seed,
        )


class NormResult(NamedTuple):
    value: float
    certified: bool


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] == 0 or M.shape[1] == 0:
        raise ValidationError("operator_norm requires a nonempty 2-D matrix")
    if not np.all(np.isfinite(M)):
        raise ValidationError("matrix entries must be finite")
    return M


def certified_norm(M: np.ndarray, src: Exponent, tgt: Exponent):
    """Valor exato quando algum ramo certificado se aplica; None caso contrário"""
    m_out, m_in = M.shape
    real = not np.iscomplexobj(M)

    if src.inverse == 1 or m_in == 1:
        return float(pnorm_columns(M, tgt).max())
    if tgt.is_infinite or m_out == 1:
        return float(pnorm_columns(M.T, src.dual()).max())
    if src == Exponent.of(2) and tgt == Exponent.of(2):
        return float(np.linalg.svd(M, compute_uv=False)[0])
    if real and src.is_infinite and m_in <= settings.SIGN_ENUMERATION_MAX_DIM:
        return float(pnorm_columns(M @ sign_vectors(m_in), tgt).max())
    if real and tgt.inverse == 1 and m_out <= settings.SIGN_ENUMERATION_MAX_DIM:
        return float(pnorm_columns(M.T @ sign_vectors(m_out), src.dual()).max())
    return None


def operator_norm(M, p_src, p_tgt, budget: OptimBudget = None) -> NormResult:
    """
    Retorna (valor, certificado).
    Sem ramo certificado, o valor é o máximo da razão sobre os starts
    (coordenadas, vetor constante e `restarts` starts gaussianos) após ascensão.
    """
    budget = (budget or OptimBudget()).validate()
    M = _as_matrix(M)
    src, tgt = Exponent.of(p_src), Exponent.of(p_tgt)

    exact = certified_norm(M, src, tgt)
    if exact is not None:
        return NormResult(exact, True)

    m_in = M.shape[1]
    complex_values = np.iscomplexobj(M)
    columns = [np.eye(m_in), np.ones((m_in, 1))]
    for index in range(budget.restarts):
        columns.append(random_starts(restart_rng(budget.seed, index), m_in, 1, complex_values))
    starts = np.hstack(columns)

    result = ratio_search(M, np.eye(m_in), src, tgt, starts, maximize=True, max_iter=budget.max_iter)
    logger.debug(
        f"operator_norm {src}->{tgt} ({M.shape[0]}x{m_in}): {result.value:.12g} "
        f"não certificado, convergiu={result.converged}"
    )
    return NormResult(result.value, False)
