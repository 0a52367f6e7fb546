from abc import ABC, abstractmethod
from typing import Callable, List, Optional, Tuple
import numpy as np
from loguru import logger
from scipy.optimize import minimize

from config.settings import settings
from core.exceptions import ValidationError
from core.operator_norm import OptimBudget, operator_norm
from core.search import orthonormal_basis
from core.utils import parallel_map, restart_rng
from widths.closed_forms import exact_identity_width
from widths.operators import EstimateDiagnostics, FiniteOperator, SearchHints, WidthEstimate

# objetivo(base, chave, completo) -> (valor, testemunha, certificado)
Objective = Callable[[np.ndarray, int, bool], Tuple[float, object, bool]]


class WidthEstimator(ABC):
    kind: str = ''

    def __init__(self, name: str):
        self.name = name

    def estimate(
        self,
        T: FiniteOperator,
        n: int,
        budget: OptimBudget = None,
        hints: Optional[SearchHints] = None,
    ) -> WidthEstimate:
        """Casos exatos primeiro; depois a busca específica do estimador"""
        budget = (budget or OptimBudget()).validate()
        n = self._validate_index(T, n)

        # === 1. POSTO: n > rank(T) => 0 ===
        if n > T.rank:
            return self._exact(n, 0.0, budget, 'rank')

        # === 2. HILBERT: todas as larguras = valores singulares ===
        if T.is_hilbert:
            return self._exact(n, float(T.singular_values()[n - 1]), budget, 'svd')

        # === 3. IDENTIDADE: formas fechadas ===
        if T.is_identity:
            closed = exact_identity_width(self.kind, T.m_in, n, T.src, T.tgt)
            if closed is not None:
                return self._exact(n, closed, budget, 'closed form')

        # === 4. n = 1: norma do operador ===
        if n == 1:
            value, certified = operator_norm(T.matrix, T.src, T.tgt, budget)
            direction = 'exact' if certified else 'lower_bound'
            diagnostics = EstimateDiagnostics(
                restarts_used=0 if certified else budget.restarts,
                seed=budget.seed,
                certified=certified,
                note='operator norm',
            )
            return WidthEstimate(self.kind, n, value, direction, diagnostics)

        # === 5. BUSCA ===
        return self._search(T, n, budget, hints or SearchHints())

    def _validate_index(self, T: FiniteOperator, n: int) -> int:
        if int(n) != n or int(n) < 1:
            raise ValidationError(f"index n must be an integer >= 1, got {n}")
        return int(n)

    def _exact(self, n: int, value: float, budget: OptimBudget, note: str) -> WidthEstimate:
        diagnostics = EstimateDiagnostics(restarts_used=0, seed=budget.seed, note=note)
        return WidthEstimate(self.kind, n, float(value), 'exact', diagnostics)

    @abstractmethod
    def _search(self, T: FiniteOperator, n: int, budget: OptimBudget, hints: SearchHints) -> WidthEstimate:
        """Busca numérica para os casos sem forma fechada"""
        pass


class SubspaceSearch:
    """
    Otimização externa sobre subespaços (bases ortonormais m × k):
    triagem de todos os candidatos, busca local nos melhores, polimento
    Nelder-Mead quando há poucos parâmetros, avaliação final completa.
    """

    def __init__(self, objective: Objective, maximize: bool, budget: OptimBudget):
        self.objective = objective
        self.maximize = maximize
        self.budget = budget

    def _better(self, a: float, b: float) -> bool:
        return a > b if self.maximize else a < b

    def run(self, candidates: List[np.ndarray]) -> Tuple[float, object, np.ndarray, bool, int]:
        if not candidates:
            raise ValidationError("no candidate subspaces to search")

        # === 1. TRIAGEM ===
        screened = parallel_map(
            lambda item: self.objective(item[1], item[0], False)[0],
            list(enumerate(candidates)),
        )
        order = sorted(
            range(len(candidates)),
            key=lambda i: (-screened[i] if self.maximize else screened[i], i),
        )
        top = order[:settings.REFINE_TOP]

        # === 2. BUSCA LOCAL ===
        refined = parallel_map(lambda j: self._hill_climb(candidates[j], screened[j], j), top)

        # === 3. POLIMENTO ===
        best_basis, best_value = refined[0]
        for basis, value in refined[1:]:
            if self._better(value, best_value):
                best_basis, best_value = basis, value
        polished = self._polish(best_basis, best_value)
        finalists = [basis for basis, _ in refined] + [polished]

        # === 4. AVALIAÇÃO FINAL ===
        finals = parallel_map(
            lambda item: self.objective(item[1], 500_000 + item[0], True),
            list(enumerate(finalists)),
        )
        winner = 0
        for i in range(1, len(finals)):
            if self._better(finals[i][0], finals[winner][0]):
                winner = i
        value, witness, certified = finals[winner]
        logger.debug(
            f"SubspaceSearch: {len(candidates)} candidatos, melhor triagem "
            f"{screened[order[0]]:.10g}, final {value:.10g}"
        )
        return value, witness, finalists[winner], certified, len(candidates)

    def _hill_climb(self, basis: np.ndarray, value: float, index: int) -> Tuple[np.ndarray, float]:
        rng = restart_rng(self.budget.seed, 100_000 + index)
        sigma = 0.25
        complex_values = np.iscomplexobj(basis)
        for _ in range(settings.REFINE_STEPS):
            G = rng.standard_normal(basis.shape)
            if complex_values:
                G = G + 1j * rng.standard_normal(basis.shape)
            trial = orthonormal_basis(basis + sigma * G)
            trial_value = self.objective(trial, 900_000, False)[0]
            if self._better(trial_value, value):
                basis, value = trial, trial_value
                sigma = min(sigma * 1.5, 1.0)
            else:
                sigma *= 0.6
            if sigma < 1e-4:
                break
        return basis, value

    def _polish(self, basis: np.ndarray, value: float) -> np.ndarray:
        if np.iscomplexobj(basis) or basis.size > settings.POLISH_MAX_PARAMS:
            return basis
        sign = -1.0 if self.maximize else 1.0

        def fun(z: np.ndarray) -> float:
            trial = orthonormal_basis(basis + z.reshape(basis.shape))
            return sign * self.objective(trial, 900_000, False)[0]

        result = minimize(
            fun,
            np.zeros(basis.size),
            method='Nelder-Mead',
            options={'xatol': 1e-10, 'fatol': 1e-13, 'maxfev': 400 * basis.size},
        )
        candidate = orthonormal_basis(basis + result.x.reshape(basis.shape))
        if self._better(sign * result.fun, value):
            return candidate
        return basis
