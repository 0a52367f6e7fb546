"""
Números de aproximação a_n(T) = inf_{rank L < n} ||T - L||.

Candidatos de posto n-1: SVD truncado, T P_S e P_N T com projeções
ortogonais em subespaços coordenados/gaussianos. Os melhores são refinados
por minimização alternada (Powell sobre U com V fixo e vice-versa).
"""
from typing import List, Tuple
import numpy as np
from loguru import logger
from scipy.optimize import minimize

from config.settings import settings
from core.operator_norm import operator_norm
from core.utils import parallel_map
from widths.base_estimator import WidthEstimator
from widths.candidates import coordinate_subspaces, gaussian_subspaces
from widths.operators import EstimateDiagnostics, WidthEstimate

Factor = Tuple[np.ndarray, np.ndarray]


class ApproximationEstimator(WidthEstimator):
    kind = 'approximation'

    def __init__(self):
        super().__init__("Approximation")

    def _candidates(self, M: np.ndarray, r: int, budget, hints) -> List[Factor]:
        m_out, m_in = M.shape
        complex_values = np.iscomplexobj(M)
        U, s, Vh = np.linalg.svd(M)
        factors = [(U[:, :r] * s[None, :r], Vh[:r, :])]

        sources = hints.bases(r, m_in) + coordinate_subspaces(m_in, r, budget.seed)
        sources += gaussian_subspaces(m_in, r, max(1, budget.restarts // 2), budget.seed, complex_values)
        for S in sources:
            factors.append((M @ S, S.conj().T))

        targets = coordinate_subspaces(m_out, r, budget.seed)
        targets += gaussian_subspaces(m_out, r, max(1, budget.restarts // 2), budget.seed, complex_values, offset=700_000)
        for N in targets:
            factors.append((N, N.conj().T @ M))
        return factors

    def _search(self, T, n, budget, hints):
        M = T.matrix
        r = n - 1
        screen = budget.scaled(restarts=8, max_iter=min(budget.max_iter, 200))

        def residual(factor: Factor, b) -> Tuple[float, bool]:
            U, V = factor
            return operator_norm(M - U @ V, T.src, T.tgt, b)

        # === 1. TRIAGEM ===
        factors = self._candidates(M, r, budget, hints)
        screened = parallel_map(lambda f: residual(f, screen)[0], factors)
        order = sorted(range(len(factors)), key=lambda i: (screened[i], i))
        top = [factors[i] for i in order[:settings.REFINE_TOP]]

        # === 2. MINIMIZAÇÃO ALTERNADA ===
        if T.is_real:
            top = parallel_map(lambda f: self._alternate(f, lambda g: residual(g, screen)[0]), top)

        # === 3. AVALIAÇÃO FINAL ===
        finals = parallel_map(lambda f: residual(f, budget), top)
        winner = min(range(len(finals)), key=lambda i: (finals[i][0], i))
        value, certified = finals[winner]
        logger.debug(f"Approximation n={n}: {len(factors)} candidatos, final {value:.10g}")

        diagnostics = EstimateDiagnostics(
            restarts_used=len(factors),
            seed=budget.seed,
            witness={'U': top[winner][0], 'V': top[winner][1]},
            converged=True,
            certified=bool(certified),
            note='rank factorization search',
        )
        direction = 'upper_bound' if certified else 'heuristic'
        return WidthEstimate(self.kind, n, value, direction, diagnostics)

    def _alternate(self, factor: Factor, fun) -> Factor:
        U, V = factor
        if max(U.size, V.size) > settings.POLISH_MAX_PARAMS:
            return factor
        best = fun(factor)
        for _ in range(2):
            result = minimize(lambda z: fun((z.reshape(U.shape), V)), U.ravel(), method='Powell',
                              options={'maxfev': 60 * U.size, 'xtol': 1e-8, 'ftol': 1e-12})
            if result.fun < best:
                U, best = result.x.reshape(U.shape), result.fun
            result = minimize(lambda z: fun((U, z.reshape(V.shape))), V.ravel(), method='Powell',
                              options={'maxfev': 60 * V.size, 'xtol': 1e-8, 'ftol': 1e-12})
            if result.fun < best:
                V, best = result.x.reshape(V.shape), result.fun
        return U, V
