"""
Números de Gelfand c_n(T) = inf_{codim M < n} ||T|_M||.

O subespaço M (dimensão m_in - n + 1) é amostrado; a norma restrita
||T B : ℓ_src -> ℓ_tgt|| é exata quando src = 2 (ramo certificado sobre A B)
ou src = 1 com poucos vértices (enumeração dos vetores esparsos de span(B)).
"""
from typing import List, Optional, Tuple
import numpy as np

from config.settings import settings
from core.exponents import Exponent, TWO
from core.operator_norm import OptimBudget, certified_norm
from core.search import (
    is_exhaustive_sparse,
    projected_starts,
    random_starts,
    ratio_search,
    ratio_values,
    sparse_starts,
)
from core.utils import restart_rng
from widths.base_estimator import SubspaceSearch, WidthEstimator
from widths.candidates import coordinate_subspaces, kernel_subspaces, trailing_right_singular
from widths.operators import EstimateDiagnostics, SearchHints, WidthEstimate


def restricted_norm(
    A: np.ndarray,
    B: np.ndarray,
    src: Exponent,
    tgt: Exponent,
    budget: OptimBudget,
    key: int,
    thorough: bool,
) -> Tuple[float, Optional[np.ndarray], bool]:
    """
    ||A restrita a span(B)|| com B ortonormal.
    Retorna (valor, testemunha, exato).
    """
    m, k = B.shape

    if src == TWO:
        exact = certified_norm(A @ B, TWO, tgt)
        if exact is not None:
            return exact, None, True

    if src.inverse == 1 and is_exhaustive_sparse(B, settings.MAX_SPARSE_STARTS):
        C = sparse_starts(B, settings.MAX_SPARSE_STARTS)
        values = ratio_values(A, B, C, src, tgt)
        best = int(np.argmax(values))
        return float(values[best]), B @ C[:, best], True

    rng = restart_rng(budget.seed, 600_000 + key)
    complex_values = np.iscomplexobj(A) or np.iscomplexobj(B)
    sparse_cap = settings.MAX_SPARSE_STARTS if thorough else 48
    columns = [
        sparse_starts(B, sparse_cap, rng),
        np.eye(k),
        projected_starts(B, np.ones((m, 1))),
        random_starts(rng, k, settings.INNER_RANDOM_STARTS * (4 if thorough else 1), complex_values),
    ]
    starts = np.hstack([np.asarray(c, dtype=np.complex128 if complex_values else np.float64) for c in columns])
    max_iter = budget.max_iter if thorough else settings.SCREEN_ITER
    result = ratio_search(A, B, src, tgt, starts, maximize=True, max_iter=max_iter)
    return result.value, result.witness, False


def restricted_candidates(
    A: np.ndarray,
    n: int,
    budget: OptimBudget,
    hints: SearchHints,
) -> List[np.ndarray]:
    """Subespaços de codimensão n-1 no domínio de A"""
    m = A.shape[1]
    k = m - n + 1
    complex_values = np.iscomplexobj(A)
    candidates = hints.bases(k, m)
    candidates += coordinate_subspaces(m, k, budget.seed)
    candidates.append(trailing_right_singular(A, n - 1))
    candidates += kernel_subspaces(m, n - 1, budget.restarts, budget.seed, complex_values)
    return candidates


class RestrictedNormEstimator(WidthEstimator):
    """Minimização de ||A|_M|| sobre M; Gelfand e Kolmogorov (via dual) compartilham"""

    def _problem(self, T) -> Tuple[np.ndarray, Exponent, Exponent]:
        return T.matrix, T.src, T.tgt

    def _search(self, T, n, budget, hints):
        A, src, tgt = self._problem(T)
        candidates = restricted_candidates(A, n, budget, hints)

        def objective(B, key, thorough):
            return restricted_norm(A, B, src, tgt, budget, key, thorough)

        search = SubspaceSearch(objective, maximize=False, budget=budget)
        value, witness, basis, exact_inner, used = search.run(candidates)

        diagnostics = EstimateDiagnostics(
            restarts_used=used,
            seed=budget.seed,
            witness={'basis': basis, 'vector': witness},
            converged=True,
            certified=bool(exact_inner),
            note='subspace search' + ('' if exact_inner else ', inner norm not certified'),
        )
        return WidthEstimate(self.kind, n, value, 'upper_bound', diagnostics)


class GelfandEstimator(RestrictedNormEstimator):
    kind = 'gelfand'

    def __init__(self):
        super().__init__("Gelfand")
