"""
Números de Bernstein b_n(T) = sup_{dim L = n} inf_{x ∈ L} ||Tx||_tgt / ||x||_src.

O sup é amostrado (cota inferior): candidatos coordenados, gaussianos,
com vetor constante e o topo do SVD; o inf interno é uma descida multi-start
que parte de vetores esparsos, projeções de vetores de sinais e starts aleatórios.
"""
import numpy as np
from scipy.linalg import null_space

from config.settings import settings
from core.exceptions import ValidationError
from core.search import (
    projected_starts,
    random_starts,
    ratio_search,
    sign_vectors,
    sparse_starts,
)
from core.utils import restart_rng
from widths.base_estimator import SubspaceSearch, WidthEstimator
from widths.candidates import (
    constant_augmented_subspaces,
    coordinate_subspaces,
    gaussian_subspaces,
    leading_right_singular,
)
from widths.operators import EstimateDiagnostics, WidthEstimate


def _ambient_signs(m: int, count: int, rng: np.random.Generator) -> np.ndarray:
    if m - 1 <= 9 and 2 ** (m - 1) <= count:
        return sign_vectors(m)
    return rng.choice([-1.0, 1.0], size=(m, count))


class BernsteinEstimator(WidthEstimator):
    kind = 'bernstein'

    def __init__(self):
        super().__init__("Bernstein")

    def _validate_index(self, T, n):
        n = super()._validate_index(T, n)
        if n > T.m_in:
            raise ValidationError(f"index exceeds dimension: n={n} > m_in={T.m_in}")
        return n

    def _search(self, T, n, budget, hints):
        m = T.m_in
        complex_values = not T.is_real

        candidates = coordinate_subspaces(m, n, budget.seed)
        candidates.append(leading_right_singular(T.matrix, n))
        candidates += constant_augmented_subspaces(m, n, max(1, budget.restarts // 8), budget.seed)
        candidates += gaussian_subspaces(m, n, budget.restarts, budget.seed, complex_values)

        hint_bases = [np.asarray(H) for H in hints.subspaces if np.asarray(H).shape[0] == m]

        def objective(B, key, thorough):
            return self._inner_min(T, B, budget, key, thorough, hint_bases if thorough else [])

        search = SubspaceSearch(objective, maximize=True, budget=budget)
        value, vector, basis, converged, used = search.run(candidates)

        diagnostics = EstimateDiagnostics(
            restarts_used=used,
            seed=budget.seed,
            witness={'basis': basis, 'vector': vector},
            converged=bool(converged),
            certified=False,
            note='subspace search',
        )
        return WidthEstimate(self.kind, n, value, 'lower_bound', diagnostics)

    def _inner_min(self, T, B, budget, key, thorough, hint_bases):
        """min da razão na esfera de span(B)"""
        rng = restart_rng(budget.seed, 200_000 + key)
        m, k = B.shape
        complex_values = np.iscomplexobj(B) or not T.is_real

        # === 1. STARTS ESTRUTURADOS ===
        sparse_cap = settings.MAX_SPARSE_STARTS if thorough else 48
        sign_count = 512 if thorough else 32
        columns = [
            sparse_starts(B, sparse_cap, rng),
            np.eye(k),
            projected_starts(B, np.ones((m, 1))),
            projected_starts(B, _ambient_signs(m, sign_count, rng)),
        ]

        # === 2. INTERSEÇÕES COM SUBESPAÇOS DE DICA ===
        for H in hint_bases:
            stacked = np.hstack([B, -H])
            kernel = null_space(stacked)
            if kernel.size:
                columns.append(kernel[:k, :])

        # === 3. STARTS ALEATÓRIOS ===
        random_count = settings.INNER_RANDOM_STARTS * (4 if thorough else 1)
        columns.append(random_starts(rng, k, random_count, complex_values))

        starts = np.hstack([np.asarray(c, dtype=np.complex128 if complex_values else np.float64) for c in columns])
        max_iter = budget.max_iter if thorough else settings.SCREEN_ITER
        result = ratio_search(T.matrix, B, T.src, T.tgt, starts, maximize=False, max_iter=max_iter)
        return result.value, result.witness, result.converged
