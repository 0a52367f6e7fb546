"""
Números de Weyl x_n(T) = sup { a_n(T A) : ||A: ℓ_2 -> ℓ_src|| <= 1 }.

Com tgt = 2, a_n(TA) é o n-ésimo valor singular e a busca sobre A dá cota
inferior (desde que ||A|| seja certificado). Com tgt != 2 o a_n interno é
trocado pelo resíduo do SVD truncado: modo heurístico, sem direção garantida.
"""
from typing import Tuple
import numpy as np
from loguru import logger

from config.settings import settings
from core.exponents import TWO
from core.operator_norm import operator_norm
from core.utils import parallel_map, restart_rng
from widths.base_estimator import WidthEstimator
from widths.operators import EstimateDiagnostics, WidthEstimate


class WeylEstimator(WidthEstimator):
    kind = 'weyl'

    def __init__(self):
        super().__init__("Weyl")

    def _objective(self, T, n, A, budget) -> Tuple[float, bool]:
        norm_A, certified = operator_norm(A, TWO, T.src, budget)
        if norm_A <= 0:
            return 0.0, certified
        TA = T.matrix @ A
        if T.tgt == TWO:
            return float(np.linalg.svd(TA, compute_uv=False)[n - 1]) / norm_A, certified
        U, s, Vh = np.linalg.svd(TA)
        residual = TA - (U[:, :n - 1] * s[None, :n - 1]) @ Vh[:n - 1, :]
        value, _ = operator_norm(residual, TWO, T.tgt, budget)
        return value / norm_A, False

    def _search(self, T, n, budget, hints):
        m = T.m_in
        complex_values = not T.is_real
        screen = budget.scaled(restarts=8, max_iter=min(budget.max_iter, 200))

        candidates = [np.eye(m)]
        for index in range(budget.restarts):
            rng = restart_rng(budget.seed, index)
            if index % 4 == 0:
                candidates.append(np.diag(np.abs(rng.standard_normal(m)) + 0.1))
                continue
            A = rng.standard_normal((m, m))
            if complex_values:
                A = A + 1j * rng.standard_normal((m, m))
            candidates.append(A)

        # === 1. TRIAGEM ===
        screened = parallel_map(lambda A: self._objective(T, n, A, screen)[0], candidates)
        order = sorted(range(len(candidates)), key=lambda i: (-screened[i], i))
        top = order[:settings.REFINE_TOP]

        # === 2. BUSCA LOCAL ===
        refined = parallel_map(lambda j: self._hill_climb(T, n, candidates[j], screened[j], j, screen), top)

        # === 3. AVALIAÇÃO FINAL ===
        finals = parallel_map(lambda A: self._objective(T, n, A, budget), refined)
        winner = max(range(len(finals)), key=lambda i: (finals[i][0], -i))
        value, certified = finals[winner]
        logger.debug(f"Weyl n={n}: melhor triagem {screened[order[0]]:.10g}, final {value:.10g}")

        hilbert_target = T.tgt == TWO
        direction = 'lower_bound' if hilbert_target and certified else 'heuristic'
        diagnostics = EstimateDiagnostics(
            restarts_used=len(candidates),
            seed=budget.seed,
            witness={'A': refined[winner]},
            converged=True,
            certified=bool(hilbert_target and certified),
            note='contraction search' if hilbert_target else 'heuristic: truncated-SVD residual',
        )
        return WidthEstimate(self.kind, n, value, direction, diagnostics)

    def _hill_climb(self, T, n, A, value, index, budget):
        rng = restart_rng(budget.seed, 100_000 + index)
        sigma = 0.25
        for _ in range(settings.REFINE_STEPS):
            G = rng.standard_normal(A.shape)
            if np.iscomplexobj(A):
                G = G + 1j * rng.standard_normal(A.shape)
            scale = np.linalg.norm(A) / np.sqrt(A.size)
            trial = A + sigma * scale * G
            trial_value = self._objective(T, n, trial, budget)[0]
            if trial_value > value:
                A, value = trial, trial_value
                sigma = min(sigma * 1.5, 1.0)
            else:
                sigma *= 0.6
            if sigma < 1e-4:
                break
        return A
