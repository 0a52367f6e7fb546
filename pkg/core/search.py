"""
Busca multi-start da razão ||M B c||_tgt / ||B c||_src sobre a esfera de um subespaço.

Todos os starts avançam juntos (colunas de uma matriz): ascensão/descida por
(sub)gradiente projetado com passo dividido por dois quando não há melhora.
É a peça comum de operator_norm (B = I) e dos estimadores de larguras.
"""
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional
import numpy as np
from loguru import logger

from config.settings import settings
from core.norms import pnorm_columns, norm_subgradient


@dataclass
class RatioSearchResult:
    value: float
    coeffs: np.ndarray
    witness: np.ndarray
    converged: bool
    iterations: int


def sign_vectors(k: int) -> np.ndarray:
    """Todos os vetores ±1 de R^k com primeira coordenada +1 (k × 2^{k-1})"""
    if k < 1:
        return np.ones((0, 1))
    codes = np.arange(2 ** (k - 1))
    bits = (codes[None, :] >> np.arange(k - 1)[:, None]) & 1
    signs = 1.0 - 2.0 * bits
    return np.vstack([np.ones((1, codes.size)), signs])


def orthonormal_basis(B: np.ndarray) -> np.ndarray:
    """QR com sinais normalizados (base ortonormal determinística)"""
    Q, R = np.linalg.qr(np.asarray(B))
    diag = np.diag(R)
    signs = np.where(np.abs(diag) > 0, diag / np.where(np.abs(diag) > 0, np.abs(diag), 1.0), 1.0)
    return Q * signs.conj()[None, :]


def random_starts(rng: np.random.Generator, k: int, count: int, complex_values: bool) -> np.ndarray:
    G = rng.standard_normal((k, count))
    if complex_values:
        G = G + 1j * rng.standard_normal((k, count))
    return G


def sparse_starts(B: np.ndarray, cap: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """
    Vetores do subespaço span(B) com k-1 coordenadas nulas, em coordenadas c.
    São os vértices de span(B) ∩ bola ℓ1; enumeração completa quando C(m, k-1) <= cap.
    """
    m, k = B.shape
    if k == 1:
        return np.ones((1, 1), dtype=B.dtype)
    total = comb(m, k - 1)
    if total <= cap:
        subsets = np.array(list(combinations(range(m), k - 1)))
    else:
        rng = rng if rng is not None else np.random.default_rng(0)
        subsets = np.array([np.sort(rng.choice(m, k - 1, replace=False)) for _ in range(cap)])
    stacked = B[subsets, :]
    _, _, Vh = np.linalg.svd(stacked, full_matrices=True)
    return Vh[:, -1, :].conj().T


def is_exhaustive_sparse(B: np.ndarray, cap: int) -> bool:
    m, k = B.shape
    return k == 1 or comb(m, k - 1) <= cap


def projected_starts(B: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Projeção de vetores do espaço ambiente em coordenadas c (B ortonormal)"""
    C = B.conj().T @ vectors
    keep = np.linalg.norm(C, axis=0) > 1e-12
    return C[:, keep] if keep.any() else C[:, :1] + 1.0


def ratio_values(M: np.ndarray, B: np.ndarray, C: np.ndarray, p_src, p_tgt) -> np.ndarray:
    X = B @ C
    den = pnorm_columns(X, p_src)
    num = pnorm_columns(M @ X, p_tgt)
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)


def ratio_search(
    M: np.ndarray,
    B: np.ndarray,
    p_src,
    p_tgt,
    starts: np.ndarray,
    maximize: bool = True,
    max_iter: int = None,
    rel_tol: float = None,
) -> RatioSearchResult:
    """
    Otimiza a razão em todas as colunas de `starts` ao mesmo tempo.
    Retorna o melhor valor (primeira coluna em caso de empate) e a testemunha
    x = B c normalizada para ||x||_src = 1.
    """
    max_iter = settings.DEFAULT_MAX_ITER if max_iter is None else max_iter
    rel_tol = settings.ASCENT_REL_TOL if rel_tol is None else rel_tol
    direction = 1.0 if maximize else -1.0

    dtype = np.result_type(M, B, starts, np.float64)
    C = np.array(starts, dtype=dtype)
    norms = np.linalg.norm(C, axis=0)
    C = C / np.where(norms > 0, norms, 1.0)
    MH = M.conj().T
    BH = B.conj().T

    values = ratio_values(M, B, C, p_src, p_tgt)
    steps = np.full(C.shape[1], 0.5)
    active = np.ones(C.shape[1], dtype=bool)
    iterations = 0

    for iterations in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Ca = C[:, idx]
        X = B @ Ca
        Y = M @ X
        den = pnorm_columns(X, p_src)
        den = np.where(den > 0, den, 1.0)
        r = values[idx]
        grad_x = (MH @ norm_subgradient(Y, p_tgt) - r[None, :] * norm_subgradient(X, p_src)) / den[None, :]
        G = BH @ grad_x
        # componente tangente à esfera em c
        G = G - Ca * np.real(np.sum(Ca.conj() * G, axis=0))[None, :]
        gnorm = np.linalg.norm(G, axis=0)
        flat = gnorm <= 1e-15
        active[idx[flat]] = False
        move = ~flat
        if not move.any():
            continue
        idx, Ca, G, gnorm, r = idx[move], Ca[:, move], G[:, move], gnorm[move], r[move]

        trial = Ca + direction * steps[idx][None, :] * G / gnorm[None, :]
        trial = trial / np.linalg.norm(trial, axis=0)[None, :]
        trial_values = ratio_values(M, B, trial, p_src, p_tgt)
        gain = direction * (trial_values - r)
        improved = gain > 0

        acc = idx[improved]
        C[:, acc] = trial[:, improved]
        values[acc] = trial_values[improved]
        rel = gain[improved] / np.maximum(np.abs(r[improved]), 1e-300)
        steps[acc] = np.minimum(steps[acc] * 1.25, 2.0)
        active[acc[rel < rel_tol]] = False

        rej = idx[~improved]
        steps[rej] *= 0.5
        active[rej[steps[rej] < settings.MIN_STEP]] = False

    converged = not active.any()
    best = int(np.argmax(values) if maximize else np.argmin(values))
    coeffs = C[:, best]
    witness = B @ coeffs
    scale = pnorm_columns(witness.reshape(-1, 1), p_src)[0]
    if scale > 0:
        witness = witness / scale
    if not converged:
        logger.debug(f"ratio_search: {int(active.sum())} starts sem convergência após {iterations} iterações")
    return RatioSearchResult(float(values[best]), coeffs, witness, converged, iterations)
