"""
Geradores de subespaços candidatos para as buscas de larguras.

Subespaços coordenados realizam as testemunhas de cota inferior do caso
identidade; gaussianos cobrem o resto; o vetor constante aparece nos extremos
de ℓ1/ℓ∞.
"""
from itertools import combinations
from math import comb
from typing import List
import numpy as np
from scipy.linalg import null_space

from config.settings import settings
from core.search import orthonormal_basis
from core.utils import restart_rng


def coordinate_subspaces(m: int, k: int, seed: int) -> List[np.ndarray]:
    """Spans de k coordenadas; amostra aleatória quando C(m,k) excede o limite"""
    if k < 1 or k > m:
        return []
    cap = settings.MAX_COORDINATE_CANDIDATES
    eye = np.eye(m)
    if comb(m, k) <= cap:
        subsets = combinations(range(m), k)
    else:
        rng = restart_rng(seed, 300_000)
        subsets = (np.sort(rng.choice(m, k, replace=False)) for _ in range(cap))
    return [eye[:, list(subset)] for subset in subsets]


def gaussian_subspaces(m: int, k: int, count: int, seed: int, complex_values: bool, offset: int = 0) -> List[np.ndarray]:
    out = []
    for index in range(count):
        rng = restart_rng(seed, offset + index)
        G = rng.standard_normal((m, k))
        if complex_values:
            G = G + 1j * rng.standard_normal((m, k))
        out.append(orthonormal_basis(G))
    return out


def constant_augmented_subspaces(m: int, k: int, count: int, seed: int) -> List[np.ndarray]:
    """Vetor constante + (k-1) direções gaussianas"""
    out = []
    ones = np.ones((m, 1))
    for index in range(count):
        rng = restart_rng(seed, 400_000 + index)
        out.append(orthonormal_basis(np.hstack([ones, rng.standard_normal((m, k - 1))])))
    return out


def kernel_subspaces(m: int, constraints: int, count: int, seed: int, complex_values: bool) -> List[np.ndarray]:
    """Subespaços de codimensão `constraints` = núcleo de funcionais gaussianos"""
    out = []
    if constraints == 0:
        return [np.eye(m)]
    for index in range(count):
        rng = restart_rng(seed, index)
        F = rng.standard_normal((constraints, m))
        if complex_values:
            F = F + 1j * rng.standard_normal((constraints, m))
        out.append(null_space(F))
    return out


def leading_right_singular(A: np.ndarray, k: int) -> np.ndarray:
    """k primeiros vetores singulares à direita"""
    _, _, Vh = np.linalg.svd(A)
    return Vh[:k, :].conj().T


def trailing_right_singular(A: np.ndarray, skip: int) -> np.ndarray:
    """Complemento dos `skip` primeiros vetores singulares à direita"""
    _, _, Vh = np.linalg.svd(A)
    return Vh[skip:, :].conj().T
