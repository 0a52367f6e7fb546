"""Normas p de vetores (inclusive ∞) e seus subgradientes, vetorizados por coluna."""
import numpy as np

from core.exponents import Exponent


def pnorm(x, p) -> float:
    """
    Norma (Σ|x_i|^p)^{1/p}; max |x_i| quando p = ∞.
    Vetor vazio -> 0.
    """
    a = np.abs(np.asarray(x).ravel())
    if a.size == 0:
        return 0.0
    return float(pnorm_columns(a.reshape(-1, 1), p)[0])


def pnorm_columns(X: np.ndarray, p) -> np.ndarray:
    """Norma p de cada coluna de X, com reescala pelo máximo (sem overflow)"""
    p = Exponent.of(p)
    A = np.abs(np.asarray(X))
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.shape[0] == 0:
        return np.zeros(A.shape[1])
    peak = A.max(axis=0)
    if p.is_infinite:
        return peak
    if p.inverse == 1:
        return A.sum(axis=0)
    if p.inverse == Exponent.of(2).inverse:
        return np.sqrt((A * A).sum(axis=0))
    safe = np.where(peak > 0, peak, 1.0)
    scaled = A / safe
    return peak * np.power(np.power(scaled, p.value).sum(axis=0), 1.0 / p.value)


def phase(X: np.ndarray) -> np.ndarray:
    """x/|x| com 0 onde x = 0 (sinal no caso real)"""
    X = np.asarray(X)
    A = np.abs(X)
    out = np.zeros_like(X)
    nz = A > 0
    out[nz] = X[nz] / A[nz]
    return out


def norm_subgradient(X: np.ndarray, p) -> np.ndarray:
    """
    Subgradiente de ||x||_p em cada coluna de X.
    1 < p < ∞: fase(x)·(|x|/||x||_p)^{p-1}; p = 1: fase(x);
    p = ∞: fase na coordenada de maior módulo (primeira em empate).
    """
    p = Exponent.of(p)
    X = np.asarray(X)
    if p.inverse == 1:
        return phase(X)
    if p.is_infinite:
        out = np.zeros_like(X)
        rows = np.argmax(np.abs(X), axis=0)
        cols = np.arange(X.shape[1])
        out[rows, cols] = phase(X[rows, cols])
        return out
    norms = pnorm_columns(X, p)
    safe = np.where(norms > 0, norms, 1.0)
    return phase(X) * np.power(np.abs(X) / safe, p.value - 1.0)
