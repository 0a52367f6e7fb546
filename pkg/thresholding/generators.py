"""
Campos na esfera unitária de s^{t}_{p1,p1}b (bnorm = 1) para os experimentos.

random-dense: gaussianos em todos os níveis 0..min(K, J + depth)
block-concentrated: módulo constante no bloco J + 1
single-level-flat: módulo constante em um único nível ν̄ com |ν̄|_1 = J + 1
"""
import numpy as np

from config.settings import settings
from core.exceptions import ValidationError
from core.exponents import ParamSet
from hypercross.fields import CoeffField
from hypercross.indexing import LevelIndex, enumerate_block
from hypercross.norms import bnorm

GENERATORS = ('random-dense', 'block-concentrated', 'single-level-flat')


def _draw(rng: np.random.Generator, size: int, complex_values: bool) -> np.ndarray:
    values = rng.standard_normal(size)
    if complex_values:
        values = values + 1j * rng.standard_normal(size)
    return values


def _unit_phases(rng: np.random.Generator, size: int, complex_values: bool) -> np.ndarray:
    if complex_values:
        return np.exp(2j * np.pi * rng.random(size))
    return rng.choice([-1.0, 1.0], size=size)


def _normalized(field: CoeffField, params: ParamSet) -> CoeffField:
    norm = bnorm(field, params.t, params.p1, params.p1)
    if norm == 0:
        raise ValidationError("generated field is zero")
    return field.scale(1.0 / norm)


def unit_ball_field(
    generator: str,
    J: int,
    K: int,
    params: ParamSet,
    rng: np.random.Generator,
    complex_values: bool = False,
    depth: int = None,
) -> CoeffField:
    depth = settings.DENSE_DEPTH if depth is None else int(depth)
    if generator not in GENERATORS:
        raise ValidationError(f"unknown generator '{generator}', expected one of {GENERATORS}")

    if generator == 'random-dense':
        levels, positions = [], []
        for mu in range(min(K, J + depth) + 1):
            block_levels, block_positions = enumerate_block(mu, params.d).arrays()
            levels.append(block_levels)
            positions.append(block_positions)
        levels, positions = np.vstack(levels), np.vstack(positions)
        field = CoeffField(levels, positions, _draw(rng, levels.shape[0], complex_values))
        return _normalized(field, params)

    layout = enumerate_block(J + 1, params.d)
    if generator == 'block-concentrated':
        levels, positions = layout.arrays()
        field = CoeffField(levels, positions, _unit_phases(rng, levels.shape[0], complex_values))
        return _normalized(field, params)

    nu = layout.levels[int(rng.integers(len(layout.levels)))]
    positions = LevelIndex(nu).positions()
    levels = np.tile(np.asarray(nu, dtype=np.int64), (positions.shape[0], 1))
    field = CoeffField(levels, positions, _unit_phases(rng, positions.shape[0], complex_values))
    return _normalized(field, params)
