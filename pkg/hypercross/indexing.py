"""
Índices do modelo discreto de cruz hiperbólica em Ω = (0,1)^d.

Nível ν̄ ∈ N_0^d, posição m̄ com 0 <= m_ℓ < 2^{ν_ℓ}; o conjunto de posições
de um nível tem exatamente 2^{|ν̄|_1} elementos. O bloco μ reúne os níveis
com |ν̄|_1 = μ.
"""
from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Tuple
import numpy as np

from config.settings import settings
from core.exceptions import GuardError, ValidationError

_INT64_MAX = 2 ** 63 - 1


def _as_tuple(values, name: str) -> Tuple[int, ...]:
    out = tuple(int(v) for v in values)
    if len(out) < 1:
        raise ValidationError(f"{name} must have at least one component")
    if any(v < 0 for v in out):
        raise ValidationError(f"{name} components must be >= 0, got {out}")
    return out


@dataclass(frozen=True, order=True)
class LevelIndex:
    nu: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'nu', _as_tuple(self.nu, 'level'))

    @property
    def d(self) -> int:
        return len(self.nu)

    @property
    def total(self) -> int:
        """|ν̄|_1"""
        return sum(self.nu)

    @property
    def cardinality(self) -> int:
        return 2 ** self.total

    def positions(self) -> np.ndarray:
        """Todas as posições do nível (2^{|ν̄|_1} × d), em ordem lexicográfica"""
        grids = np.indices(tuple(2 ** v for v in self.nu)).reshape(self.d, -1)
        return grids.T.astype(np.int64)


@dataclass(frozen=True, order=True)
class HyperIndex:
    level: LevelIndex
    position: Tuple[int, ...]

    def __post_init__(self):
        level = self.level if isinstance(self.level, LevelIndex) else LevelIndex(self.level)
        position = _as_tuple(self.position, 'position')
        if len(position) != level.d:
            raise ValidationError("position and level must have the same dimension")
        for m, v in zip(position, level.nu):
            if m >= 2 ** v:
                raise ValidationError(f"position {position} out of range for level {level.nu}")
        object.__setattr__(self, 'level', level)
        object.__setattr__(self, 'position', position)

    def cell(self) -> 'DyadicCell':
        return DyadicCell(self.level, self.position)


@dataclass(frozen=True)
class DyadicCell:
    """Q_{ν̄,m̄} = ∏ (2^{-ν_ℓ} m_ℓ, 2^{-ν_ℓ}(m_ℓ + 1))"""
    level: LevelIndex
    position: Tuple[int, ...]

    def bounds(self) -> List[Tuple[float, float]]:
        return [(m / 2 ** v, (m + 1) / 2 ** v) for m, v in zip(self.position, self.level.nu)]

    @property
    def volume(self) -> float:
        return 2.0 ** (-self.level.total)

    def indicator(self, x) -> bool:
        """χ_{ν̄,m̄}(x) para x no cubo aberto"""
        x = np.asarray(x, dtype=float).ravel()
        return all(lo < xi < hi for xi, (lo, hi) in zip(x, self.bounds()))


def compositions(mu: int, d: int) -> List[Tuple[int, ...]]:
    """Todas as d-uplas de inteiros >= 0 com soma μ, em ordem lexicográfica"""
    if d == 1:
        return [(mu,)]
    out = []
    for first in range(mu + 1):
        for rest in compositions(mu - first, d - 1):
            out.append((first,) + rest)
    return out


def block_dimension(mu: int, d: int) -> int:
    """D_μ = C(μ+d-1, d-1) · 2^μ"""
    return comb(mu + d - 1, d - 1) * 2 ** mu


@dataclass(frozen=True)
class BlockLayout:
    mu: int
    d: int
    levels: Tuple[Tuple[int, ...], ...]
    dimension: int

    def __len__(self) -> int:
        return len(self.levels)

    def indices(self) -> Iterator[HyperIndex]:
        """∇_μ em ordem lexicográfica (nível, posição)"""
        for nu in self.levels:
            level = LevelIndex(nu)
            for position in level.positions():
                yield HyperIndex(level, tuple(int(m) for m in position))

    def arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """(níveis, posições) do bloco como matrizes D_μ × d"""
        if self.dimension > settings.MAX_FIELD_ENTRIES:
            raise GuardError(
                f"block mu={self.mu}, d={self.d} has {self.dimension} entries, "
                f"above the cap {settings.MAX_FIELD_ENTRIES}"
            )
        level_rows, position_rows = [], []
        for nu in self.levels:
            positions = LevelIndex(nu).positions()
            position_rows.append(positions)
            level_rows.append(np.tile(np.asarray(nu, dtype=np.int64), (positions.shape[0], 1)))
        return np.vstack(level_rows), np.vstack(position_rows)


def enumerate_block(mu: int, d: int) -> BlockLayout:
    if int(mu) != mu or int(d) != d or mu < 0 or d < 1:
        raise ValidationError(f"block requires integers mu >= 0, d >= 1, got mu={mu}, d={d}")
    mu, d = int(mu), int(d)
    dimension = block_dimension(mu, d)
    if dimension > _INT64_MAX:
        raise GuardError(f"block too large: D_mu for mu={mu}, d={d} overflows 64 bits")
    levels = tuple(compositions(mu, d))
    return BlockLayout(mu, d, levels, dimension)
