"""
CoeffField: sequência finitamente suportada λ = {λ_{ν̄,m̄}} armazenada em
matrizes (níveis N×d, posições N×d, valores N), ordenada lexicograficamente
por (ν̄, m̄). Imutável após a construção.

Formato texto: uma entrada por linha, `nu_1 .. nu_d m_1 .. m_d re im`,
com floats em repr (round-trip exato) e cabeçalho `# d=<d>`.
"""
from pathlib import Path
from typing import Dict, Iterator, Mapping, Tuple, Union
import numpy as np

from config.settings import settings
from core.exceptions import ValidationError
from core.utils import float_repr
from hypercross.indexing import BlockLayout, HyperIndex, LevelIndex

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


class CoeffField:
    def __init__(self, levels, positions, values, d: int = None):
        levels = np.asarray(levels, dtype=np.int64)
        positions = np.asarray(positions, dtype=np.int64)
        values = np.asarray(values)
        if d is None:
            if levels.ndim != 2:
                raise ValidationError("cannot infer d from an empty field")
            d = levels.shape[1]
        levels = levels.reshape(-1, d)
        positions = positions.reshape(-1, d)
        values = values.reshape(-1)
        if not (levels.shape[0] == positions.shape[0] == values.shape[0]):
            raise ValidationError("levels, positions and values must have the same length")
        if values.size > settings.MAX_FIELD_ENTRIES:
            raise ValidationError(f"field has {values.size} entries, above the cap {settings.MAX_FIELD_ENTRIES}")
        if np.any(levels < 0) or np.any(positions < 0):
            raise ValidationError("levels and positions must be >= 0")
        if np.any(levels > 62):
            raise ValidationError("level components above 62 are not representable")
        if np.any(positions >= (np.int64(1) << levels)):
            raise ValidationError("position out of range for its level (requires m_l < 2^nu_l)")
        if not np.all(np.isfinite(values)):
            raise ValidationError("coefficient values must be finite")

        keys = np.hstack([levels, positions])
        order = np.lexsort(keys.T[::-1]) if keys.shape[0] else np.arange(0)
        keys = keys[order]
        if keys.shape[0] > 1 and np.any(np.all(keys[1:] == keys[:-1], axis=1)):
            raise ValidationError("duplicate index in coefficient field")

        dtype = np.complex128 if np.iscomplexobj(values) else np.float64
        self._d = int(d)
        self._levels = np.ascontiguousarray(keys[:, :d])
        self._positions = np.ascontiguousarray(keys[:, d:])
        self._values = np.array(values[order], dtype=dtype)
        for array in (self._levels, self._positions, self._values):
            array.setflags(write=False)

    # ---------- construtores ----------

    @classmethod
    def empty(cls, d: int) -> 'CoeffField':
        return cls(np.zeros((0, d)), np.zeros((0, d)), np.zeros(0), d=d)

    @classmethod
    def from_dict(cls, entries: Mapping[Key, complex], d: int = None) -> 'CoeffField':
        if not entries:
            if d is None:
                raise ValidationError("empty mapping requires d")
            return cls.empty(d)
        keys = list(entries.keys())
        for key in keys:
            HyperIndex(LevelIndex(key[0]), key[1])
        levels = [k[0] for k in keys]
        positions = [k[1] for k in keys]
        return cls(levels, positions, [entries[k] for k in keys])

    @classmethod
    def atom(cls, nu, m, value: complex = 1.0) -> 'CoeffField':
        index = HyperIndex(LevelIndex(nu), m)
        return cls([index.level.nu], [index.position], [value])

    @classmethod
    def on_block(cls, layout: BlockLayout, values) -> 'CoeffField':
        """Campo com suporte ∇_μ, valores na ordem de layout.arrays()"""
        levels, positions = layout.arrays()
        values = np.asarray(values)
        if values.size != levels.shape[0]:
            raise ValidationError(f"block mu={layout.mu} needs {levels.shape[0]} values, got {values.size}")
        return cls(levels, positions, values)

    # ---------- propriedades ----------

    @property
    def d(self) -> int:
        return self._d

    @property
    def levels(self) -> np.ndarray:
        return self._levels

    @property
    def positions(self) -> np.ndarray:
        return self._positions

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def size(self) -> int:
        return int(self._values.size)

    @property
    def level_totals(self) -> np.ndarray:
        """|ν̄|_1 por entrada"""
        return self._levels.sum(axis=1)

    @property
    def max_level(self) -> int:
        """J_support (0 para o campo vazio)"""
        return int(self.level_totals.max()) if self.size else 0

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self._values)

    def support_size(self) -> int:
        return int(np.count_nonzero(self._values))

    def items(self) -> Iterator[Tuple[HyperIndex, complex]]:
        for nu, m, value in zip(self._levels, self._positions, self._values):
            yield HyperIndex(LevelIndex(tuple(nu)), tuple(m)), value

    def to_dict(self) -> Dict[Key, complex]:
        return {
            (tuple(int(v) for v in nu), tuple(int(v) for v in m)): value
            for nu, m, value in zip(self._levels, self._positions, self._values)
        }

    # ---------- aritmética ----------

    def _with_values(self, values: np.ndarray, mask: np.ndarray = None) -> 'CoeffField':
        if mask is None:
            return CoeffField(self._levels, self._positions, values, d=self._d)
        return CoeffField(self._levels[mask], self._positions[mask], values[mask], d=self._d)

    def scale(self, factor: complex) -> 'CoeffField':
        return self._with_values(self._values * factor)

    def map_values(self, func) -> 'CoeffField':
        """Aplica func ao vetor de valores (mesmo suporte)"""
        return self._with_values(np.asarray(func(self._values)))

    def combine(self, other: 'CoeffField', sign: float = 1.0) -> 'CoeffField':
        """self + sign·other sobre a união dos suportes"""
        if other.d != self.d:
            raise ValidationError(f"fields have different dimensions: {self.d} vs {other.d}")
        keys = np.vstack([
            np.hstack([self._levels, self._positions]),
            np.hstack([other.levels, other.positions]),
        ])
        values = np.concatenate([self._values, sign * other.values])
        if keys.shape[0] == 0:
            return CoeffField.empty(self.d)
        unique, inverse = np.unique(keys, axis=0, return_inverse=True)
        summed = np.zeros(unique.shape[0], dtype=values.dtype)
        np.add.at(summed, inverse.reshape(-1), values)
        return CoeffField(unique[:, :self.d], unique[:, self.d:], summed, d=self.d)

    def add(self, other: 'CoeffField') -> 'CoeffField':
        return self.combine(other, 1.0)

    def subtract(self, other: 'CoeffField') -> 'CoeffField':
        return self.combine(other, -1.0)

    def restrict_to_block(self, mu: int) -> 'CoeffField':
        return self._with_values(self._values, self.level_totals == mu)

    def truncate(self, J: int) -> 'CoeffField':
        """S_J λ: entradas com |ν̄|_1 <= J"""
        if int(J) != J or J < 0:
            raise ValidationError(f"truncation level must be an integer >= 0, got {J}")
        return self._with_values(self._values, self.level_totals <= J)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffField):
            return NotImplemented
        return (
            self.d == other.d
            and np.array_equal(self._levels, other.levels)
            and np.array_equal(self._positions, other.positions)
            and np.array_equal(self._values, other.values)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"CoeffField(d={self.d}, entries={self.size}, max_level={self.max_level})"

    # ---------- serialização ----------

    def to_text(self) -> str:
        lines = [f"# d={self.d}"]
        for nu, m, value in zip(self._levels, self._positions, self._values):
            value = complex(value)
            ints = ' '.join(str(int(v)) for v in np.concatenate([nu, m]))
            lines.append(f"{ints} {float_repr(value.real)} {float_repr(value.imag)}")
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str, d: int = None) -> 'CoeffField':
        levels, positions, values = [], [], []
        has_imag = False
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith('#'):
                header = line[1:].strip()
                if header.startswith('d='):
                    d = int(header[2:])
                continue
            tokens = line.split()
            if len(tokens) < 4 or len(tokens) % 2 != 0:
                raise ValidationError(f"line {number}: expected 'nu_1..nu_d m_1..m_d re im'")
            width = (len(tokens) - 2) // 2
            if d is None:
                d = width
            if width != d:
                raise ValidationError(f"line {number}: expected {2 * d + 2} fields, got {len(tokens)}")
            try:
                ints = [int(tok) for tok in tokens[:2 * d]]
                re, im = float(tokens[-2]), float(tokens[-1])
            except ValueError as e:
                raise ValidationError(f"line {number}: {e}")
            levels.append(ints[:d])
            positions.append(ints[d:])
            values.append(complex(re, im))
            has_imag = has_imag or im != 0.0
        if d is None:
            raise ValidationError("empty field text without '# d=' header")
        if not values:
            return cls.empty(d)
        array = np.array(values, dtype=np.complex128)
        return cls(levels, positions, array if has_imag else array.real.copy(), d=d)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_text(), encoding='utf-8')

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'CoeffField':
        return cls.from_text(Path(path).read_text(encoding='utf-8'))
