"""
Tipos do módulo de larguras: operador finito, base de subespaço e estimativa.
"""
from dataclasses import dataclass, field
from typing import Any, List, Optional
import numpy as np

from config.settings import settings
from core.exceptions import ValidationError
from core.exponents import Exponent

KINDS = ('approximation', 'kolmogorov', 'gelfand', 'bernstein', 'weyl')
DIRECTIONS = ('lower_bound', 'upper_bound', 'exact', 'heuristic')


@dataclass(frozen=True, eq=False)
class FiniteOperator:
    """Matriz m_out × m_in vista como operador ℓ_src^{m_in} -> ℓ_tgt^{m_out}"""
    matrix: np.ndarray
    src: Exponent
    tgt: Exponent

    def __post_init__(self):
        M = np.array(self.matrix, dtype=np.complex128 if np.iscomplexobj(self.matrix) else np.float64)
        if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
            raise ValidationError("operator matrix must be 2-D with m_out, m_in >= 1")
        if not np.all(np.isfinite(M)):
            raise ValidationError("operator matrix entries must be finite")
        M.setflags(write=False)
        object.__setattr__(self, 'matrix', M)
        object.__setattr__(self, 'src', Exponent.of(self.src))
        object.__setattr__(self, 'tgt', Exponent.of(self.tgt))

    @classmethod
    def identity_of(cls, m: int, p1, p2) -> 'FiniteOperator':
        """id_{p1,p2}^m"""
        if int(m) < 1:
            raise ValidationError("identity dimension must be >= 1")
        return cls(np.eye(int(m)), p1, p2)

    @classmethod
    def diagonal(cls, values, p1, p2) -> 'FiniteOperator':
        return cls(np.diag(np.asarray(values, dtype=float)), p1, p2)

    @property
    def m_out(self) -> int:
        return self.matrix.shape[0]

    @property
    def m_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def is_hilbert(self) -> bool:
        two = Exponent.of(2)
        return self.src == two and self.tgt == two

    @property
    def is_identity(self) -> bool:
        return self.m_in == self.m_out and np.array_equal(self.matrix, np.eye(self.m_in))

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.matrix)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.matrix, compute_uv=False)

    @property
    def rank(self) -> int:
        s = self.singular_values()
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.sum(s > settings.RANK_REL_TOL * s[0]))

    def adjoint(self) -> 'FiniteOperator':
        """T*: ℓ_{tgt'} -> ℓ_{src'}"""
        return FiniteOperator(self.matrix.conj().T, self.tgt.dual(), self.src.dual())

    def inverse(self) -> 'FiniteOperator':
        if self.m_in != self.m_out or self.rank < self.m_in:
            raise ValidationError("operator is not invertible")
        if self.is_identity:
            return FiniteOperator.identity_of(self.m_in, self.tgt, self.src)
        return FiniteOperator(np.linalg.inv(self.matrix), self.tgt, self.src)

    def describe(self) -> str:
        return f"{self.m_out}x{self.m_in} ℓ_{self.src} -> ℓ_{self.tgt}"


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Colunas m × n de posto cheio"""
    columns: np.ndarray

    def __post_init__(self):
        B = np.array(self.columns)
        if B.ndim == 1:
            B = B.reshape(-1, 1)
        if B.ndim != 2 or B.shape[1] < 1 or B.shape[1] > B.shape[0]:
            raise ValidationError("subspace basis must be m × n with 1 <= n <= m")
        norms = np.linalg.norm(B, axis=0)
        if np.any(norms == 0):
            raise ValidationError("subspace basis has a zero column")
        smallest = np.linalg.svd(B / norms[None, :], compute_uv=False)[-1]
        if smallest <= settings.BASIS_RANK_TOL:
            raise ValidationError(f"subspace basis is rank deficient (smallest singular value {smallest:.3e})")
        object.__setattr__(self, 'columns', B)

    @property
    def dim(self) -> int:
        return self.columns.shape[1]

    def orthonormal(self) -> np.ndarray:
        Q, _ = np.linalg.qr(self.columns)
        return Q


@dataclass
class EstimateDiagnostics:
    restarts_used: int = 0
    seed: int = 0
    witness: Any = None
    converged: bool = True
    certified: bool = True
    clamped: bool = False
    note: str = ''

    def to_dict(self) -> dict:
        return {
            'restarts_used': self.restarts_used,
            'seed': self.seed,
            'converged': self.converged,
            'certified': self.certified,
            'clamped': self.clamped,
            'note': self.note,
        }


@dataclass
class WidthEstimate:
    kind: str
    n: int
    value: float
    direction: str
    diagnostics: EstimateDiagnostics = field(default_factory=EstimateDiagnostics)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown width kind '{self.kind}'")
        if self.direction not in DIRECTIONS:
            raise ValidationError(f"unknown bound direction '{self.direction}'")
        if self.value < 0:
            self.value = 0.0

    @property
    def is_exact(self) -> bool:
        return self.direction == 'exact'

    def to_row(self) -> dict:
        """Linha CSV: kind,n,value,direction,converged"""
        return {
            'kind': self.kind,
            'n': self.n,
            'value': float(self.value),
            'direction': self.direction,
            'converged': bool(self.diagnostics.converged),
        }

    def to_dict(self) -> dict:
        row = self.to_row()
        row['diagnostics'] = self.diagnostics.to_dict()
        return row


@dataclass
class SearchHints:
    """Subespaços candidatos extras (ex.: testemunhas de outro estimador)"""
    subspaces: List[np.ndarray] = field(default_factory=list)

    def bases(self, dim: int, ambient: int) -> List[np.ndarray]:
        out = []
        for B in self.subspaces:
            B = np.asarray(B)
            if B.ndim == 2 and B.shape[0] == ambient and B.shape[1] >= dim:
                Q, _ = np.linalg.qr(B[:, :dim])
                out.append(Q)
        return out


def parse_kinds(text: Optional[str]) -> List[str]:
    """'all' ou lista separada por vírgula"""
    if text is None or text.strip().lower() == 'all':
        return list(KINDS)
    kinds = [k.strip().lower() for k in text.split(',') if k.strip()]
    unknown = [k for k in kinds if k not in KINDS]
    if unknown:
        raise ValidationError(f"unknown width kind(s): {', '.join(unknown)}")
    return kinds
