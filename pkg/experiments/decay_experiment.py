"""
Experimento de decaimento da aproximação por soft thresholding.

Para cada J: K = choose_K(J), `trials` campos na esfera unitária
(semente derivada de (seed, J, trial)), sparsify, erro em s^0_{p2,2}f.
Linhas: J, K, trials, max_error, max_nonzeros, c0, c1.
"""
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional
from loguru import logger

from config.settings import settings
from core.exceptions import GuardError, ValidationError
from core.exponents import TWO, ParamSet
from core.utils import parallel_map, restart_rng
from rates.fitting import SlopeFit, fit_dyadic_slope
from thresholding.generators import GENERATORS, unit_ball_field
from thresholding.schedule import ThresholdSchedule
from thresholding.sparsifier import approx_error, sparsify

DECAY_COLUMNS = ['J', 'K', 'trials', 'max_error', 'max_nonzeros', 'c0', 'c1']


@dataclass
class DecayRow:
    J: int
    K: int
    trials: int
    max_error: float
    max_nonzeros: int
    c0: float
    c1: float

    def to_row(self) -> dict:
        return asdict(self)


class DecayExperiment:
    """Executa a varredura em J com gerador e sementes fixos"""

    def __init__(
        self,
        params: ParamSet,
        generator: str = 'random-dense',
        trials: int = None,
        seed: int = None,
        complex_values: bool = False,
    ):
        if generator not in GENERATORS:
            raise ValidationError(f"unknown generator '{generator}', expected one of {GENERATORS}")
        self.params = params
        self.generator = generator
        self.trials = settings.DECAY_TRIALS if trials is None else int(trials)
        self.seed = settings.DEFAULT_SEED if seed is None else int(seed)
        self.complex_values = complex_values
        if self.trials < 1:
            raise ValidationError("decay experiment requires trials >= 1")

    def check_guards(self, J_values: List[int]) -> None:
        """Falha antes de qualquer cálculo"""
        if not J_values:
            raise ValidationError("empty J range")
        if min(J_values) < 1:
            raise ValidationError("J must be >= 1")
        if max(J_values) > settings.THRESHOLD_MAX_J:
            raise GuardError(f"J={max(J_values)} exceeds the desk-scale cap J <= {settings.THRESHOLD_MAX_J}")
        if self.params.p2 != TWO and self.params.d > settings.FNORM_MAX_D:
            raise GuardError(f"f-norm integration cap exceeded: d={self.params.d} > {settings.FNORM_MAX_D}")
        ThresholdSchedule.build(min(J_values), self.params)

    def _trial(self, J: int, trial: int, schedule: ThresholdSchedule):
        rng = restart_rng(self.seed, J * 1_000_000 + trial)
        field = unit_ball_field(self.generator, J, schedule.K, self.params, rng, self.complex_values)
        approximant, stats = sparsify(field, J, self.params, schedule)
        error = approx_error(field, approximant, self.params)
        stats.record_error(error, self.params)
        return error, stats

    def run_level(self, J: int) -> DecayRow:
        schedule = ThresholdSchedule.build(J, self.params)
        outcomes = parallel_map(lambda trial: self._trial(J, trial, schedule), range(self.trials))
        max_error = max(error for error, _ in outcomes)
        max_nonzeros = max(stats.total_nonzeros for _, stats in outcomes)
        d, t, u1 = self.params.d, float(self.params.t), float(self.params.u1)
        c0 = max_nonzeros / (2.0 ** J * J ** (d - 1))
        c1 = max_error / (2.0 ** (-J * t) * J ** ((d - 1) * (0.5 - u1)))
        if any(not stats.guaranteed for _, stats in outcomes):
            logger.warning(f"J={J}: campos fora da bola unitária, estatísticas sem garantia")
        logger.info(f"J={J} K={schedule.K}: erro máx {max_error:.6e}, não nulos {max_nonzeros}")
        return DecayRow(J, schedule.K, self.trials, max_error, max_nonzeros, c0, c1)

    def run(self, J_values: Iterable[int]) -> List[DecayRow]:
        J_values = sorted(int(J) for J in J_values)
        self.check_guards(J_values)
        logger.info(
            f"Decaimento: d={self.params.d} t={self.params.t} p1={self.params.p1} p2={self.params.p2}, "
            f"gerador {self.generator}, J={J_values[0]}..{J_values[-1]}, {self.trials} tentativas"
        )
        return [self.run_level(J) for J in J_values]


def run_decay_experiment(
    params: ParamSet,
    J_range: Iterable[int],
    trials: int = None,
    seed: int = None,
    generator: str = 'random-dense',
    complex_values: bool = False,
) -> List[DecayRow]:
    return DecayExperiment(params, generator, trials, seed, complex_values).run(J_range)


def fit_decay(rows: List[DecayRow]) -> Optional[SlopeFit]:
    """Inclinação diádica do erro máximo; α̂ = -slope"""
    usable = [row for row in rows if row.max_error > 0]
    if len(usable) < 2:
        return None
    return fit_dyadic_slope([row.J for row in usable], [row.max_error for row in usable])
