from .settings import settings
from .grids import (
    CLOSED_FORM_EXPONENTS,
    PUKHOV_INSTANCES,
    BERN_GELFAND_PAIRS,
    SANDWICH_INSTANCES,
    PROBE_CONFIGS,
    DECAY_PRESET,
)

__all__ = [
    'settings',
    'CLOSED_FORM_EXPONENTS',
    'PUKHOV_INSTANCES',
    'BERN_GELFAND_PAIRS',
    'SANDWICH_INSTANCES',
    'PROBE_CONFIGS',
    'DECAY_PRESET',
]
