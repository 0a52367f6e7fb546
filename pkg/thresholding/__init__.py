from .schedule import ThresholdSchedule, theta, choose_K, delta2
from .sparsifier import (
    SparsifyStats,
    soft_threshold,
    sparsify,
    approx_error,
    block_retained_bound,
)
from .generators import GENERATORS, unit_ball_field

__all__ = [
    'ThresholdSchedule', 'theta', 'choose_K', 'delta2', 'SparsifyStats',
    'soft_threshold', 'sparsify', 'approx_error', 'block_retained_bound',
    'GENERATORS', 'unit_ball_field',
]
