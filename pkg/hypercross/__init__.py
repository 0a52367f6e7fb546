from .indexing import (
    LevelIndex,
    HyperIndex,
    DyadicCell,
    BlockLayout,
    compositions,
    block_dimension,
    enumerate_block,
)
from .fields import CoeffField
from .norms import bnorm, fnorm, truncate, level_pnorms
from .probes import ProbeResult, block_embedding_norm_probe, predicted_exponents

__all__ = [
    'LevelIndex', 'HyperIndex', 'DyadicCell', 'BlockLayout', 'compositions',
    'block_dimension', 'enumerate_block', 'CoeffField', 'bnorm', 'fnorm',
    'truncate', 'level_pnorms', 'ProbeResult', 'block_embedding_norm_probe',
    'predicted_exponents',
]
