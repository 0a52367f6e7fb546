from .bernstein import BernsteinEstimator
from .approximation import ApproximationEstimator
from .gelfand import GelfandEstimator, restricted_norm
from .kolmogorov import KolmogorovEstimator
from .weyl import WeylEstimator

__all__ = [
    'BernsteinEstimator',
    'ApproximationEstimator',
    'GelfandEstimator',
    'KolmogorovEstimator',
    'WeylEstimator',
    'restricted_norm',
]
