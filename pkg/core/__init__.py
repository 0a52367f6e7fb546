from .exceptions import (
    WidthsLabError,
    ValidationError,
    BudgetError,
    RegimeError,
    LimitingCaseError,
    GuardError,
)
from .exponents import Exponent, ParamSet, dual, ONE, TWO, INF
from .norms import pnorm, pnorm_columns
from .operator_norm import OptimBudget, NormResult, operator_norm

__all__ = [
    'WidthsLabError',
    'ValidationError',
    'BudgetError',
    'RegimeError',
    'LimitingCaseError',
    'GuardError',
    'Exponent',
    'ParamSet',
    'dual',
    'ONE',
    'TWO',
    'INF',
    'pnorm',
    'pnorm_columns',
    'OptimBudget',
    'NormResult',
    'operator_norm',
]
