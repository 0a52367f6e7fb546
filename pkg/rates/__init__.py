from .classifiers import (
    RateExponents,
    bernstein_rate_isotropic,
    bernstein_rate_mixed,
    weyl_rate_isotropic,
    weyl_rate_mixed,
    nonlinear_width_rate,
    approximation_rate_mixed,
    BERNSTEIN_CLASSIFIERS,
    WEYL_CLASSIFIERS,
)
from .regions import REGIONS, RegionReport, classify_region, compare_bernstein_weyl, identity_order
from .fitting import FitResult, SlopeFit, fit_rate, fit_dyadic_slope

__all__ = [
    'RateExponents', 'bernstein_rate_isotropic', 'bernstein_rate_mixed',
    'weyl_rate_isotropic', 'weyl_rate_mixed', 'nonlinear_width_rate',
    'approximation_rate_mixed', 'BERNSTEIN_CLASSIFIERS', 'WEYL_CLASSIFIERS',
    'REGIONS', 'RegionReport', 'classify_region', 'compare_bernstein_weyl', 'identity_order',
    'FitResult', 'SlopeFit', 'fit_rate', 'fit_dyadic_slope',
]
