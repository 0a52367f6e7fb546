from .operators import (
    KINDS,
    DIRECTIONS,
    FiniteOperator,
    SubspaceBasis,
    EstimateDiagnostics,
    WidthEstimate,
    SearchHints,
    parse_kinds,
)
from .closed_forms import exact_identity_width, identity_norm, full_dimension_value
from .tables import (
    ESTIMATORS,
    estimate_width,
    bernstein_number,
    approximation_number,
    kolmogorov_number,
    gelfand_number,
    weyl_number,
    enforce_monotone,
    width_table,
)
from .checks import (
    ProductReport,
    ComparisonReport,
    check_pukhov,
    check_bern_gelfand_duality,
    check_pietsch,
    check_sandwich,
    check_tikhomirov,
    check_ideal_property,
    check_hilbert_collapse,
)

__all__ = [
    'KINDS', 'DIRECTIONS', 'FiniteOperator', 'SubspaceBasis', 'EstimateDiagnostics',
    'WidthEstimate', 'SearchHints', 'parse_kinds',
    'exact_identity_width', 'identity_norm', 'full_dimension_value',
    'ESTIMATORS', 'estimate_width', 'bernstein_number', 'approximation_number',
    'kolmogorov_number', 'gelfand_number', 'weyl_number', 'enforce_monotone', 'width_table',
    'ProductReport', 'ComparisonReport', 'check_pukhov', 'check_bern_gelfand_duality',
    'check_pietsch', 'check_sandwich', 'check_tikhomirov', 'check_ideal_property',
    'check_hilbert_collapse',
]
