"""Legendre expansions of functions with fractional singularities.

Exact Legendre coefficients from fractional integrals of Legendre
polynomials, a-priori error bounds in maximum, weighted maximum and L2
norms, and a harness that measures convergence against those bounds.
"""

from .bounds import (
    BoundCurve,
    WeightedNorm,
    absx_pointwise_bounds,
    bound_curve,
    bound_value,
    coeff_decay_bound,
    endpoint_bounds,
    interior_bounds,
    seminorm_endpoint,
    seminorm_interior,
)
from .errors import (
    BelowThreshold,
    BoundNotStated,
    DomainError,
    FracLegendreError,
    HypothesisViolated,
    InsufficientRegularity,
    IntegerGap,
    NumericalError,
    ParameterPole,
    QuadratureError,
)
from .functions import (
    AbsPower,
    AbsX,
    BlackBox,
    EndpointPower,
    InteriorPlusPower,
    Modulator,
    RegularityProfile,
    polynomial,
    smooth,
)
from .harness import (
    ConvergenceTable,
    ErrorReport,
    convergence_table,
    decay_table,
    figure1_data,
    measure_errors,
    tightness_profile,
)
from .legexp import (
    LegendreSeries,
    coeff_closed_model,
    coeff_quadrature,
    expand,
    frac_int_legendre,
    l2_norm,
    partial_sum_eval,
)

__version__ = "0.1.0"

__all__ = [
    "AbsPower",
    "AbsX",
    "BelowThreshold",
    "BlackBox",
    "BoundCurve",
    "BoundNotStated",
    "ConvergenceTable",
    "DomainError",
    "EndpointPower",
    "ErrorReport",
    "FracLegendreError",
    "HypothesisViolated",
    "InsufficientRegularity",
    "IntegerGap",
    "InteriorPlusPower",
    "LegendreSeries",
    "Modulator",
    "NumericalError",
    "ParameterPole",
    "QuadratureError",
    "RegularityProfile",
    "WeightedNorm",
    "absx_pointwise_bounds",
    "bound_curve",
    "bound_value",
    "coeff_closed_model",
    "coeff_decay_bound",
    "coeff_quadrature",
    "convergence_table",
    "decay_table",
    "endpoint_bounds",
    "expand",
    "figure1_data",
    "frac_int_legendre",
    "interior_bounds",
    "l2_norm",
    "measure_errors",
    "partial_sum_eval",
    "polynomial",
    "seminorm_endpoint",
    "seminorm_interior",
    "smooth",
    "tightness_profile",
    "__version__",
]
