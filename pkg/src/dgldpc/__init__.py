"""Weight and stopping-set spectrum growth rates of D-GLDPC code ensembles."""

__version__ = "0.1.0"

from .binary_codes import (  # noqa: E402
    BitMatrix,
    BivariateEnumerator,
    ComponentCode,
    WeightEnumerator,
    hamming_code,
    reed_muller_first_order,
    repetition_code,
    spc_code,
)
from .ensemble import (  # noqa: E402
    CNType,
    DerivedParams,
    Ensemble,
    VNType,
    derive,
    dominant_set,
    q_polynomials,
    smallest_realizable_n,
    validate_graph_realizability,
)
from .asymptotics import (  # noqa: E402
    classify,
    critical_exponent,
    exact_growth_rate,
    growth_curve,
    growth_point,
    single_pair_linear_coeff,
    small_alpha_expansion,
    stability_bound,
    stopping_set_expansion,
    stopping_set_growth,
)
from .oracle import (  # noqa: E402
    exact_average_spectrum,
    exact_average_stopping_spectrum,
    monte_carlo_spectrum,
    sample_instance,
)
