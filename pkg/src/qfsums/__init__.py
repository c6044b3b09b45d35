"""Ideal counts of quadratic fields, their moments, and the asymptotics of their sums."""
from .arithmetic import (
    IDONEAL,
    CoefficientKind,
    Discriminant,
    PrimeClass,
    QuadraticForm,
    classify_prime,
    coeff_prime_power,
    coefficient,
    coefficient_block,
    divisor_sum_oracle,
    kronecker_symbol,
    lattice_repr_oracle,
    principal_form,
    representation_count,
)
from .constants import (
    ConstantSet,
    ConstantSource,
    constants_corollary1,
    constants_corollary2,
    constants_corollary3,
    main_term,
)
from .errors import NumericBudgetError, ScaleLimitError, UnsupportedDiscriminant
from .products import (
    ProductTruncation,
    log_deriv_G_at_1,
    product_G,
    ramified_log_sum,
    ramified_product,
)
from .special import (
    EvaluationParams,
    dirichlet_L,
    dirichlet_L_prime,
    euler_gamma,
    hurwitz_zeta,
    hurwitz_zeta_sderiv,
    riemann_zeta,
    riemann_zeta_prime,
)
from .summation import (
    SolutionCount,
    SummationReport,
    count_solutions,
    count_solutions_bruteforce,
    dirichlet_partial_sum,
    partial_sums,
    residual_series,
    sum_coefficients,
)

__version__ = "0.1.0"
