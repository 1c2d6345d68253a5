"""fracmod: numerical fractional calculus with verified modulus bounds."""

from .errors import (
    ConstructionError,
    DegenerateFitError,
    DomainError,
    FracmodError,
    RangeError,
    SamplingError,
)
from .fracops import (
    frac_derivative,
    frac_image_exact,
    frac_integral,
    riesz_existence_check,
    riesz_potential,
)
from .gls import (
    PsiFunction,
    default_p_grid,
    fundamental_function,
    gls_norm,
    nu_builder,
    psi_from_function,
)
from .gridfn import (
    Constant,
    Grid1D,
    GridFunction,
    GridFunctionND,
    Indicator,
    Power,
    SingularPower,
    as_nd,
    dilate,
    sample,
    zero_extend,
)
from .harness import (
    BoundReport,
    ExponentFit,
    check_derivative_bound,
    check_gls_bounds,
    check_growth_bound,
    check_integral_bound,
    check_riesz_bound,
    check_scaling,
    estimate_exponent,
    lower_bound_K_D,
    run_verification,
)
from .modulus import ModulusProfile, modulus, modulus_profile, omega_integral
from .norms import (
    OrliczParams,
    delta_p,
    kappa,
    lp_norm,
    luxemburg_norm,
    orlicz_weighted_norm,
    weighted_norm,
    young_orlicz,
    z_constant,
)
from .specfun import beta, gamma, log_gamma

__version__ = "0.1.0"
