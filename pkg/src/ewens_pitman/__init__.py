"""Exact and asymptotic distribution of the number of types in the
two-parameter sequential sampling model.

The package computes the pmf of the type count K_n three independent ways
(Markov-chain dynamic programming, a combinatorial convolution identity,
and contour quadrature of the generating-function coefficient), evaluates
the precise large- and moderate-deviation estimates with their exact
polynomial prefactors, and provides the density, distribution and tail
asymptotics of the limit of K_n / n^alpha.
"""

from .errors import (
    BranchCutError,
    DimensionMismatchError,
    DomainError,
    NoConvergenceError,
    OutOfRangeError,
    PoleAtZeroError,
    QuadratureFailureError,
)
from .params import LogProb, ModelParams, frac_ceil, log_rising, log_sum, validate_params
from .sibuya import (
    ConvolutionTable,
    SibuyaPmf,
    convolution_log_matrix,
    convolve_power,
    generating_function,
    pmf_table,
)
from .exact import (
    PmfTable,
    markov_log_pmf_rows,
    mean_exact,
    pmf_formula,
    pmf_markov,
    tail_exact,
)
from .saddle import (
    SaddleSolution,
    SmallXLeadingTerms,
    h_eval,
    rate_function,
    small_x_expansions,
    solve_saddle,
)
from .asymptotics import (
    DeviationEstimate,
    global_ldp,
    global_mdp,
    laplace_sum,
    laplace_sum_direct,
    local_ldp,
    local_mdp,
    log_coefficient_asymptotic,
    log_coefficient_exact,
)
from .contour import ContourSpec, contour_spec, integrand, saddle_asymptotic, vertical_line_integral
from .fluctuation import (
    StableKernel,
    diversity_density,
    diversity_density_via_stable,
    diversity_tail_asymptotic,
    diversity_tail_numeric,
    stable_density,
    stable_density_series,
)
from .montecarlo import EmpiricalPmf, SimConfig, simulate_kn, tvd

__version__ = "0.1.0"

__all__ = [
    "BranchCutError",
    "ContourSpec",
    "ConvolutionTable",
    "DeviationEstimate",
    "DimensionMismatchError",
    "DomainError",
    "EmpiricalPmf",
    "LogProb",
    "ModelParams",
    "NoConvergenceError",
    "OutOfRangeError",
    "PmfTable",
    "PoleAtZeroError",
    "QuadratureFailureError",
    "SaddleSolution",
    "SibuyaPmf",
    "SimConfig",
    "SmallXLeadingTerms",
    "StableKernel",
    "contour_spec",
    "convolution_log_matrix",
    "convolve_power",
    "diversity_density",
    "diversity_density_via_stable",
    "diversity_tail_asymptotic",
    "diversity_tail_numeric",
    "frac_ceil",
    "generating_function",
    "global_ldp",
    "global_mdp",
    "h_eval",
    "integrand",
    "laplace_sum",
    "laplace_sum_direct",
    "local_ldp",
    "local_mdp",
    "log_coefficient_asymptotic",
    "log_coefficient_exact",
    "log_rising",
    "log_sum",
    "markov_log_pmf_rows",
    "mean_exact",
    "pmf_formula",
    "pmf_markov",
    "pmf_table",
    "rate_function",
    "saddle_asymptotic",
    "simulate_kn",
    "small_x_expansions",
    "solve_saddle",
    "stable_density",
    "stable_density_series",
    "tail_exact",
    "tvd",
    "validate_params",
]
