"""Asymptotic point and tail estimates for the number of types.

Four regimes are covered, each assembled fully in log domain:

* local large deviations:    P(K_n = k) at k = x n fixed fractions,
* local moderate deviations: P(K_n = k) at k = y n^alpha b_n^(1-alpha),
* global large deviations:   P(K_n >= x n), which adds the discrete
  geometric (sawtooth) factor exp(-{nx} I'(x)) / (1 - exp(-I'(x))),
* global moderate deviations: P(K_n >= y n^alpha b_n^(1-alpha)).

The exponential factor is always exp(-n I(.)) with the rate function
evaluated exactly through the saddle solver, never through a truncated
expansion; only the polynomial prefactors are asymptotic. A discrete
Laplace-sum helper for sums psi(k/n) exp(-n f(k/n)) is included both as
the closed-form estimate and as a direct summation for validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import DomainError
from .params import ModelParams, frac_ceil, log_rising
from .saddle import solve_saddle

REGIME_LOCAL_LDP = "local-ldp"
REGIME_LOCAL_MDP = "local-mdp"
REGIME_GLOBAL_LDP = "global-ldp"
REGIME_GLOBAL_MDP = "global-mdp"


@dataclass(frozen=True)
class DeviationEstimate:
    """A tail or point estimate split into prefactor and exponential factor.

    log_total = log_coeff + log_exp always holds exactly. For the global
    regimes log_coeff already contains the sawtooth factor, which is also
    reported separately as log_frac (0 for the local regimes).
    """

    regime: str
    log_coeff: float
    log_exp: float
    log_total: float
    log_frac: float = 0.0
    inputs: dict = field(default_factory=dict)


def log_coefficient_exact(params: ModelParams, n: int, k: int) -> float:
    """Exact log of n!/k! * rising(theta/alpha, k) / rising(theta, n)."""
    if not 1 <= k <= n:
        raise IndexError(f"k must lie in 1..{n}, got {k}")
    alpha, theta = params.alpha, params.theta
    return float(
        gammaln(n + 1)
        - gammaln(k + 1)
        + log_rising(theta / alpha, k)
        - log_rising(theta, n)
    )


def log_coefficient_asymptotic(params: ModelParams, n: int, k: int) -> float:
    """Stirling limit of the combinatorial coefficient.

    Gamma(theta)/Gamma(theta/alpha) * n^((1/alpha - 1) theta) * (k/n)^(theta/alpha - 1),
    accurate to a relative O(1/k).
    """
    alpha, theta = params.alpha, params.theta
    x = k / n
    return float(
        gammaln(theta)
        - gammaln(theta / alpha)
        + (1.0 / alpha - 1.0) * theta * math.log(n)
        + (theta / alpha - 1.0) * math.log(x)
    )


def _log_prefactor_at(params: ModelParams, n: int, x: float) -> tuple[float, object]:
    """Shared local prefactor: coefficient asymptotic plus Gaussian width.

    Returns (log prefactor, saddle solution); the prefactor is
    Gamma(theta)/Gamma(theta/alpha) * n^((1/alpha-1) theta - 1/2)
    / (z(x) sqrt(2 pi |h''(z(x))|)) * x^(theta/alpha - 1).
    """
    alpha, theta = params.alpha, params.theta
    sol = solve_saddle(params, x)
    log_coeff = (
        gammaln(theta)
        - gammaln(theta / alpha)
        + ((1.0 / alpha - 1.0) * theta - 0.5) * math.log(n)
        - math.log(sol.z_star)
        - 0.5 * math.log(2.0 * math.pi * abs(sol.h2))
        + (theta / alpha - 1.0) * math.log(x)
    )
    return float(log_coeff), sol


def local_ldp(params: ModelParams, n: int, k: int) -> DeviationEstimate:
    """Pointwise estimate of P(K_n = k) in the linear-scale regime k = x n.

    Relative accuracy O(1/(x n)); the constant grows roughly like
    (theta/alpha)^2 / 2, so large theta/alpha needs large k.
    """
    if not 1 <= k <= n - 1:
        raise IndexError(f"k must lie in 1..{n - 1}, got {k}")
    x = k / n
    log_coeff, sol = _log_prefactor_at(params, n, x)
    log_exp = -n * sol.h_val
    return DeviationEstimate(
        regime=REGIME_LOCAL_LDP,
        log_coeff=log_coeff,
        log_exp=log_exp,
        log_total=log_coeff + log_exp,
        inputs={"n": n, "k": k, "x": x},
    )


def local_mdp(params: ModelParams, n: int, k: int, b_n: float) -> DeviationEstimate:
    """Pointwise estimate of P(K_n = k) on the intermediate scale.

    The scale variable is y = k / (n^alpha b_n^(1-alpha)); the estimate is
    exact in the exponent, exp(-n I(y (b_n/n)^(1-alpha))) = exp(-n I(k/n)),
    and asymptotic in the prefactor, which no longer involves the saddle
    curvature: the small-x limit replaces 1/(z sqrt(2 pi |h''|)) by the
    closed constant sqrt(alpha^(1/(1-alpha)) / (2 pi (1-alpha))) x^(1/(2(1-alpha))).
    """
    if not (1.0 < b_n < n):
        raise DomainError(f"b_n must lie in (1, n), got {b_n}")
    if k < 1:
        raise IndexError(f"k must be >= 1, got {k}")
    alpha, theta = params.alpha, params.theta
    y = k / (n**alpha * b_n ** (1.0 - alpha))
    x = k / n  # equals y (b_n/n)^(1-alpha) exactly
    sol = solve_saddle(params, x)
    log_exp = -n * sol.h_val
    log_coeff = (
        gammaln(theta)
        - gammaln(theta / alpha)
        - 0.5 * math.log(2.0 * math.pi * (1.0 - alpha) * alpha ** (-1.0 / (1.0 - alpha)))
        + ((1.0 / alpha - 1.0) * theta - 0.5) * math.log(n)
        + ((1.0 - alpha) * (theta / alpha - 1.0) + 0.5) * math.log(b_n / n)
        + (theta / alpha + 1.0 / (2.0 * (1.0 - alpha)) - 1.0) * math.log(y)
    )
    log_coeff = float(log_coeff)
    return DeviationEstimate(
        regime=REGIME_LOCAL_MDP,
        log_coeff=log_coeff,
        log_exp=log_exp,
        log_total=log_coeff + log_exp,
        inputs={"n": n, "k": k, "b_n": b_n, "y": y, "x": x},
    )


def _log_sawtooth_factor(n: int, x: float, i1: float) -> float:
    """log of exp(-{n x} I'(x)) / (1 - exp(-I'(x))), {.} = ceil - value.

    I'(x) -> 0 as x -> 0 makes 1 - exp(-I') ill-conditioned; expm1 keeps
    full precision there.
    """
    return -frac_ceil(n * x) * i1 - math.log(-math.expm1(-i1))


def global_ldp(params: ModelParams, n: int, x: float) -> DeviationEstimate:
    """Tail estimate of P(K_n >= x n) for a fixed fraction x in (0, 1).

    The local prefactor at x is multiplied by the geometric sawtooth factor
    that accounts for the discreteness of the summation index; at integer
    n x the fractional part vanishes and the factor is 1/(1 - exp(-I')).
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not (0.0 < x < 1.0):
        raise ValueError(f"x must lie in (0, 1), got {x}")
    log_pref, sol = _log_prefactor_at(params, n, x)
    log_frac = _log_sawtooth_factor(n, x, sol.i1)
    log_coeff = log_pref + log_frac
    log_exp = -n * sol.h_val
    return DeviationEstimate(
        regime=REGIME_GLOBAL_LDP,
        log_coeff=log_coeff,
        log_exp=log_exp,
        log_total=log_coeff + log_exp,
        log_frac=log_frac,
        inputs={"n": n, "x": x, "i1": sol.i1},
    )


def global_mdp(params: ModelParams, n: int, y: float, b_n: float) -> DeviationEstimate:
    """Tail estimate of P(K_n >= y n^alpha b_n^(1-alpha)).

    The prefactor constant sqrt(2 pi (1-alpha) alpha^((2 alpha - 1)/(1 - alpha)))
    carries the phase transition: the alpha power switches sign at
    alpha = 1/2 (and equals 1 there). The polynomial scale b_n^((1-alpha)
    theta/alpha - 1/2) is free of n.
    """
    if not (1.0 < b_n < n):
        raise DomainError(f"b_n must lie in (1, n), got {b_n}")
    if not (y > 0.0):
        raise DomainError(f"y must be positive, got {y}")
    alpha, theta = params.alpha, params.theta
    x = y * (b_n / n) ** (1.0 - alpha)
    sol = solve_saddle(params, x)
    log_exp = -n * sol.h_val
    log_coeff = float(
        gammaln(theta)
        - gammaln(theta / alpha)
        + ((1.0 - alpha) * theta / alpha - 0.5) * math.log(b_n)
        - 0.5
        * math.log(
            2.0 * math.pi * (1.0 - alpha) * alpha ** ((2.0 * alpha - 1.0) / (1.0 - alpha))
        )
        + (theta / alpha - 1.0 / (2.0 * (1.0 - alpha))) * math.log(y)
    )
    # Both readings of the relative error prediction (they coincide since
    # the common factor (b_n/n)^alpha distributes over the maximum).
    scale = (b_n / n) ** alpha
    err_distributed = max(y ** (alpha / (1.0 - alpha)) * scale, (1.0 / y) / b_n * scale)
    err_factored = max(y ** (alpha / (1.0 - alpha)), (1.0 / y) / b_n) * scale
    return DeviationEstimate(
        regime=REGIME_GLOBAL_MDP,
        log_coeff=log_coeff,
        log_exp=log_exp,
        log_total=log_coeff + log_exp,
        inputs={
            "n": n,
            "y": y,
            "b_n": b_n,
            "x": x,
            "err_pred_distributed": err_distributed,
            "err_pred_factored": err_factored,
        },
    )


def laplace_sum(
    psi: Callable[[float], float],
    f: Callable[[float], float],
    n: int,
    x: float,
    alpha2: float,
    df: Callable[[float], float] | None = None,
) -> float:
    """Closed-form estimate of sum_{k >= ceil(x n)} psi(k/n) exp(-n f(k/n)).

    Valid for increasing f with f' bounded away from 0 on [x, alpha2]:
    the sum telescopes into the geometric-like factor

        psi(x) exp(-{n x} f'(x)) / (1 - exp(-f'(x))) * exp(-n f(x)).

    df supplies f' analytically; when omitted it is taken by central
    difference with step 1e-6.
    """
    if df is None:
        h = 1e-6
        fp = (f(x + h) - f(x - h)) / (2.0 * h)
    else:
        fp = df(x)
    if not fp > 0.0:
        raise DomainError(f"f'(x) must be positive, got {fp} at x={x}")
    return psi(x) * math.exp(-frac_ceil(n * x) * fp) / (-math.expm1(-fp)) * math.exp(
        -n * f(x)
    )


def laplace_sum_direct(
    psi: Callable[[float], float],
    f: Callable[[float], float],
    n: int,
    x: float,
    alpha2: float,
) -> float:
    """Direct evaluation of sum_{k=ceil(x n)}^{ceil(alpha2 n)} psi(k/n) exp(-n f(k/n)).

    The validation companion of :func:`laplace_sum`; accumulated with a
    log-domain sum so that deep-tail windows do not underflow term by term.
    """
    k_lo = math.ceil(n * x - 1e-12)
    k_hi = math.ceil(n * alpha2)
    if k_hi < k_lo:
        return 0.0
    ks = np.arange(k_lo, k_hi + 1)
    xs = ks / n
    psi_vals = np.array([psi(float(t)) for t in xs])
    if np.any(psi_vals <= 0.0):
        raise DomainError("psi must be positive on the summation window")
    log_terms = np.log(psi_vals) - n * np.array([f(float(t)) for t in xs])
    return float(np.exp(logsumexp(log_terms)))
