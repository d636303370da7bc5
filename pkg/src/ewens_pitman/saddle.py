"""Saddle point of the coefficient integral and the tail rate function.

The generating-function representation of the number-of-types pmf turns on
the function

    h(z) = log(z) - x * log(1 - (1 - z)^alpha),      z in (0, 1),

whose unique interior maximum z(x) controls the exponential decay of
P(K_n = floor(x n)). The rate function is I(x) = h(z(x)). This module
solves the critical equation, evaluates h and its derivatives up to order
four, and provides the small-x leading terms that expose the second-order
phase transition at alpha = 1/2.

Numerical notes. The critical equation is solved after the substitution
z = w/(1+w), where it reads f(w) = (1+w)^alpha - 1 - alpha*x*w = 0 with a
single root to the right of f's maximum at w_peak = x^(-1/(1-alpha)) - 1.
f is strictly decreasing on that bracket, so bracketed root finding is
unconditionally safe. The complement u = 1 - z = 1/(1+w) is formed
directly from w; near x -> 0 the saddle approaches 1 and computing u by
subtraction would lose every significant digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import BranchCutError, NoConvergenceError, PoleAtZeroError
from .params import ModelParams


@dataclass(frozen=True)
class SaddleSolution:
    """Solved saddle z(x) with derivative data for the deviation prefactors.

    Fields
    ------
    x : point in (0, 1).
    z_star, w_star, one_minus_z : the saddle in z-, w- and complement form.
    h_val : I(x) = h(z_star), the rate function value.
    h2 : h''(z_star), always negative (z_star is a maximum on (0, 1)).
    i1 : I'(x) = -log(1 - (1-z_star)^alpha), always positive.
    i2 : I''(x), always positive (the rate function is convex).
    residual : |h'(z_star)| achieved by the solver.
    """

    x: float
    z_star: float
    w_star: float
    one_minus_z: float
    h_val: float
    h2: float
    i1: float
    i2: float
    residual: float


def _falling(alpha: float, m: int) -> float:
    """alpha (alpha-1) ... (alpha-m+1)."""
    out = 1.0
    for i in range(m):
        out *= alpha - i
    return out


def h_eval(params: ModelParams, x: float, z: complex, order: int = 0):
    """h(z) = log z - x log(1 - (1-z)^alpha), or its order-th z-derivative.

    Supports real z in (0, 1) (returned as float) and complex z off the
    branch cut [1, inf) (returned as complex), orders 0 through 4. The
    derivatives of the log term are assembled from the ratios
    D^(m)/D with D = 1 - (1-z)^alpha, which stays cancellation-free as
    z -> 1 because every factor is an explicit power of u = 1 - z.
    """
    if order not in (0, 1, 2, 3, 4):
        raise ValueError(f"order must be 0..4, got {order}")
    alpha = params.alpha
    zc = complex(z)
    if zc == 0:
        raise PoleAtZeroError("h has a pole at z = 0")
    if zc.imag == 0.0 and zc.real >= 1.0:
        raise BranchCutError(f"z = {z} lies on the branch cut [1, inf)")
    real_input = zc.imag == 0.0 and 0.0 < zc.real < 1.0

    if real_input:
        zz = zc.real
        u = 1.0 - zz
        ua = u**alpha
        log_z = math.log(zz)
        log_D = math.log1p(-ua)
    else:
        zz = zc
        u = 1.0 - zz
        ua = np.exp(alpha * np.log(u))
        log_z = np.log(zz)
        log_D = np.log(1.0 - ua)

    if order == 0:
        return log_z - x * log_D

    D = 1.0 - ua
    # D^(m) = -(-1)^m falling(alpha, m) u^(alpha - m) for m >= 1
    r = [None] + [
        -((-1.0) ** m) * _falling(alpha, m) * u ** (alpha - m) / D
        for m in (1, 2, 3, 4)
    ]
    if order == 1:
        L = r[1]
    elif order == 2:
        L = r[2] - r[1] ** 2
    elif order == 3:
        L = r[3] - 3.0 * r[2] * r[1] + 2.0 * r[1] ** 3
    else:
        L = (
            r[4]
            - 4.0 * r[3] * r[1]
            - 3.0 * r[2] ** 2
            + 12.0 * r[2] * r[1] ** 2
            - 6.0 * r[1] ** 4
        )
    m = order
    lead = ((-1.0) ** (m - 1)) * math.factorial(m - 1) / zz**m
    return lead - x * L


def solve_saddle(params: ModelParams, x: float) -> SaddleSolution:
    """Solve the critical equation and evaluate the rate-function data at x.

    Root finding happens in w = z/(1-z): f(w) = (1+w)^alpha - 1 - alpha*x*w
    is strictly decreasing on (w_peak, inf), so the bracket [w_peak, W] with
    W doubled until f(W) < 0 is guaranteed; a Newton polish then pushes the
    h' residual to the 1e-12 contract.
    """
    if not (0.0 < x < 1.0):
        raise ValueError(f"x must lie in (0, 1), got {x}")
    alpha = params.alpha

    def f(w: float) -> float:
        return math.expm1(alpha * math.log1p(w)) - alpha * x * w

    def fprime(w: float) -> float:
        return alpha * ((1.0 + w) ** (alpha - 1.0) - x)

    w_peak = x ** (-1.0 / (1.0 - alpha)) - 1.0
    lo = w_peak
    hi = max(2.0 * w_peak + 1.0, 2.0)
    doublings = 0
    while f(hi) > 0.0:
        hi *= 2.0
        doublings += 1
        if doublings > 200:
            raise NoConvergenceError(
                f"could not bracket the saddle at x={x}", iterations=doublings
            )
    w = brentq(f, lo, hi, xtol=5e-16, rtol=8.9e-16, maxiter=200)
    # One guarded Newton step in w; f is smooth and the bracket is tight.
    fw, dfw = f(w), fprime(w)
    if dfw != 0.0:
        w_new = w - fw / dfw
        if lo < w_new < hi:
            w = w_new

    z = w / (1.0 + w)
    u = 1.0 / (1.0 + w)  # 1 - z, formed without subtraction
    ua = u**alpha
    D = -math.expm1(alpha * math.log(u))  # 1 - u^alpha
    residual = abs(1.0 / z - x * alpha * ua / (u * D))
    if not residual < 1e-10:
        raise NoConvergenceError(
            f"saddle residual {residual:.3e} at x={x}", iterations=None
        )

    h_val = math.log(z) - x * math.log1p(-ua)
    h2 = (
        -1.0 / z**2
        - x * alpha * (1.0 - alpha) * u ** (alpha - 2.0) / D
        + x * alpha**2 * u ** (2.0 * alpha - 2.0) / D**2
    )
    i1 = -math.log1p(-ua)
    z_prime = alpha * z * ua / ((1.0 - alpha * x) * ua - (1.0 - alpha))
    i2 = -alpha * ua / (u * D) * z_prime
    return SaddleSolution(
        x=x,
        z_star=z,
        w_star=w,
        one_minus_z=u,
        h_val=h_val,
        h2=h2,
        i1=i1,
        i2=i2,
        residual=residual,
    )


def rate_function(params: ModelParams, x: float) -> float:
    """I(x) = h(z(x)): the exponential decay rate of P(K_n ~ x n)."""
    return solve_saddle(params, x).h_val


@dataclass(frozen=True)
class SmallXLeadingTerms:
    one_minus_z_leading: float
    h2_leading: float
    i2_leading: float


def small_x_expansions(params: ModelParams, x: float) -> SmallXLeadingTerms:
    """Leading small-x behaviour of the saddle and the rate-function curvature.

    1 - z(x) ~ (alpha x)^(1/(1-alpha)),
    h''(z(x)) ~ -(1-alpha) alpha^(-1/(1-alpha)) x^(-1/(1-alpha)),
    I''(x) ~ alpha^(1/(1-alpha))/(1-alpha) * x^((2 alpha - 1)/(1 - alpha)).

    The exponent (2 alpha - 1)/(1 - alpha) changes sign at alpha = 1/2, so
    the I'' coefficient blows up, tends to the constant 1/2, or vanishes as
    x -> 0 according to alpha < 1/2, = 1/2, > 1/2.
    """
    if not (0.0 < x < 1.0):
        raise ValueError(f"x must lie in (0, 1), got {x}")
    alpha = params.alpha
    e = 1.0 / (1.0 - alpha)
    one_minus_z = (alpha * x) ** e
    h2 = -(1.0 - alpha) * alpha ** (-e) * x ** (-e)
    i2 = alpha**e / (1.0 - alpha) * x ** ((2.0 * alpha - 1.0) * e)
    return SmallXLeadingTerms(
        one_minus_z_leading=one_minus_z, h2_leading=h2, i2_leading=i2
    )
