"""Model parameters and shared scalar utilities.

All probabilities in this package are carried as natural logarithms
(``LogProb``); conversion to linear scale happens only at output
boundaries. The helpers here are the numeric bedrock everything else
builds on: validated ``(alpha, theta)`` pairs, log rising factorials,
the ceiling-based fractional part, and stable log-domain summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TypeAlias

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, OutOfRangeError

# Natural log of a probability; -inf encodes probability zero.
LogProb: TypeAlias = float


@dataclass(frozen=True)
class ModelParams:
    """Validated pair (alpha, theta) with 0 < alpha < 1 and theta > 0.

    theta > 0 (rather than theta > -alpha) is enforced everywhere because
    the deviation prefactors contain Gamma(theta).
    """

    alpha: float
    theta: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0) or not math.isfinite(self.alpha):
            raise OutOfRangeError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (self.theta > 0.0) or not math.isfinite(self.theta):
            raise OutOfRangeError(f"theta must be positive, got {self.theta}")


def validate_params(alpha: float, theta: float) -> ModelParams:
    """Validate (alpha, theta) and return an immutable parameter object."""
    return ModelParams(float(alpha), float(theta))


def log_rising(a: float, z: float) -> float:
    """log of the rising factorial Gamma(a + z) / Gamma(a).

    Requires a > 0 and a + z > 0. For integer z this is
    log(a (a+1) ... (a+z-1)); z = 0 gives 0.
    """
    if not (a > 0.0):
        raise DomainError(f"rising factorial requires a > 0, got a={a}")
    if not (a + z > 0.0):
        raise DomainError(f"rising factorial requires a + z > 0, got a+z={a + z}")
    return float(gammaln(a + z) - gammaln(a))


def frac_ceil(x: float) -> float:
    """Fractional part in the ceiling convention: ceil(x) - x, in [0, 1)."""
    return float(math.ceil(x) - x)


def log_sum(log_values: np.ndarray) -> LogProb:
    """Sum of exponentials in log domain, accumulating the smallest terms first.

    Uses the usual max shift; the ascending accumulation keeps the relative
    error of sums over n terms at O(n * eps).
    """
    v = np.asarray(log_values, dtype=float)
    v = v[v > -np.inf]
    if v.size == 0:
        return float("-inf")
    m = float(np.max(v))
    if m == float("inf"):
        return float("inf")
    return m + math.log(float(np.sum(np.sort(np.exp(v - m)))))
