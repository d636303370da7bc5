"""The heavy-tailed cluster-size distribution on {1, 2, ...} and its convolutions.

The law P(j) = alpha * (1-alpha)(2-alpha)...(j-1-alpha) / j! is the
distribution of the size of a single type's contribution; the k-fold
convolution P(X_1 + ... + X_k = m) is the combinatorial engine behind the
exact distribution of the number of types. Everything lives in log domain:
individual probabilities are benign, but k-fold convolutions reach
exp(-hundreds) and must not underflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import BranchCutError
from .params import ModelParams

NEG_INF = float("-inf")


@dataclass(frozen=True)
class SibuyaPmf:
    """Truncated log pmf table, log_p[j] = log P(j) for j = 1..j_max.

    Index 0 is -inf padding so that arrays are indexed by the value itself.
    """

    alpha: float
    log_p: np.ndarray

    @property
    def j_max(self) -> int:
        return len(self.log_p) - 1


@dataclass(frozen=True)
class ConvolutionTable:
    """log_q[m] = log P(X_1 + ... + X_k = m) for m = k..n_max.

    Entries below m = k are -inf (each summand is at least 1). The total
    stored mass is <= 1; the deficit is exactly the truncated tail mass.
    """

    k: int
    n_max: int
    log_q: np.ndarray


def pmf_table(params: ModelParams, j_max: int) -> SibuyaPmf:
    """Tabulate log P(j) for j = 1..j_max via the ratio recurrence.

    P(1) = alpha and P(j+1)/P(j) = (j - alpha)/(j + 1), which avoids any
    overflow in the rising factorial and keeps the table monotone.
    """
    if j_max < 1:
        raise ValueError(f"j_max must be >= 1, got {j_max}")
    alpha = params.alpha
    log_p = np.full(j_max + 1, NEG_INF)
    log_p[1] = np.log(alpha)
    if j_max > 1:
        j = np.arange(1, j_max)
        log_p[2:] = log_p[1] + np.cumsum(np.log(j - alpha) - np.log(j + 1))
    return SibuyaPmf(alpha=alpha, log_p=log_p)


def generating_function(alpha: float, z: complex) -> complex:
    """Probability generating function E[z^X] = 1 - (1 - z)^alpha.

    Principal branch of the fractional power; the branch cut of (1-z)^alpha
    is the real ray z >= 1, which is rejected.
    """
    zc = complex(z)
    if zc.imag == 0.0 and zc.real >= 1.0:
        raise BranchCutError(f"z = {z} lies on the branch cut [1, inf)")
    if zc.imag == 0.0:
        return complex(1.0 - (1.0 - zc.real) ** alpha)
    return 1.0 - np.exp(alpha * np.log(1.0 - zc))


def _log_convolve(log_a: np.ndarray, log_b: np.ndarray, n_max: int) -> np.ndarray:
    """Log-domain convolution c[m] = logsumexp_j(a[j] + b[m-j]), m <= n_max.

    Inputs are indexed by value with -inf below their support. Exact up to
    max-shift rounding; no linear-domain shortcut, so deep-tail entries keep
    full relative accuracy.
    """
    la = min(len(log_a) - 1, n_max)
    lb = min(len(log_b) - 1, n_max)
    stacked = np.full((la + 1, n_max + 1), NEG_INF)
    for i in range(la + 1):
        if log_a[i] == NEG_INF:
            continue
        hi = min(lb, n_max - i)
        stacked[i, i : i + hi + 1] = log_a[i] + log_b[: hi + 1]
    return logsumexp(stacked, axis=0)


def convolution_log_matrix(pmf: SibuyaPmf, k_max: int, n_max: int) -> np.ndarray:
    """All convolution powers at once: rows[k][m] = log P(X_1+...+X_k = m).

    Row k is the convolution of row k-1 with the base pmf, so building the
    whole matrix costs one convolution per k and the matrix serves every
    (k, n) pair with n <= n_max.
    """
    if k_max < 1 or n_max < 1:
        raise ValueError("k_max and n_max must be >= 1")
    rows = np.full((k_max + 1, n_max + 1), NEG_INF)
    rows[1] = pmf.log_p[: n_max + 1] if pmf.j_max >= n_max else np.concatenate(
        [pmf.log_p, np.full(n_max - pmf.j_max, NEG_INF)]
    )
    base = rows[1]
    for k in range(2, k_max + 1):
        rows[k] = _log_convolve(rows[k - 1], base, n_max)
    return rows


def convolve_power(pmf: SibuyaPmf, k: int, n_max: int) -> ConvolutionTable:
    """Exact k-fold convolution restricted to the support {k..n_max}.

    Deterministic iterated log-domain convolution. Truncation at n_max is
    exact for the use downstream: with every summand >= 1, totals above
    n_max can never contribute to an n_max-sized sample.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rows = convolution_log_matrix(pmf, k, n_max)
    return ConvolutionTable(k=k, n_max=n_max, log_q=rows[k])
