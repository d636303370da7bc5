"""Two independent exact computations of the distribution of the number of types.

``pmf_markov`` evolves the sequential sampling chain directly: after m
observations with k types, observation m+1 founds a new type with
probability (theta + k*alpha)/(theta + m). ``pmf_formula`` assembles the
same pmf from the combinatorial identity

    P(K_n = k) = n!/k! * rising(theta/alpha, k)/rising(theta, n)
                 * P(X_1 + ... + X_k = n)

with X_l the i.i.d. cluster sizes from :mod:`ewens_pitman.sibuya`. The two
routes share no code beyond log-gamma, so their agreement is the package's
master oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sibuya
from .params import LogProb, ModelParams, log_sum

NEG_INF = float("-inf")

METHOD_MARKOV = "markov-dp"
METHOD_FORMULA = "sibuya-formula"


@dataclass(frozen=True)
class PmfTable:
    """Exact log pmf of the number of types among n observations.

    log_pmf is indexed by k (index 0 is -inf padding); every k in 1..n has
    strictly positive probability, so all entries are finite.
    """

    n: int
    params: ModelParams
    log_pmf: np.ndarray
    method: str


def markov_log_pmf_rows(params: ModelParams, n_max: int) -> list[np.ndarray | None]:
    """All chain marginals at once: rows[m][k] = log P(K_m = k), m = 1..n_max.

    The forward pass visits every m anyway, so snapshotting rows is free.
    rows[0] is None. Runs fully in log domain: the deep tail of the pmf
    underflows double precision long before desk-scale n is reached, so a
    linear-domain pass could not keep every entry finite.
    """
    if n_max < 1:
        raise ValueError(f"n must be >= 1, got {n_max}")
    alpha, theta = params.alpha, params.theta
    rows: list[np.ndarray | None] = [None] * (n_max + 1)
    row = np.array([NEG_INF, 0.0])
    rows[1] = row
    for m in range(1, n_max):
        k = np.arange(m + 1)
        log_den = np.log(theta + m)
        stay = np.log(m - k * alpha) - log_den       # k = 0 slot is inert (-inf row entry)
        grow = np.log(theta + k * alpha) - log_den
        nxt = np.full(m + 2, NEG_INF)
        nxt[: m + 1] = row + stay
        shifted = np.full(m + 2, NEG_INF)
        shifted[1:] = row + grow
        row = np.logaddexp(nxt, shifted)
        rows[m + 1] = row
    return rows


def pmf_markov(params: ModelParams, n: int) -> PmfTable:
    """Exact pmf by dynamic programming over the sequential sampling chain."""
    rows = markov_log_pmf_rows(params, n)
    return PmfTable(n=n, params=params, log_pmf=rows[n], method=METHOD_MARKOV)


def pmf_formula(
    params: ModelParams, n: int, conv: np.ndarray | None = None
) -> PmfTable:
    """Exact pmf from the combinatorial identity via cluster-size convolutions.

    Parameters
    ----------
    params, n : model parameters and sample size.
    conv : optional precomputed convolution matrix from
        :func:`ewens_pitman.sibuya.convolution_log_matrix` with at least
        n rows and columns; pass it when evaluating many n to avoid
        rebuilding the O(n^3) table.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    alpha, theta = params.alpha, params.theta
    if conv is None:
        conv = sibuya.convolution_log_matrix(sibuya.pmf_table(params, n), n, n)
    elif conv.shape[0] <= n or conv.shape[1] <= n:
        raise ValueError(f"conv matrix too small for n={n}: shape {conv.shape}")
    from scipy.special import gammaln

    k = np.arange(1, n + 1)
    log_coeff = (
        gammaln(n + 1)
        - gammaln(k + 1)
        + gammaln(theta / alpha + k)
        - gammaln(theta / alpha)
        - (gammaln(theta + n) - gammaln(theta))
    )
    log_pmf = np.concatenate([[NEG_INF], log_coeff + conv[1 : n + 1, n]])
    return PmfTable(n=n, params=params, log_pmf=log_pmf, method=METHOD_FORMULA)


def tail_exact(table: PmfTable, k0: int) -> LogProb:
    """log P(K_n >= k0), summed in log domain from the smallest terms."""
    if not 1 <= k0 <= table.n:
        raise IndexError(f"k0 must lie in 1..{table.n}, got {k0}")
    return log_sum(table.log_pmf[k0:])


def mean_exact(table: PmfTable) -> float:
    """Mean number of types, sum_k k * P(K_n = k)."""
    k = np.arange(1, table.n + 1)
    return float(np.dot(k, np.exp(table.log_pmf[1:])))
