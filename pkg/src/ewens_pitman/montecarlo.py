"""Seedable simulation of the sequential sampling scheme.

Only the number of types is simulated: after m observations with K types
the next observation founds a new type with probability
(theta + K alpha) / (theta + m), so the count evolves autonomously and no
type labels are ever materialised.

Reproducibility contract
------------------------
Replication r (0-based) consumes the uniforms produced by
``numpy.random.Generator(numpy.random.Philox(key=seed, counter=[0, 0, r, 0]))``
in observation order m = 2..n. The counter-based generator gives every
replication its own fixed stream, so the tally is bitwise identical no
matter how replications are chunked or spread over workers. This mapping
is part of the public interface and will not change.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .exact import PmfTable
from .params import ModelParams

_CHUNK = 16384


@dataclass(frozen=True)
class SimConfig:
    params: ModelParams
    n: int
    replications: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class EmpiricalPmf:
    """Histogram of simulated type counts; counts[k] for k = 1..n."""

    counts: np.ndarray
    total: int


def env_thread_cap() -> int:
    """Worker cap from EP_THREADS (default 1); results never depend on it."""
    raw = os.environ.get("EP_THREADS", "")
    try:
        v = int(raw)
    except ValueError:
        return 1
    return max(1, v)


def _simulate_chunk(config: SimConfig, start: int, size: int) -> np.ndarray:
    alpha, theta = config.params.alpha, config.params.theta
    n = config.n
    if n == 1:
        counts = np.zeros(n + 1, dtype=np.int64)
        counts[1] = size
        return counts
    u = np.empty((size, n - 1))
    for i in range(size):
        bg = np.random.Philox(key=config.seed, counter=[0, 0, start + i, 0])
        u[i] = np.random.Generator(bg).random(n - 1)
    k = np.ones(size, dtype=np.int64)
    for m in range(2, n + 1):
        p_new = (theta + k * alpha) / (theta + m - 1)
        k += u[:, m - 2] < p_new
    return np.bincount(k, minlength=n + 1).astype(np.int64)


def simulate_kn(config: SimConfig, threads: int | None = None) -> EmpiricalPmf:
    """Simulate the type count for every replication and tally the results.

    threads defaults to the EP_THREADS environment cap. Chunks are merged
    by addition, and each replication owns a fixed random stream, so the
    output is identical for any thread count or chunking.
    """
    if threads is None:
        threads = env_thread_cap()
    chunks = [
        (start, min(_CHUNK, config.replications - start))
        for start in range(0, config.replications, _CHUNK)
    ]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda c: _simulate_chunk(config, c[0], c[1]), chunks)
            )
    else:
        parts = [_simulate_chunk(config, s, c) for s, c in chunks]
    counts = np.sum(parts, axis=0)
    return EmpiricalPmf(counts=counts, total=int(counts.sum()))


def tvd(emp: EmpiricalPmf, table: PmfTable) -> float:
    """Total variation distance between the empirical and exact pmfs."""
    if len(emp.counts) != len(table.log_pmf):
        raise DimensionMismatchError(
            f"support sizes differ: {len(emp.counts) - 1} vs {table.n}"
        )
    emp_p = emp.counts[1:] / emp.total
    return float(0.5 * np.abs(emp_p - np.exp(table.log_pmf[1:])).sum())
