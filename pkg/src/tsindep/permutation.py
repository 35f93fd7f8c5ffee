"""Block permutation nulls and Monte-Carlo p-values.

Permuting single timesteps breaks the serial dependence that the null should
preserve, so replicates instead permute contiguous blocks: the index list is
split into ceil(n/b) blocks of length b, the blocks are shuffled, indices past
n wrap around to the start, and the concatenation is truncated to n.  Only the
second series is permuted.

Each replicate draws its generator from the pair (seed, replicate), so the
result is bit-identical for a fixed seed regardless of evaluation order.  The
p-value is the fraction of replicates at or above the observed statistic;
optionally the observed value can be pooled into the null, which keeps the
p-value away from exact zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, sqrt
from typing import Callable, Optional, Union

import numpy as np

from . import baselines, cross
from .cross import LaggedStatistics, optimal_lag
from .distance import Metric, as_series_matrix

StatisticFn = Callable[[np.ndarray, np.ndarray], tuple[float, LaggedStatistics]]

_KINDS = ("dcorrx", "mgcx", "ljungbox")


@dataclass(frozen=True)
class TestResult:
    """Outcome of a block-permutation independence test.

    ``p_value`` is ``count(replicate >= statistic) / reps`` and therefore
    lies on the grid {0, 1/reps, ..., 1}.  The remaining fields echo the
    configuration so a result is self-describing.
    """

    statistic: float
    p_value: float
    replicates: np.ndarray
    optimal_lag: int
    per_lag: LaggedStatistics
    kind: str
    max_lag: int
    block_size: int
    reps: int
    seed: int


def default_block_size(n: int) -> int:
    """Block size ceil(sqrt(n)): grows without bound while b/n vanishes."""
    return ceil(sqrt(n))


def block_permutation_indices(n: int, block_size: int, rng: np.random.Generator) -> np.ndarray:
    """Row indices of one block permutation of a length-n series.

    Blocks are [b*i, b*i + b) for i = 0..ceil(n/b)-1, entries taken mod n,
    concatenated in a uniformly random block order and truncated to n.  A
    block size of n or more yields the identity.
    """
    if block_size < 1:
        raise ValueError(f"block size must be positive, got {block_size}")
    num_blocks = ceil(n / block_size)
    order = rng.permutation(num_blocks)
    idx = (order[:, None] * block_size + np.arange(block_size)[None, :]) % n
    return idx.ravel()[:n]


def block_permute(y, block_size: int, seed=None) -> np.ndarray:
    """Reorder the rows of ``y`` by one random block permutation.

    ``seed`` may be anything accepted by ``numpy.random.default_rng``.
    """
    y = as_series_matrix(y)
    rng = np.random.default_rng(seed)
    return y[block_permutation_indices(y.shape[0], block_size, rng)]


def _resolve_statistic(kind: str, max_lag: int, metric: Metric) -> StatisticFn:
    if kind == "dcorrx":
        return lambda x, y: cross.dcorrx_statistic(x, y, max_lag=max_lag, metric=metric)
    if kind == "mgcx":
        return lambda x, y: cross.mgcx_statistic(x, y, max_lag=max_lag, metric=metric)
    if kind == "ljungbox":
        return lambda x, y: baselines.cross_ljung_box_statistic(x, y, max_lag=max_lag)
    raise ValueError(f"unknown test kind {kind!r}, expected one of {_KINDS}")


def permutation_test(
    x,
    y,
    kind: Union[str, StatisticFn] = "dcorrx",
    max_lag: int = 0,
    reps: int = 100,
    block_size: Optional[int] = None,
    seed=None,
    metric: Metric = None,
    pool_observed: bool = False,
) -> TestResult:
    """Test X against present and past Y with a block-permutation null.

    Parameters
    ----------
    x, y : array_like, shape (n, p) and (n, q)
        Jointly observed series.  Only y is permuted.
    kind : str or callable
        'dcorrx', 'mgcx', 'ljungbox', or a callable
        ``(x, y) -> (statistic, LaggedStatistics)`` for custom statistics.
    max_lag : int
        Largest lag entering the statistic.
    reps : int
        Number of permutation replicates, >= 1.
    block_size : int, optional
        Defaults to ceil(sqrt(n)).
    seed : int, optional
        Seed for the replicate streams; drawn fresh when omitted.  Replicate
        r uses ``default_rng((seed, r))``.
    metric : callable, optional
        Distance hook for the distance-based statistics.
    pool_observed : bool
        When True use (1 + count) / (1 + reps) instead of count / reps.

    Returns
    -------
    TestResult
    """
    x = as_series_matrix(x)
    y = as_series_matrix(y)
    n = x.shape[0]
    if y.shape[0] != n:
        raise ValueError("series must have the same number of rows")
    if reps < 1:
        raise ValueError(f"need at least one replicate, got {reps}")
    if block_size is None:
        block_size = default_block_size(n)
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1)[0])
    statistic_fn = _resolve_statistic(kind, max_lag, metric) if isinstance(kind, str) else kind
    kind_name = kind if isinstance(kind, str) else getattr(kind, "__name__", "custom")

    observed, per_lag = statistic_fn(x, y)
    replicates = np.empty(reps)
    for r in range(reps):
        rng = np.random.default_rng((seed, r))
        y_perm = y[block_permutation_indices(n, block_size, rng)]
        replicates[r] = statistic_fn(x, y_perm)[0]
    count = int((replicates >= observed).sum())
    p_value = (1 + count) / (1 + reps) if pool_observed else count / reps

    return TestResult(
        statistic=float(observed),
        p_value=float(p_value),
        replicates=replicates,
        optimal_lag=optimal_lag(per_lag),
        per_lag=per_lag,
        kind=kind_name,
        max_lag=max_lag,
        block_size=block_size,
        reps=reps,
        seed=seed,
    )


def dcorrx_test(x, y, max_lag: int = 0, reps: int = 100, block_size=None, seed=None, metric=None) -> TestResult:
    """Block-permutation test using the lag-weighted distance correlation."""
    return permutation_test(
        x, y, kind="dcorrx", max_lag=max_lag, reps=reps, block_size=block_size, seed=seed, metric=metric
    )


def mgcx_test(x, y, max_lag: int = 0, reps: int = 100, block_size=None, seed=None, metric=None) -> TestResult:
    """Block-permutation test using the lag-weighted multiscale correlation."""
    return permutation_test(
        x, y, kind="mgcx", max_lag=max_lag, reps=reps, block_size=block_size, seed=seed, metric=metric
    )
