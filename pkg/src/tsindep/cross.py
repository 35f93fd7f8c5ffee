"""Lag-weighted cross statistics between a series and the past of another.

Both test statistics share one shape: for lags j = 0..M, pair X_{t+j} with
Y_t, compute a dependence statistic on the n-j aligned rows, and sum the
per-lag values weighted by (n-j)/n with n the original length:

    T^M = sum_{j=0}^{M} ((n-j)/n) * T(j)

``dcorrx`` uses the global distance correlation per lag; ``mgcx`` uses the
smoothed-max local correlation and also records the per-lag optimal scales.
Distance matrices are rebuilt on each truncated sample because column
centering depends on the active index set.  The lag maximizing the weighted
per-lag statistic estimates the lag of strongest dependence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distance import Metric, as_series_matrix, column_center, dcorr, pairwise_distances
from .localcorr import local_correlation_map


@dataclass(frozen=True)
class LagStat:
    """One per-lag record: the lag, its weight, the statistic, and, when the
    statistic is multiscale, the optimal scale on the n - lag sized sample."""

    lag: int
    weight: float
    statistic: float
    scale: Optional[tuple[int, int]] = None
    sample_size: Optional[int] = None

    @property
    def weighted(self) -> float:
        return self.weight * self.statistic

    @property
    def normalized_scale(self) -> Optional[tuple[float, float]]:
        if self.scale is None or self.sample_size is None:
            return None
        return (self.scale[0] / self.sample_size, self.scale[1] / self.sample_size)


@dataclass(frozen=True)
class LaggedStatistics:
    """Per-lag statistics for lags 0..max_lag."""

    per_lag: tuple[LagStat, ...]
    max_lag: int

    def weighted_values(self) -> np.ndarray:
        return np.array([s.weighted for s in self.per_lag])

    @property
    def total(self) -> float:
        return float(self.weighted_values().sum())


def lagged_pair(x, y, lag: int) -> tuple[np.ndarray, np.ndarray]:
    """Align X with the values of Y ``lag`` steps earlier.

    Returns ``(x[lag:], y[:n-lag])`` so that row t of the first output pairs
    X_{t+lag} with Y_t in the second.  Requires 0 <= lag <= n-2 so at least
    two aligned rows remain.
    """
    x = as_series_matrix(x)
    y = as_series_matrix(y)
    n = x.shape[0]
    if y.shape[0] != n:
        raise ValueError("series must have the same number of rows")
    if not 0 <= lag <= n - 2:
        raise ValueError(f"lag must be in [0, {n - 2}] to leave at least 2 pairs, got {lag}")
    if lag == 0:
        return x, y
    return x[lag:], y[:-lag]


def _check_max_lag(n: int, max_lag: int) -> None:
    if max_lag < 0:
        raise ValueError(f"max_lag must be nonnegative, got {max_lag}")
    if n < max_lag + 2:
        raise ValueError(f"need n >= max_lag + 2, got n={n} with max_lag={max_lag}")


def dcorrx_statistic(x, y, max_lag: int = 0, metric: Metric = None) -> tuple[float, LaggedStatistics]:
    """Lag-weighted sum of per-lag distance correlations.

    Parameters
    ----------
    x, y : array_like, shape (n, p) and (n, q)
        Jointly observed series; X is tested against present and past Y.
    max_lag : int
        Largest lag included in the sum.
    metric : callable, optional
        Distance hook passed through to the per-lag statistics.

    Returns
    -------
    (float, LaggedStatistics)
        The statistic and its per-lag decomposition.
    """
    x = as_series_matrix(x)
    y = as_series_matrix(y)
    n = x.shape[0]
    _check_max_lag(n, max_lag)
    stats = []
    for j in range(max_lag + 1):
        xj, yj = lagged_pair(x, y, j)
        a = column_center(pairwise_distances(xj, metric))
        b = column_center(pairwise_distances(yj, metric))
        stats.append(LagStat(lag=j, weight=(n - j) / n, statistic=dcorr(a, b)))
    lagged = LaggedStatistics(per_lag=tuple(stats), max_lag=max_lag)
    return lagged.total, lagged


def mgcx_statistic(x, y, max_lag: int = 0, metric: Metric = None) -> tuple[float, LaggedStatistics]:
    """Lag-weighted sum of per-lag smoothed-max local correlations.

    Same contract as :func:`dcorrx_statistic`; each per-lag record carries the
    optimal scale found on the truncated sample of size n - lag.
    """
    x = as_series_matrix(x)
    y = as_series_matrix(y)
    n = x.shape[0]
    _check_max_lag(n, max_lag)
    stats = []
    for j in range(max_lag + 1):
        xj, yj = lagged_pair(x, y, j)
        a = column_center(pairwise_distances(xj, metric))
        b = column_center(pairwise_distances(yj, metric))
        lc = local_correlation_map(a, b)
        stats.append(
            LagStat(
                lag=j,
                weight=(n - j) / n,
                statistic=lc.statistic,
                scale=lc.optimal_scale,
                sample_size=n - j,
            )
        )
    lagged = LaggedStatistics(per_lag=tuple(stats), max_lag=max_lag)
    return lagged.total, lagged


def optimal_lag(stats: LaggedStatistics) -> int:
    """Lag maximizing the weighted per-lag statistic, ties to the smallest lag."""
    if not stats.per_lag:
        raise ValueError("no per-lag statistics recorded")
    return int(np.argmax(stats.weighted_values()))
