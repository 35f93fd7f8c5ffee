"""Classical linear dependence measures and Ljung-Box statistics.

Empirical estimates follow the lag-window convention: the statistic at lag j
is the sample covariance or Pearson correlation of the n-j aligned pairs,
each coordinate centered by its own window mean.  This keeps every
correlation inside [-1, 1].  Bartlett's approximation supplies the familiar
+-1.96/sqrt(n) bands for correlogram plots; they are only accurate for linear
processes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cross import LagStat, LaggedStatistics, lagged_pair


@dataclass(frozen=True)
class CorrelogramEntry:
    lag: int
    value: float
    band: float


def _as_univariate(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x[:, 0]
    if x.ndim != 1:
        raise ValueError(f"expected a univariate series, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("series contains non-finite entries")
    return x


def _check_lag(n: int, lag: int) -> None:
    if not 0 <= lag <= n - 2:
        raise ValueError(f"lag must be in [0, {n - 2}], got {lag}")


def _window_cov(u: np.ndarray, v: np.ndarray) -> float:
    return float(np.mean((u - u.mean()) * (v - v.mean())))


def _window_corr(u: np.ndarray, v: np.ndarray) -> float:
    num = _window_cov(u, v)
    den = u.std() * v.std()
    if den <= 0.0:
        return 0.0
    return num / den


def acvf(x, lag: int) -> float:
    """Sample autocovariance at ``lag``: covariance of (X_t, X_{t+lag}) pairs."""
    x = _as_univariate(x)
    _check_lag(x.shape[0], lag)
    u = x[: x.shape[0] - lag] if lag else x
    v = x[lag:]
    return _window_cov(u, v)


def acf(x, lag: int) -> float:
    """Sample autocorrelation at ``lag``: Pearson correlation of the lag pairs.

    Equals 1 at lag 0 for any nonconstant series; 0 when either window is
    constant.
    """
    x = _as_univariate(x)
    _check_lag(x.shape[0], lag)
    u = x[: x.shape[0] - lag] if lag else x
    v = x[lag:]
    return _window_corr(u, v)


def ccvf(x, y, lag: int) -> float:
    """Sample crosscovariance at ``lag``: covariance of (X_t, Y_{t+lag}) pairs."""
    x = _as_univariate(x)
    y = _as_univariate(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError("series must have the same length")
    _check_lag(x.shape[0], lag)
    u = x[: x.shape[0] - lag] if lag else x
    v = y[lag:]
    return _window_cov(u, v)


def ccf(x, y, lag: int) -> float:
    """Sample crosscorrelation at ``lag``: Pearson correlation of the pairs."""
    x = _as_univariate(x)
    y = _as_univariate(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError("series must have the same length")
    _check_lag(x.shape[0], lag)
    u = x[: x.shape[0] - lag] if lag else x
    v = y[lag:]
    return _window_corr(u, v)


def bartlett_band(n: int) -> float:
    """Half-width of the approximate 95% confidence band, 1.96/sqrt(n)."""
    if n < 1:
        raise ValueError("need at least one observation")
    return 1.96 / np.sqrt(n)


def acf_correlogram(x, max_lag: int) -> list[CorrelogramEntry]:
    """Autocorrelations for lags 0..max_lag with Bartlett bands attached."""
    x = _as_univariate(x)
    band = bartlett_band(x.shape[0])
    return [CorrelogramEntry(lag=j, value=acf(x, j), band=band) for j in range(max_lag + 1)]


def ccf_correlogram(x, y, max_lag: int) -> list[CorrelogramEntry]:
    """Crosscorrelations for lags 0..max_lag with Bartlett bands attached."""
    x = _as_univariate(x)
    band = bartlett_band(x.shape[0])
    return [CorrelogramEntry(lag=j, value=ccf(x, y, j), band=band) for j in range(max_lag + 1)]


def ljung_box(x, max_lag: int) -> float:
    """Portmanteau statistic n(n+2) * sum_{j=1..M} acf(j)^2 / (n-j)."""
    x = _as_univariate(x)
    n = x.shape[0]
    if not 1 <= max_lag <= n - 2:
        raise ValueError(f"max_lag must be in [1, {n - 2}], got {max_lag}")
    total = sum(acf(x, j) ** 2 / (n - j) for j in range(1, max_lag + 1))
    return n * (n + 2) * total


def cross_ljung_box_statistic(x, y, max_lag: int) -> tuple[float, LaggedStatistics]:
    """Cross-correlation portmanteau of X against present and past Y.

    Sums n(n+2) * r_j^2 / (n-j) for j = 0..max_lag, where r_j is the Pearson
    correlation of the pairs (X_{t+j}, Y_t).  Lag 0 is included so
    instantaneous dependence is visible.  The per-lag decomposition records
    statistic values such that weight * statistic reproduces each summand.
    """
    x = _as_univariate(x)
    y = _as_univariate(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError("series must have the same length")
    n = x.shape[0]
    if not 0 <= max_lag <= n - 2:
        raise ValueError(f"max_lag must be in [0, {n - 2}], got {max_lag}")
    stats = []
    for j in range(max_lag + 1):
        xj, yj = lagged_pair(x, y, j)
        r = _window_corr(xj[:, 0], yj[:, 0])
        summand = n * (n + 2) * r**2 / (n - j)
        weight = (n - j) / n
        stats.append(LagStat(lag=j, weight=weight, statistic=summand / weight))
    lagged = LaggedStatistics(per_lag=tuple(stats), max_lag=max_lag)
    return lagged.total, lagged


def ljung_box_cross_test(x, y, max_lag: int = 1, reps: int = 100, block_size=None, seed=None):
    """Cross Ljung-Box test with a block-permutation null.

    Thin wrapper over :func:`tsindep.permutation.permutation_test` with
    ``kind='ljungbox'``; see there for the full contract.
    """
    from .permutation import permutation_test

    return permutation_test(
        x, y, kind="ljungbox", max_lag=max_lag, reps=reps, block_size=block_size, seed=seed
    )
