"""Local correlation maps over neighbor scales and their smoothed maximum.

For centered distance matrices A and B, the local covariance at scale (k, l)
restricts the elementwise product to pairs whose entries rank within the k
(resp. l) smallest values of their row:

    dcov[k, l] = sum_ij A_ij * G^k_ij * B_ij * H^l_ij

Ranks are taken on the centered values, self entries included, ties broken by
the smaller column index.  Note the product pairs A_ij with B_ij, not B_ji;
this follows the defining sum for the local family as written, so the (n, n)
cell is the same-convention global ratio rather than the transposed-product
statistic of :func:`tsindep.distance.dcorr`.

The reported statistic is a smoothed maximum over the map: a scale only beats
the global one if it sits inside a sufficiently large connected region of
scales that all exceed both the global value and a noise threshold derived
from the most negative local correlation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import label

from .distance import Metric, as_series_matrix, column_center, pairwise_distances

# A candidate region must cover at least 2n scales to override the global one.
_MIN_REGION_FACTOR = 2


@dataclass(frozen=True)
class LocalCorrMap:
    """Full grid of local correlations plus the smoothed-max summary.

    Attributes
    ----------
    corr : ndarray, shape (n, n)
        ``corr[k-1, l-1]`` is the local correlation at scale (k, l).
    statistic : float
        Smoothed maximum over the grid.
    optimal_scale : tuple of int
        1-based (k, l) cell achieving the statistic.
    normalized_scale : tuple of float
        ``(k/n, l/n)``; (1.0, 1.0) indicates a linear relationship.
    """

    corr: np.ndarray
    statistic: float
    optimal_scale: tuple[int, int]
    normalized_scale: tuple[float, float]


def row_ranks(a: np.ndarray) -> np.ndarray:
    """Rank entries of each row in ascending order, ties by column index.

    Returns an integer matrix with each row a permutation of 1..n.
    """
    a = np.asarray(a, dtype=float)
    n, m = a.shape
    order = np.argsort(a, axis=1, kind="stable")
    ranks = np.empty((n, m), dtype=np.int64)
    rows = np.arange(n)[:, None]
    ranks[rows, order] = np.arange(1, m + 1)[None, :]
    return ranks


def knn_indicator(a: np.ndarray, k: int) -> np.ndarray:
    """Binary matrix marking, per row, the k smallest centered values.

    ``result[i, j] = 1`` iff ``a[i, j]`` ranks within the k smallest entries
    of row i (self entry included, ties to the smaller column index).  Every
    row sums to exactly k.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    return (row_ranks(a) <= k).astype(np.int64)


def _scale_sums(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Cumulative sums of products over all scales in O(n^2).

    Returns the (k, l) covariance grid and the per-scale self sums for each
    series.  Each product A_ij*B_ij lands in bin (rank_A, rank_B); a 2-d
    cumulative sum then yields every scale at once.
    """
    n = a.shape[0]
    ra = row_ranks(a)
    rb = row_ranks(b)
    flat = (ra * (n + 1) + rb).ravel()
    grid = np.bincount(flat, weights=(a * b).ravel(), minlength=(n + 1) * (n + 1))
    grid = grid.reshape(n + 1, n + 1).cumsum(axis=0).cumsum(axis=1)[1:, 1:]
    self_a = np.bincount(ra.ravel(), weights=(a * a).ravel(), minlength=n + 1).cumsum()[1:]
    self_b = np.bincount(rb.ravel(), weights=(b * b).ravel(), minlength=n + 1).cumsum()[1:]
    return grid, self_a, self_b


def local_correlation_map(a: np.ndarray, b: np.ndarray) -> LocalCorrMap:
    """Compute local correlations at every scale and their smoothed maximum.

    Parameters
    ----------
    a, b : ndarray, shape (n, n)
        Column-centered distance matrices of the two samples, n >= 3.

    Returns
    -------
    LocalCorrMap
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"centered matrices must share a square shape, got {a.shape} vs {b.shape}")
    n = a.shape[0]
    if n < 3:
        raise ValueError("local correlation map needs at least 3 samples")
    grid, self_a, self_b = _scale_sums(a, b)
    den = np.sqrt(np.outer(self_a, self_b))
    corr = np.divide(grid, den, out=np.zeros_like(grid), where=den > 0)
    statistic, scale = smoothed_max(corr)
    return LocalCorrMap(
        corr=corr,
        statistic=statistic,
        optimal_scale=scale,
        normalized_scale=(scale[0] / n, scale[1] / n),
    )


def smoothed_max(corr: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Smoothed maximum of a local correlation grid.

    The threshold is the magnitude of the most negative entry, floored at 0.
    Cells must exceed both the threshold and the global-scale value to count;
    if the largest 4-connected region of such cells covers at least 2n scales,
    its maximum (ties to the smallest k, then l) is returned, otherwise the
    global-scale value at (n, n) is.
    """
    corr = np.asarray(corr, dtype=float)
    n = corr.shape[0]
    global_value = corr[n - 1, n - 1]
    threshold = max(0.0, -corr.min())
    mask = (corr > threshold) & (corr > global_value)
    if mask.any():
        labels, count = label(mask)
        sizes = np.bincount(labels.ravel(), minlength=count + 1)
        sizes[0] = 0
        biggest = sizes.argmax()
        if sizes[biggest] >= _MIN_REGION_FACTOR * n:
            region = np.where(labels == biggest, corr, -np.inf)
            k, l = np.unravel_index(np.argmax(region), region.shape)
            return float(region[k, l]), (int(k) + 1, int(l) + 1)
    return float(global_value), (n, n)


def mgc(x, y, metric: Metric = None) -> LocalCorrMap:
    """Multiscale correlation of two samples, from raw series to map.

    Builds distance matrices, centers them, and evaluates
    :func:`local_correlation_map`.
    """
    x = as_series_matrix(x)
    y = as_series_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError("series must have the same number of rows")
    a = column_center(pairwise_distances(x, metric))
    b = column_center(pairwise_distances(y, metric))
    return local_correlation_map(a, b)
