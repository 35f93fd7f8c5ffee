"""Distance matrices, column centering, and global distance covariance/correlation.

The estimators here use column centering: every entry of the raw distance
matrix has 1/(n-1) times its column sum subtracted.  The covariance is the
transposed-product double sum

    dcov(X, Y) = (1/(n(n-1))) * sum_ij A_ij * B_ji

including the diagonal terms, and the correlation normalizes by the geometric
mean of the two self-covariances, with a zero branch whenever that product is
not strictly positive.  The sample correlation may be slightly negative and is
deliberately not clamped, so permutation nulls are undistorted.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from scipy.spatial.distance import cdist

Metric = Optional[Callable[[np.ndarray, np.ndarray], float]]

_SYMMETRY_TOL = 1e-9


def as_series_matrix(x) -> np.ndarray:
    """Coerce a series to a 2-d float array with rows as timesteps.

    1-d input becomes a single-column matrix.  Entries must be finite.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError(f"series must be 1-d or 2-d, got ndim={x.ndim}")
    if not np.isfinite(x).all():
        raise ValueError("series contains non-finite entries")
    return x


def pairwise_distances(x, metric: Metric = None) -> np.ndarray:
    """Compute the n x n matrix of pairwise distances between rows of ``x``.

    Parameters
    ----------
    x : array_like, shape (n, d) or (n,)
        Sample with rows as observations.
    metric : callable, optional
        Pairwise function ``metric(u, v) -> float``.  Defaults to the
        Euclidean distance.  A custom metric must be symmetric, nonnegative,
        and zero on identical points; this is checked on the computed matrix.
        Whether it is of strong negative type (required for the independence
        characterization) is the caller's responsibility.

    Returns
    -------
    ndarray, shape (n, n)
        Symmetric matrix with zero diagonal.
    """
    x = as_series_matrix(x)
    if metric is None:
        return cdist(x, x)
    n = x.shape[0]
    d = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(n):
            d[i, j] = metric(x[i], x[j])
    if not np.isfinite(d).all():
        raise ValueError("metric produced non-finite distances")
    if (d < 0).any():
        raise ValueError("metric produced negative distances")
    if np.abs(np.diag(d)).max() > _SYMMETRY_TOL:
        raise ValueError("metric is nonzero on identical points")
    if np.abs(d - d.T).max() > _SYMMETRY_TOL:
        raise ValueError("metric is not symmetric")
    return d


def column_center(d: np.ndarray) -> np.ndarray:
    """Column center a distance matrix: A_ij = a_ij - (1/(n-1)) * sum_s a_sj.

    Requires n >= 2.  The result generally loses symmetry because each column
    is shifted by its own constant.
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    if n < 2:
        raise ValueError("column centering needs at least 2 samples")
    return d - d.sum(axis=0, keepdims=True) / (n - 1)


def dcov(a: np.ndarray, b: np.ndarray) -> float:
    """Sample distance covariance of two column-centered matrices.

    Computes ``(1/(n(n-1))) * sum_ij a_ij * b_ji`` with the diagonal included.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"centered matrices must share a square shape, got {a.shape} vs {b.shape}")
    n = a.shape[0]
    return float((a * b.T).sum() / (n * (n - 1)))


def dcorr(a: np.ndarray, b: np.ndarray) -> float:
    """Sample distance correlation of two column-centered matrices.

    Returns ``dcov(a, b) / sqrt(dcov(a, a) * dcov(b, b))`` when the
    denominator product is strictly positive and 0.0 otherwise.  Floating
    error can make a self-covariance marginally nonpositive; such cases take
    the zero branch as well.
    """
    num = dcov(a, b)
    den = dcov(a, a) * dcov(b, b)
    if den <= 0.0:
        return 0.0
    return num / np.sqrt(den)


def distance_correlation(x, y, metric: Metric = None) -> float:
    """Distance correlation of two samples, from raw series to statistic.

    Convenience wrapper around :func:`pairwise_distances`,
    :func:`column_center`, and :func:`dcorr`.
    """
    x = as_series_matrix(x)
    y = as_series_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError("series must have the same number of rows")
    a = column_center(pairwise_distances(x, metric))
    b = column_center(pairwise_distances(y, metric))
    return dcorr(a, b)


def distance_to_kernel(d: np.ndarray) -> np.ndarray:
    """Map a distance matrix to the equivalent kernel: max(d) - d."""
    d = np.asarray(d, dtype=float)
    if not np.isfinite(d).all():
        raise ValueError("matrix contains non-finite entries")
    return d.max() - d


def kernel_to_distance(k: np.ndarray) -> np.ndarray:
    """Map a kernel matrix to the equivalent distance: max(k) - k.

    Together with :func:`distance_to_kernel` this realizes the bijection under
    which distance-based and kernel-based permutation tests produce identical
    p-values.
    """
    k = np.asarray(k, dtype=float)
    if not np.isfinite(k).all():
        raise ValueError("matrix contains non-finite entries")
    return k.max() - k
