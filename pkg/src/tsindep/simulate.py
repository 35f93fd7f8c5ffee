"""Generators for the benchmark processes used in the experiments.

Six paired processes, all driven by standard normal innovations:

- ``indep_ar1``: two independent AR(1) series sharing a coefficient phi.
- ``cross_ar1``: each series feeds the other at lag 1 (linear coupling).
- ``nonlin_lag1``: X_t = eps_t * Y_{t-1}, uncorrelated but dependent.
- ``extinct_ar1``: independent AR(1) dynamics whose innovation pairs come
  from the extinct Gaussian distribution, inducing instantaneous nonlinear
  dependence that grows with the extinction rate delta.
- ``cross_ar13``: mutual coupling at lags 1 and 3; with phi3 > phi1 the
  dependence is strongest three steps back.
- ``nonlin_lag3``: X_t = eps_t * Y_{t-3}.

AR recursions start from zero and discard a 200-step burn-in, long enough for
|phi| <= 0.9 transients to die out at double precision.  Every generator is a
deterministic function of its parameters and seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import SamplerError

BURN_IN = 200

PROCESS_KINDS = (
    "indep_ar1",
    "cross_ar1",
    "nonlin_lag1",
    "extinct_ar1",
    "cross_ar13",
    "nonlin_lag3",
)

_MAX_REJECTION_ATTEMPTS = 10**6


@dataclass(frozen=True)
class ProcessSpec:
    """Declarative description of one paired process draw."""

    kind: str
    n: int
    phi: float = 0.5
    phi1: float = 0.1
    phi3: float = 0.8
    delta: float = 0.0
    radius: float = 1.0
    noise_scaling: bool = False
    seed: int | None = None

    def validate(self) -> None:
        if self.kind not in PROCESS_KINDS:
            raise ValueError(f"unknown process kind {self.kind!r}, expected one of {PROCESS_KINDS}")
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.kind in ("indep_ar1", "cross_ar1", "extinct_ar1") and not abs(self.phi) < 1:
            raise ValueError(f"|phi| < 1 required for stationarity, got {self.phi}")
        if self.kind == "cross_ar13" and not abs(self.phi1) + abs(self.phi3) < 1:
            raise ValueError(
                f"|phi1| + |phi3| < 1 required for stationarity, got {self.phi1}, {self.phi3}"
            )
        if self.kind == "extinct_ar1":
            if not 0 <= self.delta < 1:
                raise ValueError(f"delta must be in [0, 1), got {self.delta}")
            if self.radius <= 0:
                raise ValueError(f"radius must be positive, got {self.radius}")


def generate(spec: ProcessSpec) -> tuple[np.ndarray, np.ndarray]:
    """Draw one (x, y) pair of length-n univariate series from ``spec``."""
    spec.validate()
    if spec.kind == "indep_ar1":
        return indep_ar1(spec.n, spec.phi, noise_scaling=spec.noise_scaling, seed=spec.seed)
    if spec.kind == "cross_ar1":
        return cross_ar1(spec.n, spec.phi, seed=spec.seed)
    if spec.kind == "nonlin_lag1":
        return nonlin_lag1(spec.n, seed=spec.seed)
    if spec.kind == "extinct_ar1":
        return extinct_ar1(spec.n, spec.phi, spec.delta, spec.radius, seed=spec.seed)
    if spec.kind == "cross_ar13":
        return cross_ar13(spec.n, spec.phi1, spec.phi3, seed=spec.seed)
    return nonlin_lag3(spec.n, seed=spec.seed)


def _check_ar_coefficient(phi: float) -> None:
    if not abs(phi) < 1:
        raise ValueError(f"|phi| < 1 required for stationarity, got {phi}")


def indep_ar1(n: int, phi: float = 0.5, noise_scaling: bool = False, seed=None):
    """Two independent AR(1) series: X_t = phi*X_{t-1} + eps_t and likewise Y.

    With ``noise_scaling`` the innovation variance is shrunk to 1 - phi^2 so
    the marginal variance stays 1 as phi grows.
    """
    _check_ar_coefficient(phi)
    rng = np.random.default_rng(seed)
    scale = np.sqrt(1 - phi**2) if noise_scaling else 1.0
    total = n + BURN_IN
    eps = rng.normal(scale=scale, size=total)
    eta = rng.normal(scale=scale, size=total)
    x = np.zeros(total)
    y = np.zeros(total)
    for t in range(1, total):
        x[t] = phi * x[t - 1] + eps[t]
        y[t] = phi * y[t - 1] + eta[t]
    return x[BURN_IN:], y[BURN_IN:]


def cross_ar1(n: int, phi: float = 0.5, seed=None):
    """Linearly coupled pair: X_t = phi*Y_{t-1} + eps_t, Y_t = phi*X_{t-1} + eta_t.

    The coupling is purely at lag 1; X_t and Y_t are independent at lag 0.
    """
    _check_ar_coefficient(phi)
    rng = np.random.default_rng(seed)
    total = n + BURN_IN
    eps = rng.normal(size=total)
    eta = rng.normal(size=total)
    x = np.zeros(total)
    y = np.zeros(total)
    for t in range(1, total):
        x[t] = phi * y[t - 1] + eps[t]
        y[t] = phi * x[t - 1] + eta[t]
    return x[BURN_IN:], y[BURN_IN:]


def nonlin_lag1(n: int, seed=None):
    """Multiplicative dependence at lag 1: Y_t = eta_t, X_t = eps_t * Y_{t-1}.

    X and Y are uncorrelated at every lag yet dependent at lag 1.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    total = n + BURN_IN
    eps = rng.normal(size=total)
    y = rng.normal(size=total)
    x = np.zeros(total)
    x[1:] = eps[1:] * y[:-1]
    return x[BURN_IN:], y[BURN_IN:]


def extinct_gaussian_innovations(size: int, delta: float, radius: float, rng=None):
    """Sample innovation pairs from the extinct Gaussian distribution.

    A candidate (eps, eta) of independent standard normals is kept when
    eps^2 + eta^2 > radius or an independent uniform exceeds delta; otherwise
    it is redrawn.  Rejection therefore only thins pairs inside the squared
    radius, at rate delta, leaving positive density everywhere.

    Raises
    ------
    SamplerError
        If any slot is still unfilled after 10^6 attempts.
    """
    if not 0 <= delta < 1:
        raise ValueError(f"delta must be in [0, 1), got {delta}")
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    rng = np.random.default_rng(rng)
    eps = np.empty(size)
    eta = np.empty(size)
    remaining = size
    attempts = 0
    while remaining > 0:
        attempts += 1
        if attempts > _MAX_REJECTION_ATTEMPTS:
            raise SamplerError(
                f"extinct Gaussian sampler exceeded {_MAX_REJECTION_ATTEMPTS} attempts per draw"
            )
        e = rng.normal(size=remaining)
        h = rng.normal(size=remaining)
        u = rng.uniform(size=remaining)
        accept = (e**2 + h**2 > radius) | (u > delta)
        kept = int(accept.sum())
        if kept:
            start = size - remaining
            eps[start : start + kept] = e[accept]
            eta[start : start + kept] = h[accept]
            remaining -= kept
    return eps, eta


def extinct_ar1(n: int, phi: float = 0.2, delta: float = 0.0, radius: float = 1.0, seed=None):
    """Independent AR(1) dynamics with extinct Gaussian innovation pairs."""
    _check_ar_coefficient(phi)
    rng = np.random.default_rng(seed)
    total = n + BURN_IN
    eps, eta = extinct_gaussian_innovations(total, delta, radius, rng)
    x = np.zeros(total)
    y = np.zeros(total)
    for t in range(1, total):
        x[t] = phi * x[t - 1] + eps[t]
        y[t] = phi * y[t - 1] + eta[t]
    return x[BURN_IN:], y[BURN_IN:]


def cross_ar13(n: int, phi1: float = 0.1, phi3: float = 0.8, seed=None):
    """Mutual coupling at lags 1 and 3:

    X_t = phi1*Y_{t-1} + phi3*Y_{t-3} + eps_t and symmetrically for Y.
    """
    if not abs(phi1) + abs(phi3) < 1:
        raise ValueError(f"|phi1| + |phi3| < 1 required for stationarity, got {phi1}, {phi3}")
    rng = np.random.default_rng(seed)
    total = n + BURN_IN
    eps = rng.normal(size=total)
    eta = rng.normal(size=total)
    x = np.zeros(total)
    y = np.zeros(total)
    for t in range(3, total):
        x[t] = phi1 * y[t - 1] + phi3 * y[t - 3] + eps[t]
        y[t] = phi1 * x[t - 1] + phi3 * x[t - 3] + eta[t]
    return x[BURN_IN:], y[BURN_IN:]


def nonlin_lag3(n: int, seed=None):
    """Multiplicative dependence at lag 3: Y_t = eta_t, X_t = eps_t * Y_{t-3}."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    total = n + BURN_IN
    eps = rng.normal(size=total)
    y = rng.normal(size=total)
    x = np.zeros(total)
    x[3:] = eps[3:] * y[:-3]
    return x[BURN_IN:], y[BURN_IN:]
