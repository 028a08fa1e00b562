"""Marginal extreme-value laws for minima and their scale transforms.

A margin is parametrised by location mu, scale sigma > 0 and shape xi.  Its
survival function is Pr(Z > z) = exp(-e(z)) where

    e(z) = [1 - xi * (z - mu) / sigma]_+ ** (-1/xi)

is the transform to the standard exponential scale (e(Z) ~ Exp(1) under the
model).  xi = 0 is the Gumbel-type limit e(z) = exp((z - mu) / sigma).  The
Frechet scale is the reciprocal 1/e.

Location trends over time are handled by ``TrendSpec``; every operation in
this module is trend-agnostic and works with an already-resolved mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParameterError

# |xi| below this is evaluated through the Gumbel-limit branch to avoid
# catastrophic cancellation in (1 - xi*u)**(-1/xi).
XI_ZERO_TOL = 1e-8


@dataclass(frozen=True)
class GevmParams:
    """One marginal law for minima: location, scale, shape."""

    mu: float
    sigma: float
    xi: float = 0.0

    def __post_init__(self):
        if not (self.sigma > 0.0) or not math.isfinite(self.sigma):
            raise ParameterError(f"sigma must be positive, got {self.sigma}")
        if not (math.isfinite(self.mu) and math.isfinite(self.xi)):
            raise ParameterError("mu and xi must be finite")

    @property
    def is_gumbel(self):
        return abs(self.xi) < XI_ZERO_TOL

    def upper_endpoint(self):
        """Upper support endpoint (inf when xi <= 0)."""
        if self.xi > XI_ZERO_TOL:
            return self.mu + self.sigma / self.xi
        return math.inf

    def lower_endpoint(self):
        """Lower support endpoint (-inf when xi >= 0)."""
        if self.xi < -XI_ZERO_TOL:
            return self.mu + self.sigma / self.xi
        return -math.inf


@dataclass(frozen=True)
class TrendSpec:
    """Time trend for the location parameter of a margin.

    kind is one of "constant", "linear" (mu(t) = a + b*t) or "tabulated"
    (an explicit vector over the observed times, in order).
    """

    kind: str
    a: float = 0.0
    b: float = 0.0
    values: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.kind not in ("constant", "linear", "tabulated"):
            raise ParameterError(f"unknown trend kind {self.kind!r}")
        if self.kind == "tabulated":
            if self.values is None:
                raise ParameterError("tabulated trend requires a value vector")
            object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    @classmethod
    def constant(cls, a):
        return cls(kind="constant", a=float(a))

    @classmethod
    def linear(cls, a, b):
        return cls(kind="linear", a=float(a), b=float(b))

    @classmethod
    def tabulated(cls, values):
        return cls(kind="tabulated", values=np.asarray(values, dtype=float))

    def resolve(self, times):
        """Return mu(t) for every observation time, as an array."""
        times = np.asarray(times, dtype=float)
        if self.kind == "constant":
            return np.full(times.shape, self.a)
        if self.kind == "linear":
            return self.a + self.b * times
        if len(self.values) != len(times):
            raise ParameterError(
                f"tabulated trend has {len(self.values)} values for "
                f"{len(times)} observation times"
            )
        return self.values.copy()


def _split_scalar(z):
    z = np.asarray(z, dtype=float)
    return z.ndim == 0, np.atleast_1d(z)


def gevm_survival(z, p: GevmParams):
    """Survival Pr(Z > z).

    Outside the support the value clamps to 0 (above an upper endpoint) or
    1 (below a lower endpoint); this keeps the function monotone on all of
    the real line.
    """
    scalar, z = _split_scalar(z)
    u = (z - p.mu) / p.sigma
    if p.is_gumbel:
        out = np.exp(-np.exp(u))
    else:
        bracket = 1.0 - p.xi * u
        out = np.empty_like(u)
        ok = bracket > 0.0
        with np.errstate(over="ignore"):
            out[ok] = np.exp(-np.exp(-np.log1p(-p.xi * u[ok]) / p.xi))
        out[~ok] = 0.0 if p.xi > 0 else 1.0
    return float(out[0]) if scalar else out


def exp_scale(z, p: GevmParams):
    """Transform a data value to the standard exponential scale.

    Strictly increasing on the support; gevm_survival(z, p) == exp(-result).
    Raises DomainError for z outside the open support (silent clamping
    would corrupt likelihoods).
    """
    scalar, z = _split_scalar(z)
    u = (z - p.mu) / p.sigma
    if p.is_gumbel:
        out = np.exp(u)
    else:
        bracket = 1.0 - p.xi * u
        if np.any(bracket <= 0.0):
            raise DomainError("value outside the margin support")
        out = np.exp(-np.log1p(-p.xi * u) / p.xi)
    return float(out[0]) if scalar else out


def exp_scale_inverse(e, p: GevmParams):
    """Data value whose exponential-scale transform is e (> 0)."""
    scalar, e = _split_scalar(e)
    if np.any(e <= 0.0) or np.any(~np.isfinite(e)):
        raise DomainError("exponential-scale values must be positive and finite")
    loge = np.log(e)
    if p.is_gumbel:
        out = p.mu + p.sigma * loge
    else:
        # z = mu + (sigma/xi) * (1 - e**(-xi)), written via expm1 so the
        # xi -> 0 limit is smooth.
        out = p.mu - p.sigma * np.expm1(-p.xi * loge) / p.xi
    return float(out[0]) if scalar else out


def exp_scale_log_jacobian(e, p: GevmParams):
    """log de/dz expressed through e itself: (1 + xi) log e - log sigma."""
    scalar, e = _split_scalar(e)
    if np.any(e <= 0.0):
        raise DomainError("exponential-scale values must be positive")
    out = (1.0 + p.xi) * np.log(e) - math.log(p.sigma)
    return float(out[0]) if scalar else out


def frechet_scale(e):
    """Reciprocal map between exponential and Frechet scales (an involution)."""
    scalar, e = _split_scalar(e)
    if np.any(e <= 0.0):
        raise DomainError("scale values must be positive")
    out = 1.0 / e
    return float(out[0]) if scalar else out


def resolve_mu(p: GevmParams, trend: TrendSpec | None, times):
    """mu(t) over the observation times; falls back to the constant p.mu."""
    if trend is None:
        return np.full(np.asarray(times, dtype=float).shape, p.mu)
    return trend.resolve(times)
