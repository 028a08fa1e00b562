"""Parametric dependence-function families for ordered bivariate extremes.

Each family describes a finite spectral measure H on [0, 1] whose first
moments both equal 1, through four linked views:

    A(w)      the convex dependence function, A(0) = A(1) = 1 and
              max(w, 1-w) <= A(w) <= 1,
    A'(w)     its derivative, with H(w) = A'(w) + 1,
    h(w)      the density of H (A''), zero outside the family support,
    atoms     point masses of H, at the endpoints and, for the piecewise
              linear s = 1 boundary case, in the interior.

The argument w is the y-fraction: with exponential-scale coordinates
(x, y), the measure function factorises as V(x, y) = (x+y) A(y/(x+y)).
Ordering X < Y forces h(w) = 0 on [0, c] for a boundary constant c, which
is what the restricted family encodes.

Conventions: A'(w) at a kink is the right derivative (so that H stays the
right-continuous measure function of [0, w]); H(1) is the total mass 2.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericError, ParameterError

DEFAULT_QUAD_TOL = 1e-10


# ---------------------------------------------------------------------------
# parameter records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymLogisticParams:
    """Asymmetric logistic family: weights theta1, theta2 and strength s."""

    theta1: float
    theta2: float
    s: float

    def __post_init__(self):
        if not (0.0 <= self.theta1 <= 1.0 and 0.0 <= self.theta2 <= 1.0):
            raise ParameterError("theta1 and theta2 must lie in [0, 1]")
        if not self.s >= 1.0:
            raise ParameterError("dependence strength s must be >= 1")


@dataclass(frozen=True)
class RestrictedLogisticParams:
    """Logistic family with spectral density restricted to (c, 1), c < 1/2."""

    c: float
    s: float

    def __post_init__(self):
        if not (0.0 <= self.c < 0.5):
            raise ParameterError("ordering boundary c must lie in [0, 1/2)")
        if not self.s >= 1.0:
            raise ParameterError("dependence strength s must be >= 1")


@dataclass(frozen=True)
class UpperRestrictedParams:
    """Mirror family with spectral density restricted to (0, c), c > 1/2."""

    c: float
    s: float

    def __post_init__(self):
        if not (0.5 < self.c <= 1.0):
            raise ParameterError("upper boundary c must lie in (1/2, 1]")
        if not self.s >= 1.0:
            raise ParameterError("dependence strength s must be >= 1")


@dataclass(frozen=True)
class IntervalRestrictedParams:
    """Spectral density restricted to (c1, c2) with c1 < 1/2 < c2."""

    c1: float
    c2: float
    s: float

    def __post_init__(self):
        if not (0.0 <= self.c1 < 0.5 < self.c2 <= 1.0):
            raise ParameterError("need 0 <= c1 < 1/2 < c2 <= 1")
        if not self.s >= 1.0:
            raise ParameterError("dependence strength s must be >= 1")


@dataclass(frozen=True)
class NadarajahGeneralParams:
    """General logistic-type spectral density on (a, b) with endpoint atoms."""

    a: float
    b: float
    gamma1: float
    gamma2: float
    s: float

    def __post_init__(self):
        if not (0.0 <= self.a < 0.5 <= self.b <= 1.0):
            raise ParameterError("need 0 <= a < 1/2 <= b <= 1")
        if not self.s > 1.0:
            raise ParameterError("the general density requires s > 1")
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ParameterError("atom masses must be nonnegative")
        if self.gamma1 + self.gamma2 >= 2.0:
            raise ParameterError("atom masses must sum below 2")
        span = self.b - self.a
        if self.gamma2 > (1.0 - 2.0 * self.a) / span + 1e-12:
            raise ParameterError("gamma2 exceeds (1-2a)/(b-a)")
        if self.gamma1 > (2.0 * self.b - 1.0) / span + 1e-12:
            raise ParameterError("gamma1 exceeds (2b-1)/(b-a)")

    @property
    def alpha(self):
        return 2.0 * self.b - 1.0

    @property
    def beta(self):
        return 1.0 - 2.0 * self.a


@dataclass(frozen=True)
class DependenceEval:
    """All four views of a family at one point, plus endpoint atoms."""

    a_val: float
    a_prime: float
    h_val: float
    H_val: float
    atom0: float
    atom1: float


def _array_method(f):
    """Accept scalars or arrays; return float for scalar input."""

    @functools.wraps(f)
    def wrapper(self, w):
        arr = np.asarray(w, dtype=float)
        scalar = arr.ndim == 0
        out = f(self, np.atleast_1d(arr))
        return float(out[0]) if scalar else out

    return wrapper


def _check_unit_interval(w):
    arr = np.asarray(w, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("fraction must lie in [0, 1]")


# ---------------------------------------------------------------------------
# internal: asymmetric-logistic building blocks (the affine families reuse
# these in transformed coordinates)
# ---------------------------------------------------------------------------

def _alog_a(w, t1, t2, s):
    return (1 - t1) * w + (1 - t2) * (1 - w) + ((t1 * w) ** s + (t2 * (1 - w)) ** s) ** (1 / s)


def _alog_a_prime(w, t1, t2, s):
    u = (t1 * w) ** s + (t2 * (1 - w)) ** s
    pw = t1 ** s * w ** (s - 1) - t2 ** s * (1 - w) ** (s - 1)
    return (1 - t1) - (1 - t2) + pw * u ** (1 / s - 1)


def _alog_h(w, t1, t2, s):
    return (
        (s - 1) * (t1 * t2) ** s * (w * (1 - w)) ** (s - 2)
        * ((t1 * w) ** s + (t2 * (1 - w)) ** s) ** (1 / s - 2)
    )


def _alog_H(w, t1, t2, s):
    u = t1 ** s * w ** s + t2 ** s * (1 - w) ** s
    pw = t1 ** s * w ** (s - 1) - t2 ** s * (1 - w) ** (s - 1)
    return 1 - t1 + t2 + pw * u ** (1 / s - 1)


class DependenceModel:
    """Shared behaviour of the parametric families."""

    params = None

    def a(self, w):
        raise NotImplementedError

    def a_prime(self, w):
        raise NotImplementedError

    def h(self, w):
        raise NotImplementedError

    def H(self, w):
        raise NotImplementedError

    def support(self):
        """Open interval carrying the continuous density."""
        raise NotImplementedError

    def point_masses(self):
        """All atoms of H as (location, mass) pairs, endpoints included."""
        raise NotImplementedError

    def h_scalar(self, w):
        """Scalar density evaluation; hot path for quadrature callbacks."""
        return float(self.h(w))

    def breakpoints(self):
        """Interior locations where the integrands are non-smooth."""
        lo, hi = self.support()
        pts = {lo, hi} | {q for q, _ in self.point_masses()}
        return sorted(p for p in pts if 0.0 < p < 1.0)

    def endpoint_atoms(self):
        a0 = a1 = 0.0
        for q, m in self.point_masses():
            if q == 0.0:
                a0 += m
            elif q == 1.0:
                a1 += m
        return a0, a1

    def ordering_floor(self):
        """Largest w below which the measure has no mass at all."""
        return 0.0

    def evaluate(self, w):
        """DependenceEval at a single fraction w in [0, 1]."""
        _check_unit_interval(w)
        a0, a1 = self.endpoint_atoms()
        return DependenceEval(
            a_val=self.a(w),
            a_prime=self.a_prime(w),
            h_val=self.h(w),
            H_val=self.H(w),
            atom0=a0,
            atom1=a1,
        )


class AsymLogisticModel(DependenceModel):
    """Asymmetric logistic dependence.

    At s = 1, or when either weight vanishes, the continuous part
    degenerates and the family collapses to independence (A == 1 with unit
    atoms at both endpoints).
    """

    def __init__(self, params: AsymLogisticParams):
        if not isinstance(params, AsymLogisticParams):
            params = AsymLogisticParams(*params)
        self.params = params
        self._degenerate = params.s == 1.0 or params.theta1 == 0.0 or params.theta2 == 0.0

    @_array_method
    def a(self, w):
        p = self.params
        if self._degenerate:
            return np.ones_like(w)
        out = _alog_a(w, p.theta1, p.theta2, p.s)
        out[w == 0.0] = 1.0
        out[w == 1.0] = 1.0
        return out

    @_array_method
    def a_prime(self, w):
        p = self.params
        if self._degenerate:
            return np.zeros_like(w)
        return _alog_a_prime(w, p.theta1, p.theta2, p.s)

    @_array_method
    def h(self, w):
        p = self.params
        if self._degenerate:
            return np.zeros_like(w)
        out = np.zeros_like(w)
        inner = (w > 0.0) & (w < 1.0)
        out[inner] = _alog_h(w[inner], p.theta1, p.theta2, p.s)
        return out

    @_array_method
    def H(self, w):
        p = self.params
        if self._degenerate:
            out = np.ones_like(w)
        else:
            out = _alog_H(w, p.theta1, p.theta2, p.s)
        out[w >= 1.0] = 2.0
        return out

    def support(self):
        return (0.0, 1.0)

    def point_masses(self):
        p = self.params
        if self._degenerate:
            return [(0.0, 1.0), (1.0, 1.0)]
        masses = []
        if p.theta1 < 1.0:
            masses.append((0.0, 1.0 - p.theta1))
        if p.theta2 < 1.0:
            masses.append((1.0, 1.0 - p.theta2))
        return masses


class RestrictedLogisticModel(DependenceModel):
    """Logistic dependence whose density vanishes on [0, c], encoding X < Y.

    Equals the asymmetric logistic with theta1 = 1, theta2 = 1 - 2c mapped
    onto (c, 1) by w = (omega - c)/(1 - c); densities pick up the Jacobian
    1/(1 - c) per application of the map.
    """

    def __init__(self, params: RestrictedLogisticParams):
        if not isinstance(params, RestrictedLogisticParams):
            params = RestrictedLogisticParams(*params)
        self.params = params

    @_array_method
    def a(self, w):
        c, s = self.params.c, self.params.s
        K = 1.0 - 2.0 * c
        out = np.empty_like(w)
        lo = w <= c
        out[lo] = 1.0 - w[lo]
        hi = ~lo
        wh = w[hi]
        out[hi] = (c * (1.0 - wh) + ((wh - c) ** s + K ** s * (1.0 - wh) ** s) ** (1.0 / s)) / (1.0 - c)
        return out

    @_array_method
    def a_prime(self, w):
        c, s = self.params.c, self.params.s
        K = 1.0 - 2.0 * c
        out = np.full_like(w, -1.0)
        hi = w >= c if s == 1.0 else w > c
        wh = w[hi]
        u = (wh - c) ** s + K ** s * (1.0 - wh) ** s
        pw = (wh - c) ** (s - 1.0) - K ** s * (1.0 - wh) ** (s - 1.0)
        out[hi] = (-c + pw * u ** (1.0 / s - 1.0)) / (1.0 - c)
        return out

    @_array_method
    def h(self, w):
        c, s = self.params.c, self.params.s
        out = np.zeros_like(w)
        if s == 1.0:
            return out
        K = 1.0 - 2.0 * c
        inner = (w > c) & (w < 1.0)
        wi = w[inner]
        with np.errstate(divide="ignore"):
            out[inner] = (
                (s - 1.0) * (1.0 - c) * K ** s
                * ((wi - c) * (1.0 - wi)) ** (s - 2.0)
                * ((wi - c) ** s + K ** s * (1.0 - wi) ** s) ** (1.0 / s - 2.0)
            )
        return out

    @_array_method
    def H(self, w):
        c, s = self.params.c, self.params.s
        out = np.zeros_like(w)
        if s == 1.0:
            out[w >= c] = 1.0 / (1.0 - c)
        else:
            hi = (w >= c) & (w < 1.0)
            wt = (w[hi] - c) / (1.0 - c)
            out[hi] = _alog_H(wt, 1.0, 1.0 - 2.0 * c, s) / (1.0 - c)
        out[w >= 1.0] = 2.0
        return out

    def support(self):
        return (self.params.c, 1.0)

    def point_masses(self):
        c, s = self.params.c, self.params.s
        if s > 1.0:
            return []
        # s = 1: all mass sits in two atoms, at the boundary and at 1.
        return [(c, 1.0 / (1.0 - c)), (1.0, (1.0 - 2.0 * c) / (1.0 - c))]

    def h_scalar(self, w):
        c, s = self.params.c, self.params.s
        if s == 1.0 or w <= c or w >= 1.0:
            return 0.0
        K = 1.0 - 2.0 * c
        u = (w - c) ** s + (K * (1.0 - w)) ** s
        return ((s - 1.0) * (1.0 - c) * K ** s
                * ((w - c) * (1.0 - w)) ** (s - 2.0) * u ** (1.0 / s - 2.0))

    def ordering_floor(self):
        return self.params.c


class UpperRestrictedModel(DependenceModel):
    """Mirror image of the restricted family: density on (0, c), c > 1/2."""

    def __init__(self, params: UpperRestrictedParams):
        if not isinstance(params, UpperRestrictedParams):
            params = UpperRestrictedParams(*params)
        self.params = params

    @_array_method
    def a(self, w):
        c, s = self.params.c, self.params.s
        al = 2.0 * c - 1.0
        out = np.empty_like(w)
        hi = w > c
        out[hi] = w[hi]
        lo = ~hi
        wl = w[lo]
        out[lo] = ((1.0 - c) * wl + (al ** s * wl ** s + (c - wl) ** s) ** (1.0 / s)) / c
        return out

    @_array_method
    def a_prime(self, w):
        c, s = self.params.c, self.params.s
        al = 2.0 * c - 1.0
        out = np.ones_like(w)
        lo = w < c
        wl = w[lo]
        u = al ** s * wl ** s + (c - wl) ** s
        pw = al ** s * wl ** (s - 1.0) - (c - wl) ** (s - 1.0)
        out[lo] = ((1.0 - c) + pw * u ** (1.0 / s - 1.0)) / c
        return out

    @_array_method
    def h(self, w):
        c, s = self.params.c, self.params.s
        out = np.zeros_like(w)
        if s == 1.0:
            return out
        al = 2.0 * c - 1.0
        inner = (w > 0.0) & (w < c)
        wi = w[inner]
        with np.errstate(divide="ignore"):
            out[inner] = (
                (s - 1.0) * c * al ** s
                * (wi * (c - wi)) ** (s - 2.0)
                * (al ** s * wi ** s + (c - wi) ** s) ** (1.0 / s - 2.0)
            )
        return out

    @_array_method
    def H(self, w):
        c, s = self.params.c, self.params.s
        al = 2.0 * c - 1.0
        out = np.empty_like(w)
        if s == 1.0:
            out[:] = al / c
        else:
            lo = w < c
            out[lo] = (_alog_H(w[lo] / c, al, 1.0, s) - (1.0 - al)) / c
        out[w >= c] = 2.0
        return out

    def support(self):
        return (0.0, self.params.c)

    def point_masses(self):
        c, s = self.params.c, self.params.s
        if s > 1.0:
            return []
        return [(0.0, (2.0 * c - 1.0) / c), (c, 1.0 / c)]


class IntervalRestrictedModel(DependenceModel):
    """Density confined to (c1, c2); linear tails 1 - w and w outside."""

    def __init__(self, params: IntervalRestrictedParams):
        if not isinstance(params, IntervalRestrictedParams):
            params = IntervalRestrictedParams(*params)
        self.params = params

    def _alpha_beta(self):
        p = self.params
        return 2.0 * p.c2 - 1.0, 1.0 - 2.0 * p.c1

    @_array_method
    def a(self, w):
        p = self.params
        c1, c2, s = p.c1, p.c2, p.s
        al, be = self._alpha_beta()
        span = c2 - c1
        out = np.empty_like(w)
        lo = w < c1
        hi = w > c2
        mid = ~(lo | hi)
        out[lo] = 1.0 - w[lo]
        out[hi] = w[hi]
        wm = w[mid]
        bracket = (al ** s * (wm - c1) ** s + be ** s * (c2 - wm) ** s) ** (1.0 / s)
        out[mid] = ((1.0 - c2) * (wm - c1) + c1 * (c2 - wm) + bracket) / span
        return out

    @_array_method
    def a_prime(self, w):
        p = self.params
        c1, c2, s = p.c1, p.c2, p.s
        al, be = self._alpha_beta()
        span = c2 - c1
        out = np.empty_like(w)
        lo = w < c1
        hi = w >= c2
        mid = ~(lo | hi)
        out[lo] = -1.0
        out[hi] = 1.0
        wm = w[mid]
        u = al ** s * (wm - c1) ** s + be ** s * (c2 - wm) ** s
        pw = al ** s * (wm - c1) ** (s - 1.0) - be ** s * (c2 - wm) ** (s - 1.0)
        out[mid] = ((1.0 - c2) - c1 + pw * u ** (1.0 / s - 1.0)) / span
        return out

    @_array_method
    def h(self, w):
        p = self.params
        c1, c2, s = p.c1, p.c2, p.s
        out = np.zeros_like(w)
        if s == 1.0:
            return out
        al, be = self._alpha_beta()
        inner = (w > c1) & (w < c2)
        wi = w[inner]
        with np.errstate(divide="ignore"):
            out[inner] = (
                (s - 1.0) * (c2 - c1) * (al * be) ** s
                * ((wi - c1) * (c2 - wi)) ** (s - 2.0)
                * (al ** s * (wi - c1) ** s + be ** s * (c2 - wi) ** s) ** (1.0 / s - 2.0)
            )
        return out

    @_array_method
    def H(self, w):
        p = self.params
        c1, c2, s = p.c1, p.c2, p.s
        al, be = self._alpha_beta()
        span = c2 - c1
        out = np.zeros_like(w)
        if s == 1.0:
            out[w >= c1] = (2.0 * c2 - 1.0) / span
        else:
            mid = (w >= c1) & (w < c2)
            out[mid] = (_alog_H((w[mid] - c1) / span, al, be, s) - (1.0 - al)) / span
        out[w >= c2] = 2.0
        return out

    def support(self):
        return (self.params.c1, self.params.c2)

    def point_masses(self):
        p = self.params
        if p.s > 1.0:
            return []
        span = p.c2 - p.c1
        return [(p.c1, (2.0 * p.c2 - 1.0) / span), (p.c2, (1.0 - 2.0 * p.c1) / span)]

    def ordering_floor(self):
        return self.params.c1


class PointMassModel(DependenceModel):
    """Purely atomic spectral measure, for reference cases.

    independence() has unit atoms at 0 and 1 (A == 1); perfect dependence
    is a single atom of mass 2 at 1/2 (A == max(w, 1-w)).
    """

    def __init__(self, masses):
        masses = [(float(q), float(m)) for q, m in masses]
        for q, m in masses:
            if not (0.0 <= q <= 1.0) or m < 0.0:
                raise ParameterError("atoms need locations in [0,1] and mass >= 0")
        self.masses = masses

    @classmethod
    def independence(cls):
        return cls([(0.0, 1.0), (1.0, 1.0)])

    @classmethod
    def perfect_dependence(cls):
        return cls([(0.5, 2.0)])

    @_array_method
    def a(self, w):
        out = np.zeros_like(w)
        for q, m in self.masses:
            out += m * np.maximum((1.0 - w) * q, w * (1.0 - q))
        return out

    @_array_method
    def a_prime(self, w):
        out = np.zeros_like(w)
        for q, m in self.masses:
            out += m * np.where(w >= q, 1.0 - q, -q)
        return out

    @_array_method
    def h(self, w):
        return np.zeros_like(w)

    @_array_method
    def H(self, w):
        out = np.zeros_like(w)
        for q, m in self.masses:
            out += m * (w >= q)
        return out

    def support(self):
        return (0.0, 0.0)

    def point_masses(self):
        return list(self.masses)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def eval_asym(w, params: AsymLogisticParams) -> DependenceEval:
    """Asymmetric-logistic views at fraction w."""
    return AsymLogisticModel(params).evaluate(w)


def eval_restricted(w, params: RestrictedLogisticParams) -> DependenceEval:
    """Restricted-logistic views at fraction w."""
    return RestrictedLogisticModel(params).evaluate(w)


def eval_upper(w, params: UpperRestrictedParams) -> DependenceEval:
    """Upper-restricted views at fraction w."""
    return UpperRestrictedModel(params).evaluate(w)


def eval_interval(w, params: IntervalRestrictedParams) -> DependenceEval:
    """Interval-restricted views at fraction w."""
    return IntervalRestrictedModel(params).evaluate(w)


def nadarajah_density(w, params: NadarajahGeneralParams):
    """General logistic-type spectral density on (a, b), zero elsewhere.

    With a = 0, b = 1 this is the asymmetric-logistic density at
    theta1 = theta2 = 1; with a = c, b = 1 it is the restricted density.
    """
    _check_unit_interval(w)
    arr = np.asarray(w, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    p = params
    al, be = p.alpha, p.beta
    out = np.zeros_like(arr)
    inner = (arr > p.a) & (arr < p.b)
    wi = arr[inner]
    with np.errstate(divide="ignore"):
        out[inner] = (
            (p.s - 1.0) * (p.b - p.a) * (al * be) ** p.s
            * ((wi - p.a) * (p.b - wi)) ** (p.s - 2.0)
            * (al ** p.s * (wi - p.a) ** p.s + be ** p.s * (p.b - wi) ** p.s) ** (1.0 / p.s - 2.0)
        )
    return float(out[0]) if scalar else out


def a_numeric_oracle(w, h, atom0=0.0, atom1=0.0, *, interior_atoms=(),
                     breakpoints=(), tol=DEFAULT_QUAD_TOL):
    """Brute-force A(w) by adaptive quadrature of the spectral integral.

    Integrates max{(1-w) q, w (1-q)} against the density h over [0, 1],
    splitting at the kink q = w and at any supplied support breakpoints,
    then adds the atom contributions.  Raises NumericError when the
    quadrature error estimate exceeds the requested tolerance.
    """
    _check_unit_interval(w)
    w = float(w)

    def integrand(q):
        return max((1.0 - w) * q, w * (1.0 - q)) * h(q)

    pts = sorted({p for p in list(breakpoints) + [w] if 0.0 < p < 1.0})
    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore")
        value, err = quad(integrand, 0.0, 1.0, points=pts or None,
                          epsabs=tol, epsrel=1e-12, limit=400)
    if err > max(100.0 * tol, 1e-13 * abs(value)):
        raise NumericError("spectral quadrature did not converge", achieved_tol=err)
    value += atom0 * w + atom1 * (1.0 - w)
    for q, m in interior_atoms:
        value += m * max((1.0 - w) * q, w * (1.0 - q))
    return value


def a_numeric_from_model(w, model: DependenceModel, tol=DEFAULT_QUAD_TOL):
    """a_numeric_oracle wired to a family's density, atoms and breakpoints."""
    interior = [(q, m) for q, m in model.point_masses() if 0.0 < q < 1.0]
    atom0, atom1 = model.endpoint_atoms()
    return a_numeric_oracle(w, model.h, atom0, atom1, interior_atoms=interior,
                            breakpoints=model.breakpoints(), tol=tol)


@dataclass
class ValidationCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class ValidationReport:
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        return [
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}"
            for c in self.checks
        ]


def validate_dependence(model: DependenceModel, n=101,
                        moment_tol=1e-8) -> ValidationReport:
    """Check the defining properties of a dependence family on a grid.

    Verifies the endpoint values A(0) = A(1) = 1, the envelope
    max(w, 1-w) <= A <= 1, discrete convexity, and both first moments of
    the spectral measure (by quadrature plus atoms).  Failures are
    reported, not raised.
    """
    if n < 3:
        raise ParameterError("grid size must be at least 3")
    grid = np.linspace(0.0, 1.0, n)
    avals = np.asarray(model.a(grid), dtype=float)
    checks = []

    end_err = max(abs(avals[0] - 1.0), abs(avals[-1] - 1.0))
    checks.append(ValidationCheck(
        "endpoints", end_err <= 1e-12, f"max |A(0/1) - 1| = {end_err:.3e}"))

    lower = np.maximum(grid, 1.0 - grid)
    bound_err = max(float(np.max(lower - avals)), float(np.max(avals - 1.0)))
    checks.append(ValidationCheck(
        "bounds", bound_err <= 1e-12,
        f"worst envelope violation = {bound_err:.3e}"))

    convex_gap = float(np.min(avals[:-2] + avals[2:] - 2.0 * avals[1:-1]))
    checks.append(ValidationCheck(
        "convexity", convex_gap >= -1e-12,
        f"min discrete second difference = {convex_gap:.3e}"))

    interior = [(q, m) for q, m in model.point_masses() if 0.0 < q < 1.0]
    atom0, atom1 = model.endpoint_atoms()
    lo, hi = model.support()
    pts = model.breakpoints()
    for name, weight, atom_part in (
        ("moment_q", lambda q: q, atom1 + sum(q * m for q, m in interior)),
        ("moment_1mq", lambda q: 1.0 - q,
         atom0 + sum((1.0 - q) * m for q, m in interior)),
    ):
        if hi > lo:
            with np.errstate(all="ignore"), warnings.catch_warnings():
                warnings.simplefilter("ignore")
                integral, _ = quad(lambda q: weight(q) * model.h_scalar(q),
                                   lo, hi,
                                   points=[p for p in pts if lo < p < hi] or None,
                                   epsabs=1e-12, epsrel=1e-12, limit=400)
        else:
            integral = 0.0
        total = integral + atom_part
        checks.append(ValidationCheck(
            name, abs(total - 1.0) <= moment_tol,
            f"integral + atoms = {total:.12f}"))

    return ValidationReport(checks)


FAMILY_BUILDERS = {
    "asymmetric": lambda **kw: AsymLogisticModel(
        AsymLogisticParams(kw["theta1"], kw["theta2"], kw["s"])),
    "restricted": lambda **kw: RestrictedLogisticModel(
        RestrictedLogisticParams(kw["c"], kw["s"])),
    "upper": lambda **kw: UpperRestrictedModel(
        UpperRestrictedParams(kw["c"], kw["s"])),
    "interval": lambda **kw: IntervalRestrictedModel(
        IntervalRestrictedParams(kw["c1"], kw["c2"], kw["s"])),
}


def make_model(family, **kwargs) -> DependenceModel:
    """Build a family by name; unknown names raise ParameterError."""
    try:
        builder = FAMILY_BUILDERS[family]
    except KeyError:
        raise ParameterError(f"unknown dependence family {family!r}") from None
    try:
        return builder(**kwargs)
    except KeyError as exc:
        raise ParameterError(f"family {family!r} needs parameter {exc}") from None
