"""Seminorms and a-priori error bounds for truncated Legendre expansions.

All bounds are evaluated in log space so that large degrees do not overflow
the Gamma functions. A bound is only returned where its hypotheses hold;
otherwise :class:`~fraclegendre.errors.BoundNotStated` is raised.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import optimize

from .errors import BoundNotStated, DomainError, HypothesisViolated, InsufficientRegularity
from .fraccalc import (
    BVSamples,
    caputo_derivative,
    caputo_limit,
    caputo_order,
    endpoint_caputo_coefficients,
    endpoint_caputo_eval,
    total_variation,
)
from .functions import AbsPower, EndpointPower, InteriorPlusPower, RegularityProfile, falling
from .quadrature import integrate

__all__ = [
    "KINDS",
    "BoundCurve",
    "WeightedNorm",
    "seminorm_interior",
    "seminorm_interior_numeric",
    "seminorm_endpoint",
    "seminorm_endpoint_numeric",
    "interior_bounds",
    "endpoint_bounds",
    "absx_pointwise_bounds",
    "coeff_decay_bound",
    "bound_value",
    "bound_curve",
]

log = logging.getLogger(__name__)

KINDS = (
    "linf_interior",
    "weighted_linf_interior",
    "l2_interior",
    "linf_endpoint",
    "l2_endpoint",
    "absx_at_zero",
    "absx_at_pm1",
    "coeff_decay",
)

_LOG_PI = math.log(math.pi)
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class WeightedNorm:
    """The weight ``(1 - x^2)^{1/4}`` of the weighted maximum norm."""

    weight_exponent: float = 0.25

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip(1.0 - x * x, 0.0, 1.0) ** self.weight_exponent


@dataclass(frozen=True)
class BoundCurve:
    """Values of one bound over a set of degrees."""

    kind: str
    profile: RegularityProfile
    values: dict = field(default_factory=dict)

    def to_csv(self, stream, header=True):
        """Write ``N,bound,kind,mu,k,m,seminorm`` rows."""
        w = csv.writer(stream, lineterminator="\n")
        if header:
            w.writerow(["N", "bound", "kind", "mu", "k", "m", "seminorm"])
        p = self.profile
        for N in sorted(self.values):
            w.writerow([N, repr(float(self.values[N])), self.kind, p.mu, p.k, p.m, repr(float(p.seminorm))])


def _pure_power_caputo(mu_u, mu, length):
    """TV on a side of length ``length`` and base-point limit of the Caputo derivative of a pure power.

    For ``u = (t - theta)^{mu_u}`` the Caputo derivative of order ``mu`` is
    ``Gamma(mu_u+1)/Gamma(mu_u-mu+1) (t-theta)^{mu_u-mu}``.
    """
    if mu > mu_u:
        raise HypothesisViolated("Caputo derivative is unbounded at the singular point")
    c = math.gamma(mu_u + 1.0) / math.gamma(mu_u - mu + 1.0)
    if mu == mu_u:
        return 0.0, c
    return c * length ** (mu_u - mu), 0.0


def _integer_jump_tv(u, k):
    """Total variation of ``u^{(k)}`` over [-1, 1] for the model functions."""
    if isinstance(u, InteriorPlusPower):
        f = falling(u.mu, k)
        if u.mu == k:
            return abs(f)
        if u.mu < k:
            raise HypothesisViolated("k-th derivative is unbounded")
        return abs(f) * (1.0 - u.theta) ** (u.mu - k)
    if isinstance(u, AbsPower):
        f = falling(u.mu, k)
        if u.mu == k:
            return abs(f) * abs(1.0 - (-1.0) ** k)
        if u.mu < k:
            raise HypothesisViolated("k-th derivative is unbounded")
        return 2.0 * abs(f)
    raise InsufficientRegularity(f"no analytic total variation for {type(u).__name__}")


def seminorm_interior(u, k=None, mu=None, theta=None):
    """Interior seminorm ``U_theta^{(mu)}``.

    Sum of the total variations of the left- and right-sided Caputo
    derivatives based at ``theta`` over ``[theta, 1]`` and ``[-1, theta]``
    plus the absolute values of their one-sided limits at ``theta``. For
    integer ``mu = k`` this is the total variation of ``u^{(k)}`` over
    ``[-1, 1]``.

    Analytic for ``(x - theta)_+^mu`` and ``|x|^mu``; other functions use
    :func:`seminorm_interior_numeric`.
    """
    if mu is None:
        mu = u.mu
    if k is None:
        k = caputo_order(mu)
    if not k - 1 < mu <= k:
        raise DomainError(f"mu must lie in (k-1, k], got k={k}, mu={mu}")
    if isinstance(u, EndpointPower):
        raise DomainError("use seminorm_endpoint for endpoint singularities")
    if isinstance(u, InteriorPlusPower):
        if theta is not None and theta != u.theta:
            raise DomainError("theta must match the singular point of the function")
        if mu == k:
            return _integer_jump_tv(u, k)
        tv, lim = _pure_power_caputo(u.mu, mu, 1.0 - u.theta)
        return tv + abs(lim)
    if isinstance(u, AbsPower):
        if theta not in (None, 0.0):
            raise DomainError("theta must be 0 for |x|^mu")
        if mu == k:
            return _integer_jump_tv(u, k)
        tv, lim = _pure_power_caputo(u.mu, mu, 1.0)
        return 2.0 * (tv + abs(lim))
    if theta is None:
        raise InsufficientRegularity("theta is required for functions without an analytic seminorm")
    return seminorm_interior_numeric(u, k, mu, theta)


def _graded(a, b, points, toward):
    s = np.linspace(0.0, 1.0, points + 1)[1:]
    g = s**3
    return a + (b - a) * g if toward == "a" else b - (b - a) * g


def _side_tv(u, mu, theta, side, points):
    if side == "left":
        t = np.sort(_graded(theta, 1.0, points, "a"))
    else:
        t = np.sort(_graded(-1.0, theta, points, "b"))
    vals = np.array([caputo_derivative(u, theta, mu, side, float(x)) for x in t])
    lim = caputo_limit(u, theta, mu, side)
    if not lim.is_finite:
        raise HypothesisViolated("Caputo derivative is unbounded at theta")
    if side == "left":
        grid, v = np.concatenate([[theta], t]), np.concatenate([[lim.value], vals])
    else:
        grid, v = np.concatenate([t, [theta]]), np.concatenate([vals, [lim.value]])
    return total_variation(BVSamples(grid, v)), abs(lim.value)


def seminorm_interior_numeric(u, k, mu, theta, points=4096, rtol=0.01):
    """Interior seminorm from sampled Caputo derivatives.

    The derivatives are sampled on graded grids of ``points`` points
    clustered at ``theta``; the computation is repeated with half the points
    and must agree to ``rtol``.

    Raises
    ------
    InsufficientRegularity
        If the two resolutions disagree.
    """
    if mu == k:
        return _integer_tv_numeric(u, k, points, rtol)
    results = []
    for p in (points // 2, points):
        total = 0.0
        for side in ("left", "right"):
            tv, lim = _side_tv(u, mu, theta, side, p)
            total += tv + lim
        results.append(total)
    coarse, fine = results
    if abs(fine - coarse) > rtol * max(abs(fine), 1e-300):
        raise InsufficientRegularity(
            f"seminorm estimates disagree between resolutions ({coarse:.6g} vs {fine:.6g})"
        )
    return fine


def _integer_tv_numeric(u, k, points, rtol):
    sings = [s.location for s in u.singularities if -1.0 < s.location < 1.0]
    results = []
    for p in (points // 2, points):
        x = np.cos(np.pi * np.arange(p + 1) / p)[::-1]
        x = x[~np.isin(x, sings)]
        jumps = []
        for s in sings:
            gl, cl = u.local_behaviour(s, "left", k)
            gr, cr = u.local_behaviour(s, "right", k)
            if gl < 0 or gr < 0:
                raise HypothesisViolated("k-th derivative is unbounded")
            jumps.append((s, cl if gl == 0 else 0.0, cr if gr == 0 else 0.0))
        grid = np.unique(np.concatenate([x, sings]))
        vals = np.asarray(u.derivative(k, grid), dtype=float)
        for s, lo, hi in jumps:
            vals[grid == s] = 0.5 * (lo + hi)
        results.append(total_variation(BVSamples(grid, vals, tuple(jumps))))
    coarse, fine = results
    if abs(fine - coarse) > rtol * max(abs(fine), 1e-300):
        raise InsufficientRegularity("total variation estimates disagree between resolutions")
    return fine


def _abs_integral(f, samples=2001, rtol=1e-10):
    """``int_{-1}^{1} |f|`` with the interval split at sign changes of ``f``."""
    x = np.linspace(-1.0, 1.0, samples)
    y = np.asarray(f(x), dtype=float)
    cuts = [-1.0]
    for i in np.nonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0)[0]:
        cuts.append(optimize.brentq(lambda t: float(f(t)), x[i], x[i + 1], xtol=1e-15))
    cuts.append(1.0)
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += abs(integrate(f, a, b, rtol=rtol))
    return total


def _check_endpoint(u, k, mu, m):
    if not isinstance(u, EndpointPower):
        raise InsufficientRegularity("endpoint seminorm needs an EndpointPower function")
    if mu is None:
        mu = u.mu
    if mu != u.mu:
        raise DomainError("mu must match the exponent of the function")
    if k is None:
        k = caputo_order(mu)
    if not k - 1 < mu <= k:
        raise DomainError(f"mu must lie in (k-1, k], got k={k}, mu={mu}")
    if m < 0 or int(m) != m:
        raise DomainError("m must be a nonnegative integer")
    return k, mu


def _sin_abs(mu):
    r = math.fmod(mu, 1.0)
    return 0.0 if r == 0.0 else abs(math.sin(math.pi * r))


def seminorm_endpoint(u, k=None, mu=None, m=0):
    """Endpoint seminorm ``U_-^{(mu,m)}``.

    .. math::

        U_-^{(\\mu,m)} = V[v_\\mu^{(m)}] + |\\sin(\\mu\\pi)| \\sum_{l=0}^{m} |v_\\mu^{(l)}(-1^+)|,

    where ``v_mu`` is the Caputo derivative of order ``mu`` based at -1. The
    total variation is the integral of ``|v_mu^{(m+1)}|`` split at its sign
    changes.
    """
    k, mu = _check_endpoint(u, k, mu, m)
    coeffs = endpoint_caputo_coefficients(u)
    s = _sin_abs(mu)
    boundary = sum(math.factorial(l) * abs(coeffs[l]) for l in range(min(m + 1, coeffs.size)))
    if coeffs.size <= m + 1:
        tv = 0.0
    else:
        tv = _abs_integral(lambda x: endpoint_caputo_eval(u, x, m + 1, coeffs))
    return float(tv + s * boundary)


def seminorm_endpoint_numeric(u, k=None, mu=None, m=0, points=20001):
    """Endpoint seminorm with the variation taken from samples of ``v_mu^{(m)}``."""
    k, mu = _check_endpoint(u, k, mu, m)
    coeffs = endpoint_caputo_coefficients(u)
    x = np.linspace(-1.0, 1.0, points)
    tv = total_variation(BVSamples(x, endpoint_caputo_eval(u, x, m, coeffs)))
    lim = [float(endpoint_caputo_eval(u, -1.0, l, coeffs)) for l in range(m + 1)]
    return float(tv + _sin_abs(mu) * sum(abs(v) for v in lim))


@lru_cache(maxsize=None)
def _warn_weighted(mu):
    log.warning("weighted bound for mu=%g <= 1 is used as stated; its derivation assumes mu > 1", mu)


def _lgamma(x):
    return math.lgamma(x)


def interior_bounds(profile, N, which="linf"):
    """Error bounds for interior singularities.

    * ``linf`` (``mu > 1/2``, ``N >= mu``):
      ``U Gamma((N-mu+1)/2) / (2^{mu-1} (mu-1/2) sqrt(pi) Gamma((N+mu)/2))``
    * ``weighted_linf`` (``N >= mu``), for ``(1-x^2)^{1/4}`` times the error:
      ``U Gamma((N-mu+1)/2) / (2^{mu-1} mu pi Gamma((N+mu+1)/2))``
    * ``l2`` (``-1/2 < mu < N``):
      ``U sqrt(2 Gamma(N-mu) / ((2mu+1) pi Gamma(N+mu+1)))``

    ``U`` is ``profile.seminorm``; for integer ``mu = k`` it should be the
    total variation of ``u^{(k)}``.
    """
    mu, U = profile.mu, float(profile.seminorm)
    if U == 0.0:
        return 0.0
    if which == "linf":
        if not (mu > 0.5 and N >= mu):
            raise BoundNotStated("mu > 1/2 and N >= mu required for L-infinity bound")
        lv = (math.log(U) + _lgamma((N - mu + 1) / 2) - _lgamma((N + mu) / 2)
              - (mu - 1) * _LOG2 - math.log(mu - 0.5) - 0.5 * _LOG_PI)
    elif which == "weighted_linf":
        if not N >= mu:
            raise BoundNotStated("N >= mu required for weighted L-infinity bound")
        if mu <= 1.0:
            _warn_weighted(mu)
        lv = (math.log(U) + _lgamma((N - mu + 1) / 2) - _lgamma((N + mu + 1) / 2)
              - (mu - 1) * _LOG2 - math.log(mu) - _LOG_PI)
    elif which == "l2":
        if not -0.5 < mu < N:
            raise BoundNotStated("-1/2 < mu < N required for L2 bound")
        lv = math.log(U) + 0.5 * (_LOG2 + _lgamma(N - mu) - _lgamma(N + mu + 1)
                                  - math.log(2 * mu + 1) - _LOG_PI)
    else:
        raise DomainError(f"unknown interior bound {which!r}")
    return math.exp(lv)


def endpoint_bounds(profile, N, which="linf"):
    """Error bounds for the endpoint singularity ``(1+x)^mu g(x)``.

    * ``linf`` (``mu > 1/2``, ``N >= mu + m``):
      ``{Gamma((N-mu-m+1)/2) / (2^{mu+m-1} (mu+m-1/2) sqrt(pi) Gamma((N+mu+m)/2))
      + sum_{j=0}^{m} 2^{mu+j} Gamma(mu+j+1) / (pi (mu+j-1))
      Gamma(N-mu-j+1) / Gamma(N+mu+j+1)} U``
    * ``l2`` (``mu > -1/2``, ``N > mu + m``):
      ``{4 / ((2mu+2m+1) pi) Gamma(N-mu-m) / Gamma(N+mu+m+1)
      + 2^{6mu+8} Gamma(mu+1)^2 / (pi^2 (4mu+2))
      (N+1)^2 Gamma(2N-2mu+1) / ((2N+1)^2 Gamma(2N+2mu+3))}^{1/2} U``

    The ``linf`` sum has the factor ``1/(mu+j-1)``, which is not a valid
    bound for ``mu + j <= 1``; those parameters are refused.
    """
    mu, m, U = profile.mu, profile.m, float(profile.seminorm)
    if which == "linf":
        if not (mu > 0.5 and N >= mu + m):
            raise BoundNotStated("mu > 1/2 and N >= mu + m required for L-infinity bound")
        if mu <= 1.0:
            raise BoundNotStated("the L-infinity endpoint bound has a nonpositive factor mu - 1 for mu <= 1")
        if U == 0.0:
            return 0.0
        mm = mu + m
        first = math.exp(_lgamma((N - mm + 1) / 2) - _lgamma((N + mm) / 2)
                         - (mm - 1) * _LOG2 - math.log(mm - 0.5) - 0.5 * _LOG_PI)
        tail = 0.0
        for j in range(m + 1):
            tail += math.exp((mu + j) * _LOG2 + _lgamma(mu + j + 1) - _LOG_PI - math.log(mu + j - 1)
                             + _lgamma(N - mu - j + 1) - _lgamma(N + mu + j + 1))
        return (first + tail) * U
    if which == "l2":
        if not (mu > -0.5 and N > mu + m):
            raise BoundNotStated("mu > -1/2 and N > mu + m required for L2 bound")
        if U == 0.0:
            return 0.0
        mm = mu + m
        a = math.exp(math.log(4.0) - math.log(2 * mm + 1) - _LOG_PI + _lgamma(N - mm) - _lgamma(N + mm + 1))
        b = math.exp((6 * mu + 8) * _LOG2 + 2 * _lgamma(mu + 1) - 2 * _LOG_PI - math.log(4 * mu + 2)
                     + 2 * math.log(N + 1) - 2 * math.log(2 * N + 1)
                     + _lgamma(2 * N - 2 * mu + 1) - _lgamma(2 * N + 2 * mu + 3))
        return math.sqrt(a + b) * U
    raise DomainError(f"unknown endpoint bound {which!r}")


def absx_pointwise_bounds(N):
    """Pointwise error bounds for ``|x|`` at 0 and at the endpoints.

    Returns ``2 / (pi (N - 1))`` and
    ``Gamma(N/2 - 1) / (2 sqrt(pi) Gamma(N/2 + 1/2))``.
    """
    if not N > 2:
        raise DomainError("N > 2 required")
    at_zero = 2.0 / (math.pi * (N - 1))
    at_pm1 = math.exp(_lgamma(N / 2 - 1) - _lgamma(N / 2 + 0.5)) / (2.0 * math.sqrt(math.pi))
    return at_zero, at_pm1


def coeff_decay_bound(profile, n):
    """Bound on ``|u_n|`` for interior singularities.

    ``(2n+1) Gamma((n-mu)/2) U / (2^{mu+2} sqrt(pi) Gamma((n+mu+3)/2))``
    for ``mu > -1/2`` and ``n >= mu + 1``.
    """
    mu, U = profile.mu, float(profile.seminorm)
    if not mu > -0.5:
        raise BoundNotStated("mu > -1/2 required")
    if n < mu + 1:
        raise BoundNotStated(f"n >= mu + 1 required, got n={n}")
    if U == 0.0:
        return 0.0
    return math.exp(math.log(2 * n + 1) + _lgamma((n - mu) / 2) + math.log(U)
                    - (mu + 2) * _LOG2 - 0.5 * _LOG_PI - _lgamma((n + mu + 3) / 2))


def bound_value(kind, profile, N):
    """Dispatch on a bound ``kind`` from :data:`KINDS`."""
    if kind == "linf_interior":
        return interior_bounds(profile, N, "linf")
    if kind == "weighted_linf_interior":
        return interior_bounds(profile, N, "weighted_linf")
    if kind == "l2_interior":
        return interior_bounds(profile, N, "l2")
    if kind == "linf_endpoint":
        return endpoint_bounds(profile, N, "linf")
    if kind == "l2_endpoint":
        return endpoint_bounds(profile, N, "l2")
    if kind == "absx_at_zero":
        return absx_pointwise_bounds(N)[0]
    if kind == "absx_at_pm1":
        return absx_pointwise_bounds(N)[1]
    if kind == "coeff_decay":
        return coeff_decay_bound(profile, N)
    raise DomainError(f"unknown bound kind {kind!r}; choose from {KINDS}")


def bound_curve(kind, profile, degrees):
    """:class:`BoundCurve` of ``kind`` over ``degrees``."""
    return BoundCurve(kind, profile, {int(N): bound_value(kind, profile, int(N)) for N in degrees})
