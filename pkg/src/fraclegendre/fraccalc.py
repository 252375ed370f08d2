"""Fractional calculus on an interval.

Riemann-Liouville integrals, Caputo derivatives, one-sided limits of those
derivatives at singular points, the fractional Taylor formula with a
Riemann-Stieltjes remainder, and total variation of sampled BV functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import (
    DomainError,
    HypothesisViolated,
    InsufficientRegularity,
    NumericalError,
    QuadratureError,
)
from .functions import (
    BlackBox,
    BVSamples,
    Reflected,
    RegularityProfile,
    SingularFunction,
    Singularity,
)
from .quadrature import gauss_jacobi_rule, integrate
from .specfun import gamma_ratio

__all__ = [
    "BVSamples",
    "RegularityProfile",
    "SingularFunction",
    "BoundaryLimit",
    "TaylorParts",
    "rl_integral",
    "rl_power_closed",
    "boundary_limit",
    "caputo_order",
    "caputo_derivative",
    "caputo_limit",
    "caputo_derivative_slope",
    "stieltjes_integral",
    "fractional_taylor_expand",
    "total_variation",
    "endpoint_caputo_coefficients",
    "endpoint_caputo_eval",
]

DEFAULT_RTOL = 1e-10


def _singularities(f):
    return tuple(getattr(f, "singularities", ()))


def _exponent(sings, point, side):
    for s in sings:
        if s.location == point:
            e = s.right if side == "right" else s.left
            if e is None or (e == int(e) and e >= 0):
                return 0.0
            return float(e)
    return 0.0


def rl_integral(f, a, b, rho, x, side="left", *, rtol=DEFAULT_RTOL, degree=0):
    """Riemann-Liouville fractional integral of order ``rho``.

    .. math::

        (I_{a+}^\\rho f)(x) = \\frac{1}{\\Gamma(\\rho)} \\int_a^x f(y) (x - y)^{\\rho - 1} dy,
        \\qquad
        (I_{b-}^\\rho f)(x) = \\frac{1}{\\Gamma(\\rho)} \\int_x^b f(y) (y - x)^{\\rho - 1} dy.

    Parameters
    ----------
    f : SingularFunction or callable
        Integrand. Declared singular points of a :class:`SingularFunction`
        become panel breaks with matching Gauss-Jacobi weights.
    a, b : float
        Lower limit (``side="left"``) or upper limit (``side="right"``);
        the other one is ignored and may be ``None``.
    rho : float
        Order, ``rho >= 0``. Order 0 is the identity.
    x : float
        Evaluation point.
    side : {"left", "right"}
    rtol : float
        Relative tolerance of the adaptive quadrature.
    degree : int
        Polynomial degree hint for the smooth part of ``f``.

    Returns
    -------
    float

    Raises
    ------
    QuadratureError
        If the tolerance is not reached; carries the achieved estimate.
    """
    if rho < 0:
        raise DomainError("order must be nonnegative")
    if side not in ("left", "right"):
        raise DomainError("side must be 'left' or 'right'")
    if rho == 0:
        return float(np.asarray(f(np.float64(x))))
    sings = _singularities(f)
    if side == "left":
        lo, hi = float(a), float(x)
        if hi < lo:
            raise DomainError("x must not lie left of the lower limit")
    else:
        lo, hi = float(x), float(b)
        if hi < lo:
            raise DomainError("x must not lie right of the upper limit")
    if lo == hi:
        return 0.0
    breaks = [lo] + sorted(s.location for s in sings if lo < s.location < hi) + [hi]
    scale = 1.0 / math.gamma(rho)

    if side == "left":
        def integrand(y):
            return np.asarray(f(y), dtype=float) * (hi - y) ** (rho - 1.0) * scale
    else:
        def integrand(y):
            return np.asarray(f(y), dtype=float) * (y - lo) ** (rho - 1.0) * scale

    total = 0.0
    for c, d in zip(breaks[:-1], breaks[1:]):
        el = _exponent(sings, c, "right")
        er = _exponent(sings, d, "left")
        if side == "left" and d == hi:
            er += rho - 1.0
        if side == "right" and c == lo:
            el += rho - 1.0
        total += integrate(integrand, c, d, el, er, rtol=rtol, degree=degree)
    return total


def rl_power_closed(endpoint, eta, rho, x, side="left"):
    """Closed-form fractional integral of a power of the distance to the endpoint.

    .. math::

        I_{a+}^\\rho (x - a)^\\eta = \\frac{\\Gamma(\\eta + 1)}{\\Gamma(\\eta + \\rho + 1)} (x - a)^{\\eta + \\rho}

    and the mirrored formula for ``side="right"``.
    """
    if not eta > -1:
        raise DomainError("eta must exceed -1")
    if rho < 0:
        raise DomainError("order must be nonnegative")
    dist = x - endpoint if side == "left" else endpoint - x
    if dist < 0:
        raise DomainError("x lies outside the integration range")
    return gamma_ratio(eta + 1.0, eta + rho + 1.0, 0.0) * dist ** (eta + rho)


@dataclass(frozen=True)
class BoundaryLimit:
    """Outcome of a one-sided limit: ``"zero"``, ``"finite"`` or ``"infinite"``."""

    kind: str
    value: float = 0.0

    @property
    def is_finite(self):
        return self.kind != "infinite"


def boundary_limit(gamma, rho, g_at_endpoint):
    """Limit of ``I_{a+}^rho [(t - a)**gamma g(t)]`` as ``x -> a+``.

    Zero if ``rho > -gamma``, ``g(a) Gamma(gamma + 1)`` if ``rho = -gamma``
    and infinite if ``rho < -gamma``.

    Examples
    --------
    >>> boundary_limit(-0.5, 0.5, 1.0)
    BoundaryLimit(kind='finite', value=1.7724538509055159)
    """
    if not gamma > -1:
        raise DomainError("gamma must exceed -1")
    if not rho > 0:
        raise DomainError("rho must be positive")
    if rho > -gamma:
        return BoundaryLimit("zero", 0.0)
    if rho == -gamma:
        return BoundaryLimit("finite", g_at_endpoint * math.gamma(gamma + 1.0))
    return BoundaryLimit("infinite", math.inf)


def caputo_order(mu):
    """Integer ``k`` with ``k - 1 < mu <= k``."""
    if not mu > 0:
        raise DomainError("Caputo order must be positive")
    return max(1, math.ceil(mu))


def _require_derivatives(u, k):
    if isinstance(u, BlackBox):
        if u.hint is None:
            raise InsufficientRegularity("black-box function needs a regularity hint")
        if u.hint.k < k:
            raise InsufficientRegularity(f"hint declares k={u.hint.k}, derivative needs k={k}")
        if u.derivatives is None:
            raise InsufficientRegularity("black-box function has no derivative evaluator")


def caputo_limit(u, point, mu, side="left"):
    """One-sided limit of the Caputo derivative at its base point.

    ``side="left"`` is the left-sided derivative based at ``point`` (limit
    from above), ``side="right"`` the right-sided one (limit from below).

    Returns
    -------
    BoundaryLimit
    """
    k = caputo_order(mu)
    _require_derivatives(u, k)
    approach = "right" if side == "left" else "left"
    gamma, coeff = u.local_behaviour(point, approach, k)
    sign = 1.0 if side == "left" else (-1.0) ** k
    if coeff == 0.0:
        return BoundaryLimit("zero", 0.0)
    if mu == k:
        if gamma > 0:
            return BoundaryLimit("zero", 0.0)
        if gamma == 0:
            return BoundaryLimit("finite", sign * coeff)
        return BoundaryLimit("infinite", math.inf)
    if not gamma > -1:
        raise HypothesisViolated("k-th derivative is not integrable at the base point")
    lim = boundary_limit(gamma, k - mu, coeff)
    if lim.kind == "finite":
        return BoundaryLimit("finite", sign * lim.value)
    return lim


def caputo_derivative(u, point, mu, side, x, *, rtol=DEFAULT_RTOL):
    """Caputo fractional derivative of order ``mu`` based at ``point``.

    .. math::

        {}^C D_{\\theta+}^\\mu u = I_{\\theta+}^{k-\\mu} u^{(k)}, \\qquad
        {}^C D_{\\theta-}^\\mu u = (-1)^k I_{\\theta-}^{k-\\mu} u^{(k)},
        \\qquad k - 1 < \\mu \\le k.

    At ``x == point`` the one-sided limit is returned.

    Raises
    ------
    InsufficientRegularity
        For black-box input without a sufficient regularity hint.
    """
    k = caputo_order(mu)
    _require_derivatives(u, k)
    if (side == "left" and x < point) or (side == "right" and x > point):
        raise DomainError("x lies on the wrong side of the base point")
    if x == point:
        lim = caputo_limit(u, point, mu, side)
        return lim.value
    if mu == k:
        return float(u.derivative(k, np.float64(x)))
    dk = u.derivative_function(k)
    if side == "left":
        return rl_integral(dk, point, None, k - mu, x, "left", rtol=rtol)
    return (-1.0) ** k * rl_integral(dk, None, point, k - mu, x, "right", rtol=rtol)


def _inner_rule(phi, t, theta, e, rho, weight_extra, rtol):
    """Vectorised ``int_0^1 phi(theta + (t - theta) s) s**weight_extra (1 - s)**(rho - 1) ds``."""
    t = np.asarray(t, dtype=float)
    prev = None
    for q in (32, 64, 128, 256, 512):
        tq, wq = gauss_jacobi_rule(q, e, rho - 1.0)
        s = 0.5 * (1.0 + tq)
        w = wq * 0.5 ** (e + rho)
        span = t[:, None] - theta
        pts = theta + span * s[None, :]
        # the rounded abscissa defines sigma, so the singular factor is divided out consistently
        s_eff = (pts - theta) / span
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.asarray(phi(pts), dtype=float) * s_eff ** (weight_extra - e)
        vals = np.where(s_eff > 0, vals, 0.0)
        cur = vals @ w
        if prev is not None:
            mass = np.abs(vals) @ w
            if np.all(np.abs(cur - prev) <= np.maximum(rtol * np.abs(cur), 1e-13 * mass + 1e-300)):
                return cur
        prev = cur
    raise QuadratureError("inner Caputo integral did not converge", float(np.max(np.abs(prev))), math.inf)


def caputo_derivative_slope(u, theta, mu, t, *, rtol=DEFAULT_RTOL):
    """Derivative in ``t`` of the left-sided Caputo derivative based at ``theta``.

    With ``rho = k - mu`` and ``phi = u^{(k)}``, substituting
    ``s = theta + (t - theta) sigma`` gives

    .. math::

        \\frac{d}{dt} D(t) = \\frac{(t-\\theta)^{\\rho-1}}{\\Gamma(\\rho)}
        \\Big[\\rho \\int_0^1 \\phi(s)(1-\\sigma)^{\\rho-1} d\\sigma
        + (t-\\theta) \\int_0^1 \\phi'(s)\\,\\sigma(1-\\sigma)^{\\rho-1} d\\sigma\\Big],

    which stays valid when ``phi`` has an integrable singularity at ``theta``.
    Vectorised over ``t > theta``.
    """
    k = caputo_order(mu)
    _require_derivatives(u, k)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if mu == k:
        return np.asarray(u.derivative(k + 1, t), dtype=float)
    rho = k - mu
    gamma, _ = u.local_behaviour(theta, "right", k)
    e = gamma if (gamma < 0 or gamma != int(gamma)) else 0.0
    if not e > -1:
        raise HypothesisViolated("k-th derivative is not integrable at the base point")
    j0 = _inner_rule(lambda s: u.derivative(k, s), t, theta, e, rho, 0.0, rtol)
    j1 = _inner_rule(lambda s: u.derivative(k + 1, s), t, theta, e, rho, 1.0, rtol)
    d = t - theta
    return d ** (rho - 1.0) / math.gamma(rho) * (rho * j0 + d * j1)


def stieltjes_integral(h, slope, c, d, jumps=(), left=0.0, right=0.0, *, rtol=DEFAULT_RTOL,
                       atol=0.0):
    """Riemann-Stieltjes integral ``int_c^d h dD`` of a piecewise smooth integrator.

    The absolutely continuous part integrates ``h * slope`` where ``slope``
    is the a.e. derivative of ``D``; each declared jump ``(s, D(s-), D(s+))``
    inside ``(c, d)`` adds the point mass ``h(s) (D(s+) - D(s-))``.
    ``left`` and ``right`` are the algebraic exponents of ``h * slope``
    at ``c`` and ``d``.
    """
    interior = sorted(j for j in jumps if c < j[0] < d)
    breaks = [c] + [j[0] for j in interior] + [d]
    total = 0.0
    for i, (p, q) in enumerate(zip(breaks[:-1], breaks[1:])):
        el = left if i == 0 else 0.0
        er = right if i == len(breaks) - 2 else 0.0
        total += integrate(lambda t: h(t) * slope(t), p, q, el, er, rtol=rtol, atol=atol)
    for s, lo, hi in interior:
        total += float(h(np.float64(s))) * (hi - lo)
    return total


@dataclass(frozen=True)
class TaylorParts:
    """The three addends of the fractional Taylor formula."""

    polynomial: float
    fractional: float
    remainder: float

    @property
    def total(self):
        return self.polynomial + self.fractional + self.remainder


def fractional_taylor_expand(f, theta, mu, k, side, x, *, rtol=DEFAULT_RTOL):
    """Fractional Taylor formula of order ``mu`` at ``theta``, evaluated at ``x``.

    Left-sided (``x >= theta``):

    .. math::

        f(x) = \\sum_{j<k} \\frac{f^{(j)}(\\theta)}{j!}(x-\\theta)^j
        + \\frac{D(\\theta+)}{\\Gamma(\\mu+1)}(x-\\theta)^\\mu
        + \\frac{1}{\\Gamma(\\mu+1)} \\int_\\theta^x (x-t)^\\mu \\, dD(t),

    with ``D`` the left-sided Caputo derivative based at ``theta``. The
    right-sided formula (``x <= theta``) is obtained by reflecting ``f``
    about ``theta``.

    Returns
    -------
    TaylorParts

    Raises
    ------
    HypothesisViolated
        If the Caputo derivative is unbounded at ``theta`` (so not BV).
    """
    if not k - 1 < mu <= k:
        raise DomainError(f"mu must lie in (k-1, k], got k={k}, mu={mu}")
    if side == "right":
        if x > theta:
            raise DomainError("right-sided formula needs x <= theta")
        return fractional_taylor_expand(Reflected(f, theta), theta, mu, k, "left",
                                        2.0 * theta - x, rtol=rtol)
    if side != "left":
        raise DomainError("side must be 'left' or 'right'")
    if x < theta:
        raise DomainError("left-sided formula needs x >= theta")
    _require_derivatives(f, k + 1)
    for s in _singularities(f):
        if theta < s.location < x:
            raise DomainError("a singular point inside (theta, x) is not supported")

    poly = 0.0
    for j in range(k):
        gamma, coeff = f.local_behaviour(theta, "right", j)
        if gamma < 0 and coeff != 0.0:
            raise HypothesisViolated(f"derivative of order {j} is unbounded at theta")
        value = coeff if gamma == 0 else 0.0
        poly += value / math.factorial(j) * (x - theta) ** j

    lim = caputo_limit(f, theta, mu, "left")
    if not lim.is_finite:
        raise HypothesisViolated("Caputo derivative is unbounded at theta, so it is not of bounded variation")
    gm = math.gamma(mu + 1.0)
    frac = lim.value / gm * (x - theta) ** mu
    if x == theta:
        return TaylorParts(poly, frac, 0.0)

    # exponent of the slope of D at theta: (t-theta)^(gamma_k + rho - 1), unless
    # the leading singular parts cancel exactly, in which case the slope is bounded
    gamma_k, _ = f.local_behaviour(theta, "right", k)
    rho = k - mu
    if mu == k:
        e_out = gamma_k - 1.0 if gamma_k != int(gamma_k) else 0.0
    elif gamma_k == 0.0 or gamma_k + rho == 0.0:
        e_out = rho - 1.0 if gamma_k == 0.0 else 0.0
    else:
        e_out = gamma_k + rho - 1.0
    if not e_out > -1:
        raise HypothesisViolated("Caputo derivative is not of bounded variation near theta")

    def kernel(t):
        return (x - t) ** mu / gm

    def slope(t):
        return caputo_derivative_slope(f, theta, mu, t, rtol=rtol)

    # the remainder may vanish identically, so its accuracy is judged on the scale of f(x)
    scale = max(abs(poly), abs(frac), abs(float(f(np.float64(x)))), 1e-300)
    rem = stieltjes_integral(kernel, slope, theta, x, (), e_out, mu, rtol=rtol, atol=rtol * scale)
    return TaylorParts(poly, frac, rem)


def total_variation(g, interval=None):
    """Total variation of sampled data over ``[c, d]``.

    The variation is the sum of absolute increments along the grid points
    inside the interval, with declared jumps contributing their left and
    right limits as separate entries. Endpoint values are linearly
    interpolated from the grid.

    Parameters
    ----------
    g : BVSamples
    interval : (float, float), optional
        Defaults to the grid span.

    Returns
    -------
    float
    """
    grid, vals = g.grid, g.values
    if np.any(np.isnan(vals)):
        raise DomainError("samples contain NaN")
    if grid.size == 0:
        return 0.0
    c, d = (grid[0], grid[-1]) if interval is None else map(float, interval)
    if d <= c:
        return 0.0
    if c < grid[0] or d > grid[-1]:
        raise DomainError("interval must lie inside the grid span")
    jumps = {loc: (lo, hi) for loc, lo, hi in g.jumps}

    def endpoint_value(p, use_right):
        if p in jumps:
            return jumps[p][1] if use_right else jumps[p][0]
        return float(np.interp(p, grid, vals))

    seq = [endpoint_value(c, True)]
    inner = (grid > c) & (grid < d)
    points = sorted(set(grid[inner].tolist()) | {p for p in jumps if c < p < d})
    idx = {float(x): v for x, v in zip(grid, vals)}
    for p in points:
        if p in jumps:
            seq.extend(jumps[p])
        else:
            seq.append(idx[p])
    seq.append(endpoint_value(d, False))
    return float(np.sum(np.abs(np.diff(seq))))


def singular_profile(location, exponent):
    """Convenience :class:`Singularity` with equal exponents on both sides."""
    return Singularity(location, exponent, exponent)


def endpoint_caputo_coefficients(u, terms=200, rtol=1e-17):
    """Taylor coefficients about -1 of the Caputo derivative of ``(1 + x)**mu g(x)``.

    .. math::

        {}^C D_{-1+}^\\mu u(x) = v_\\mu(x) = \\sum_{j \\ge 0}
        \\frac{\\Gamma(\\mu + j + 1)}{(j!)^2} g^{(j)}(-1) (1 + x)^j .

    The series is cut once the terms, weighted by ``2**j`` (the largest
    value of ``(1 + x)**j`` on the interval), fall below ``rtol`` times the
    running maximum for several consecutive indices.

    Raises
    ------
    NumericalError
        If the series has not converged within ``terms`` terms.
    """
    mu, g = u.mu, u.modulator
    if g.is_one:
        return np.array([math.gamma(mu + 1.0)])
    coeffs = []
    peak = 0.0
    quiet = 0
    for j in range(terms):
        lg = math.lgamma(mu + j + 1.0) - 2.0 * math.lgamma(j + 1.0)
        c = math.exp(lg) * float(g(-1.0, j))
        coeffs.append(c)
        size = abs(c) * 2.0**j
        peak = max(peak, size)
        quiet = quiet + 1 if size <= rtol * peak else 0
        if quiet >= 4:
            return np.array(coeffs)
    raise NumericalError(f"Caputo series for v_mu did not converge within {terms} terms")


def endpoint_caputo_eval(u, x, order=0, coefficients=None):
    """``order``-th derivative of the endpoint Caputo derivative ``v_mu`` of ``u``."""
    c = endpoint_caputo_coefficients(u) if coefficients is None else coefficients
    x = np.asarray(x, dtype=float)
    if order >= c.size:
        return np.zeros_like(x)[()] if x.ndim == 0 else np.zeros_like(x)
    j = np.arange(order, c.size)
    dc = c[order:] * np.exp(gammaln(j + 1.0) - gammaln(j - order + 1.0))
    return np.polynomial.polynomial.polyval(1.0 + x, dc)


