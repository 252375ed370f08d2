"""Legendre expansions of singular functions.

Fractional integrals of Legendre polynomials in closed form, exact expansion
coefficients for the model singular functions, quadrature coefficients for
everything else, partial-sum evaluation and the H^1_0 projection.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy import special

from .errors import BelowThreshold, DomainError, InsufficientRegularity
from .fraccalc import endpoint_caputo_coefficients, endpoint_caputo_eval
from .functions import AbsPower, AbsX, BlackBox, EndpointPower, InteriorPlusPower
from .quadrature import integrate, integrate_mp
from .specfun import gamma_ratio, hyp2f1_terminating, jacobi_general_table

__all__ = [
    "LegendreSeries",
    "frac_int_legendre",
    "frac_int_legendre_table",
    "frac_int_legendre_integer",
    "frac_int_legendre_minus1",
    "coeff_quadrature",
    "coeff_closed_model",
    "closed_form_threshold",
    "coeff_absx",
    "expand",
    "partial_sum_eval",
    "h1_projection_coeffs",
    "l2_norm",
    "evaluation_grid",
    "refine_maximum",
]

DEFAULT_TOL = 1e-10
#: Cap on the number of boundary terms used by the endpoint coefficient identity.
ENDPOINT_TERMS = 8


@dataclass(frozen=True)
class LegendreSeries:
    """Coefficients ``u_0..u_N`` of a truncated Legendre series.

    ``provenance`` tags each coefficient with ``"closed"`` or
    ``"quadrature"`` when the series came from :func:`expand`.
    """

    coefficients: np.ndarray
    provenance: tuple = ()

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise DomainError("coefficients must be a nonempty 1-d array")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def degree(self):
        return self.coefficients.size - 1

    def truncate(self, N):
        return LegendreSeries(self.coefficients[: N + 1], self.provenance[: N + 1])

    def __call__(self, x):
        return partial_sum_eval(self, x)

    def to_csv(self, stream):
        """Write ``n,coefficient,provenance`` rows."""
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["n", "coefficient", "provenance"])
        prov = self.provenance or ("",) * self.coefficients.size
        for n, (c, p) in enumerate(zip(self.coefficients, prov)):
            w.writerow([n, repr(float(c)), p])


def _check_mu(mu):
    if not mu > -1:
        raise DomainError(f"mu must exceed -1, got {mu}")


def _normalised_jacobi(nmax, mu, x):
    """``P_n^{(mu+1,-mu-1)}(x) / P_n^{(mu+1,-mu-1)}(1)`` for n = 0..nmax."""
    table = jacobi_general_table(nmax, mu + 1.0, -mu - 1.0, x)
    # P_n(1) = Gamma(n + mu + 2) / (n! Gamma(mu + 2)), built by its ratio recurrence
    norm = np.ones(nmax + 1)
    for n in range(1, nmax + 1):
        norm[n] = norm[n - 1] * (n + mu + 1.0) / n
    return table / norm.reshape((-1,) + (1,) * (table.ndim - 1))


def frac_int_legendre_table(nmax, mu, x, side="right"):
    """Fractional integrals of order ``mu + 1`` of ``P_0..P_nmax``.

    ``side="right"`` gives ``I_{1-}^{mu+1} P_n`` and ``side="left"`` gives
    ``I_{-1+}^{mu+1} P_n``:

    .. math::

        (I_{1-}^{\\mu+1} P_n)(x) = \\frac{(1-x)^{\\mu+1}}{\\Gamma(\\mu+2)}
        \\frac{P_n^{(\\mu+1,-\\mu-1)}(x)}{P_n^{(\\mu+1,-\\mu-1)}(1)},
        \\qquad
        (I_{-1+}^{\\mu+1} P_n)(x) = (-1)^n (I_{1-}^{\\mu+1} P_n)(-x).

    Returns
    -------
    ndarray
        Shape ``(nmax + 1,) + shape(x)``.
    """
    _check_mu(mu)
    if nmax < 0:
        raise DomainError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    if side == "left":
        vals = frac_int_legendre_table(nmax, mu, -x, "right")
        signs = (-1.0) ** np.arange(nmax + 1)
        return vals * signs.reshape((-1,) + (1,) * x.ndim)
    if side != "right":
        raise DomainError("side must be 'left' or 'right'")
    pref = (1.0 - x) ** (mu + 1.0) / math.gamma(mu + 2.0)
    return pref * _normalised_jacobi(nmax, mu, x)


def frac_int_legendre(n, mu, x, side="right", exact=False):
    """Fractional integral of order ``mu + 1`` of ``P_n`` at ``x``.

    Parameters
    ----------
    n : int
    mu : float
        ``mu > -1``.
    x : float or array_like
    side : {"right", "left"}
        ``I_{1-}`` or ``I_{-1+}``.
    exact : bool
        Use the extended-precision terminating hypergeometric sum
        ``(1-x)^{mu+1} / Gamma(mu+2) * 2F1(-n, n+1; mu+2; (1-x)/2)`` instead
        of the double-precision recurrence.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    _check_mu(mu)
    if not exact:
        res = frac_int_legendre_table(n, mu, x, side)[n]
        return float(res) if np.ndim(res) == 0 else res
    xs = np.asarray(x, dtype=float)
    flat = xs.reshape(-1)
    out = np.empty(flat.shape)
    for i, t in enumerate(flat):
        y, sign = (t, 1.0) if side == "right" else (-t, (-1.0) ** n)
        hyp = hyp2f1_terminating(-n, n + 1.0, mu + 2.0, 0.5 * (1.0 - y))
        out[i] = sign * (1.0 - y) ** (mu + 1.0) / math.gamma(mu + 2.0) * hyp
    out = out.reshape(xs.shape)
    return float(out) if out.ndim == 0 else out


def frac_int_legendre_integer(n, k, x):
    """``I_{1-}^{k+1} P_n`` for integer order via classical Jacobi polynomials.

    .. math::

        (I_{1-}^{k+1} P_n)(x) = \\frac{(n-k-1)!}{2^{k+1} n!} (1-x^2)^{k+1}
        P_{n-k-1}^{(k+1,k+1)}(x), \\qquad n \\ge k + 1.
    """
    if k < 0 or int(k) != k:
        raise DomainError("k must be a nonnegative integer")
    if n < k + 1:
        raise BelowThreshold("integer-order formula needs n >= k + 1")
    x = np.asarray(x, dtype=float)
    m = n - k - 1
    jac = special.eval_jacobi(m, k + 1, k + 1, x)
    c = math.exp(math.lgamma(m + 1) - math.lgamma(n + 1)) / 2.0 ** (k + 1)
    res = c * (1.0 - x * x) ** (k + 1) * jac
    return float(res) if np.ndim(res) == 0 else res


def _sinpi(t):
    # sin(pi t) with exact zeros at integers
    r = math.fmod(t, 2.0)
    if r == int(r):
        return 0.0
    return math.sin(math.pi * r)


def frac_int_legendre_minus1(n, mu):
    """``(I_{1-}^{mu+1} P_n)(-1)`` in closed form.

    .. math::

        (-1)^n \\frac{2^{\\mu+1} \\Gamma(\\mu+1) \\sin((\\mu+1)\\pi)}{\\pi}
        \\frac{\\Gamma(n-\\mu)}{\\Gamma(n+\\mu+2)}, \\qquad n \\ge \\mu + 1 > 0.
    """
    if not mu > -1:
        raise DomainError("mu must exceed -1")
    if n < mu + 1:
        raise DomainError(f"closed form at -1 needs n >= mu + 1, got n={n}, mu={mu}")
    s = _sinpi(mu + 1.0)
    if s == 0.0:
        return 0.0
    ratio = gamma_ratio(-mu, mu + 2.0, float(n))
    return (-1.0) ** n * 2.0 ** (mu + 1.0) * math.gamma(mu + 1.0) * s / math.pi * ratio


def _minus1_values(ns, mu):
    """Vectorised :func:`frac_int_legendre_minus1` over degrees ``ns >= mu + 1``."""
    ns = np.asarray(ns, dtype=float)
    s = _sinpi(mu + 1.0)
    if s == 0.0:
        return np.zeros_like(ns)
    logr = special.gammaln(ns - mu) - special.gammaln(ns + mu + 2.0)
    signs = np.where(ns % 2 == 0, 1.0, -1.0)
    return signs * 2.0 ** (mu + 1.0) * math.gamma(mu + 1.0) * s / math.pi * np.exp(logr)


def _legendre_mp(ctx, n, x):
    p0, p1 = ctx.mpf(1), x
    if n == 0:
        return p0
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1


def _panels(u):
    pts = [-1.0] + [p for p in u.breakpoints() if -1.0 < p < 1.0] + [1.0]
    return pts


def coeff_quadrature(u, n, tol=DEFAULT_TOL, extended=False, dps=30):
    """Legendre coefficient ``(2n+1)/2 * int u P_n`` by quadrature.

    The interval is split at the declared singular points. The default path
    uses adaptive Gauss-Jacobi panels whose weights absorb the algebraic
    singularities. With ``extended=True`` an mpmath tanh-sinh rule at ``dps``
    digits is used instead, which avoids the double-precision cancellation
    floor for tiny high-degree coefficients; it needs ``u.mp_value``.

    Raises
    ------
    QuadratureError
        If the tolerance is not reached; carries the achieved estimate.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    if isinstance(u, AbsPower) and n % 2:
        return 0.0  # even function, odd P_n
    pts = _panels(u)
    if extended:
        def f(ctx, x):
            return u.mp_value(ctx, x) * _legendre_mp(ctx, n, x)
        exps = [(u.singular_exponent(c, "right"), u.singular_exponent(d, "left"))
                for c, d in zip(pts[:-1], pts[1:])]
        return 0.5 * (2 * n + 1) * integrate_mp(f, pts, dps=dps, pieces=1 + n // 4, exponents=exps)

    def g(x):
        return np.asarray(u(x), dtype=float) * npleg.legval(x, _unit(n))

    total = 0.0
    for c, d in zip(pts[:-1], pts[1:]):
        total += integrate(g, c, d, u.singular_exponent(c, "right"), u.singular_exponent(d, "left"),
                           rtol=tol, degree=n)
    return 0.5 * (2 * n + 1) * total


def _unit(n):
    e = np.zeros(n + 1)
    e[n] = 1.0
    return e


def closed_form_threshold(u, m=0):
    """Smallest degree at which :func:`coeff_closed_model` applies to ``u``."""
    if isinstance(u, AbsX):
        return 2
    if isinstance(u, (InteriorPlusPower, AbsPower, EndpointPower)):
        return max(0, math.ceil(u.mu + 1.0 + m))
    raise BelowThreshold(f"no closed form for {type(u).__name__}")


def coeff_absx(n):
    """Legendre coefficients of ``|x|`` for ``n >= 2``.

    .. math::

        \\hat u_{2j} = (-1)^{j+1} \\frac{(j + 1/4)\\Gamma(j - 1/2)}{\\sqrt{\\pi}\\,(j+1)!},
        \\qquad \\hat u_{2j+1} = 0.

    Examples
    --------
    >>> coeff_absx(2)
    0.625
    """
    if n < 2:
        raise BelowThreshold("the |x| formula needs n >= 2")
    if n % 2:
        return 0.0
    j = n // 2
    return (-1.0) ** (j + 1) * (j + 0.25) * gamma_ratio(-0.5, 2.0, float(j)) / math.sqrt(math.pi)


def _endpoint_general(u, n, m_cap=ENDPOINT_TERMS, tol=DEFAULT_TOL):
    mu = u.mu
    m = min(m_cap, math.floor(n - mu - 1.0))
    coeffs = endpoint_caputo_coefficients(u)
    # v^{(l)}(-1) = Gamma(mu + l + 1) / l! * g^{(l)}(-1) = l! * c_l
    total = 0.0
    for l in range(m + 1):
        vl = math.factorial(l) * coeffs[l] if l < coeffs.size else 0.0
        if vl:
            total += frac_int_legendre_minus1(n, mu + l) * vl
    rho = mu + m + 1.0

    def rem(x):
        return frac_int_legendre_table(n, rho - 1.0, x, "right")[n] * endpoint_caputo_eval(u, x, m + 1, coeffs)

    # the recurrence for I^rho P_n carries an absolute error of about n eps (1-x)^rho / Gamma(rho+1),
    # which sets the attainable accuracy of the remainder when it is far below the boundary terms
    vmax = float(np.max(np.abs(endpoint_caputo_eval(u, np.linspace(-1.0, 1.0, 65), m + 1, coeffs))))
    floor = 4.0 * n * np.finfo(float).eps * 2.0 ** (rho + 1.0) / math.gamma(rho + 2.0) * vmax
    total += integrate(rem, -1.0, 1.0, 0.0, rho if rho != int(rho) else 0.0, rtol=tol,
                       atol=max(tol * abs(total), floor), degree=n + coeffs.size)
    return 0.5 * (2 * n + 1) * total


def coeff_closed_model(u, n, m=None, tol=DEFAULT_TOL):
    """Exact Legendre coefficient of a model singular function.

    * ``(x - theta)_+^mu``: ``(2n+1)/2 Gamma(mu+1) (I_{1-}^{mu+1} P_n)(theta)``
    * ``|x|^mu``: ``(2n+1)/2 Gamma(mu+1) [(I_{1-}^{mu+1} P_n)(0) + (I_{-1+}^{mu+1} P_n)(0)]``
    * ``|x|``: the explicit formula of :func:`coeff_absx`
    * ``(1+x)^mu``: ``(2n+1)/2 Gamma(mu+1) (I_{1-}^{mu+1} P_n)(-1)``
    * ``(1+x)^mu g``: boundary terms ``(I_{1-}^{mu+l+1} P_n)(-1) v^{(l)}(-1)``
      for ``l = 0..m`` plus the integral of ``I_{1-}^{mu+m+1} P_n``
      against ``v^{(m+1)}``, where ``v`` is the Caputo derivative of order
      ``mu`` based at -1.

    Parameters
    ----------
    m : int, optional
        Number of boundary terms for modulated endpoint functions; defaults
        to the largest admissible value up to :data:`ENDPOINT_TERMS`.

    Raises
    ------
    BelowThreshold
        If ``n`` is below the degree at which the identity holds.
    """
    thr = closed_form_threshold(u, 0 if m is None else m)
    if n < thr:
        raise BelowThreshold(f"formula not applicable below threshold n >= {thr}, got n={n}")
    if isinstance(u, AbsX):
        return coeff_absx(n)
    if isinstance(u, InteriorPlusPower):
        return 0.5 * (2 * n + 1) * math.gamma(u.mu + 1.0) * frac_int_legendre(n, u.mu, u.theta)
    if isinstance(u, AbsPower):
        if n % 2:
            return 0.0
        return (2 * n + 1) * math.gamma(u.mu + 1.0) * frac_int_legendre(n, u.mu, 0.0)
    if u.modulator.is_one:
        return 0.5 * (2 * n + 1) * math.gamma(u.mu + 1.0) * frac_int_legendre_minus1(n, u.mu)
    return _endpoint_general(u, n, ENDPOINT_TERMS if m is None else m, tol)


def _closed_block(u, lo, hi):
    """Closed-form coefficients for degrees lo..hi, vectorised where possible."""
    ns = np.arange(lo, hi + 1)
    if ns.size == 0:
        return np.empty(0)
    if isinstance(u, AbsX):
        return np.array([coeff_absx(int(n)) for n in ns])
    if isinstance(u, InteriorPlusPower):
        vals = frac_int_legendre_table(hi, u.mu, u.theta)[lo:]
        return 0.5 * (2 * ns + 1) * math.gamma(u.mu + 1.0) * vals
    if isinstance(u, AbsPower):
        vals = frac_int_legendre_table(hi, u.mu, 0.0)[lo:]
        return np.where(ns % 2 == 0, (2 * ns + 1) * math.gamma(u.mu + 1.0) * vals, 0.0)
    if u.modulator.is_one:
        return 0.5 * (2 * ns + 1) * math.gamma(u.mu + 1.0) * _minus1_values(ns, u.mu)
    return np.array([_endpoint_general(u, int(n)) for n in ns])


def expand(u, N, strategy="closed-form-preferred", tol=DEFAULT_TOL, workers=1):
    """Legendre series of ``u`` up to degree ``N``.

    Parameters
    ----------
    u : SingularFunction
    N : int
    strategy : {"closed-form-preferred", "quadrature-only"}
    tol : float
        Quadrature tolerance.
    workers : int
        Threads used for quadrature coefficients.

    Returns
    -------
    LegendreSeries
        With per-coefficient provenance ``"closed"`` or ``"quadrature"``.
    """
    if N < 0:
        raise DomainError("degree must be nonnegative")
    if strategy not in ("closed-form-preferred", "quadrature-only"):
        raise DomainError(f"unknown strategy {strategy!r}")
    thr = N + 1
    if strategy == "closed-form-preferred":
        try:
            thr = min(closed_form_threshold(u), N + 1)
        except BelowThreshold:
            thr = N + 1
    quad_ns = list(range(thr))
    if workers > 1 and len(quad_ns) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            quad = list(pool.map(lambda n: coeff_quadrature(u, n, tol), quad_ns))
    else:
        quad = [coeff_quadrature(u, n, tol) for n in quad_ns]
    closed = _closed_block(u, thr, N)
    coeffs = np.concatenate([np.asarray(quad, dtype=float), closed])
    prov = ("quadrature",) * thr + ("closed",) * (N + 1 - thr)
    return LegendreSeries(coeffs, prov)


def partial_sum_eval(s, x):
    """Evaluate ``sum_n u_n P_n(x)`` by Clenshaw summation."""
    c = s.coefficients if isinstance(s, LegendreSeries) else np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise DomainError("abscissa must lie in [-1, 1]")
    res = npleg.legval(x, c)
    return float(res) if np.ndim(res) == 0 else res


def l2_norm(s):
    """L2 norm on [-1, 1] of a Legendre series by Parseval."""
    c = s.coefficients if isinstance(s, LegendreSeries) else np.asarray(s, dtype=float)
    n = np.arange(c.size)
    return math.sqrt(float(np.sum(2.0 / (2 * n + 1) * c * c)))


def h1_projection_coeffs(u_prime_series, u_at_minus1):
    """Legendre coefficients of the H^1_0-type projection.

    Given the truncated series ``b_0..b_{N-1}`` of ``u'``, returns the series of
    ``u(-1) + int_{-1}^x (pi_{N-1} u')``, using
    ``int_{-1}^x P_n = (P_{n+1} - P_{n-1}) / (2n + 1)`` and
    ``int_{-1}^x P_0 = P_0 + P_1``.
    """
    b = (u_prime_series.coefficients if isinstance(u_prime_series, LegendreSeries)
         else np.asarray(u_prime_series, dtype=float))
    N = b.size
    if N < 2:
        raise DomainError("projection degree N must be at least 2")
    c = np.zeros(N + 1)
    c[0] += b[0]
    c[1] += b[0]
    for n in range(1, N):
        t = b[n] / (2 * n + 1)
        c[n + 1] += t
        c[n - 1] -= t
    c[0] += u_at_minus1
    return LegendreSeries(c)


def evaluation_grid(singular_points=(), N=None, points=4097, cluster=129):
    """Chebyshev grid on [-1, 1] unioned with clusters around singular points.

    Each cluster has ``cluster`` uniformly spaced points within a half-width
    of ``2 / (N + 2)`` (``0.05`` if ``N`` is not given) of the point, and
    includes the point itself.
    """
    x = np.cos(np.pi * np.arange(points) / (points - 1))[::-1]
    parts = [x, np.array([-1.0, 1.0])]
    width = 0.05 if N is None else 2.0 / (N + 2)
    for p in singular_points:
        parts.append(np.clip(p + np.linspace(-width, width, cluster), -1.0, 1.0))
        parts.append(np.array([float(p)]))
    return np.unique(np.concatenate(parts))


def refine_maximum(func, grid, values, iterations=60):
    """Golden-section refinement of ``max |func|`` around the grid argmax.

    Returns
    -------
    x, value : float
        Location and value of the refined maximum (never below the grid maximum).
    """
    i = int(np.argmax(values))
    best_x, best = float(grid[i]), float(values[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    if hi <= lo:
        return best_x, best
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = float(func(c)), float(func(d))
    for _ in range(iterations):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = float(func(c))
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = float(func(d))
    for x, v in ((c, fc), (d, fd)):
        if v > best:
            best_x, best = x, v
    return best_x, best
