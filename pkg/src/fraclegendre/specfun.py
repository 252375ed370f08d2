"""Special-function kernel.

Log-Gamma and Gamma ratios, the two-sided envelope for Gamma ratios with a
non-integer gap, Legendre and real-parameter Jacobi polynomials, and
terminating Gauss hypergeometric sums in extended precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special

from .errors import DomainError, IntegerGap, ParameterPole

__all__ = [
    "DEFAULT_BITS",
    "GammaRatioQuery",
    "JacobiParams",
    "log_gamma",
    "gamma_ratio",
    "log_gamma_ratio",
    "kershaw_envelope",
    "legendre_eval",
    "legendre_table",
    "jacobi_general_eval",
    "jacobi_general_table",
    "jacobi_general_reference",
    "hyp2f1_terminating",
]

#: Working precision (bits) of the extended-precision reference paths.
DEFAULT_BITS = 200


def log_gamma(x):
    """Natural logarithm of the Gamma function for positive arguments.

    Parameters
    ----------
    x : float or array_like
        Positive argument(s).

    Returns
    -------
    float or ndarray
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if arr.ndim == 0:
        return math.lgamma(float(arr))
    return special.gammaln(arr)


@dataclass(frozen=True)
class GammaRatioQuery:
    """Arguments of ``Gamma(z + a) / Gamma(z + b)``."""

    a: float
    b: float
    z: float

    def __post_init__(self):
        if not (self.z + self.a > 0 and self.z + self.b > 0):
            raise DomainError(
                f"Gamma ratio needs z + a > 0 and z + b > 0, got a={self.a}, b={self.b}, z={self.z}"
            )


_STIRLING_FROM = 10.0
# B_{2k} / (2k (2k - 1)), k = 1..8
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360, 1 / 156, -3617 / 122400)


def _stirling_log_ratio(x1, x2, d):
    # log Gamma(x1) - log Gamma(x2), d = x1 - x2 passed exactly, from the
    # Stirling series with the leading terms combined through log1p so that
    # nothing large cancels
    lead = d * math.log(x2) + (x1 - 0.5) * math.log1p(d / x2) - d
    tail = sum(c * (x1 ** (1 - 2 * k) - x2 ** (1 - 2 * k)) for k, c in enumerate(_STIRLING, 1))
    return lead + tail


def log_gamma_ratio(a, b, z):
    """``log(Gamma(z + a) / Gamma(z + b))`` for positive Gamma arguments."""
    q = GammaRatioQuery(float(a), float(b), float(z))
    if q.a == q.b:
        return 0.0
    if min(q.z + q.a, q.z + q.b) >= _STIRLING_FROM:
        return _stirling_log_ratio(q.z + q.a, q.z + q.b, q.a - q.b)
    r = special.poch(q.z + q.b, q.a - q.b)
    if np.isfinite(r) and r > 0:
        return math.log(r)
    return math.lgamma(q.z + q.a) - math.lgamma(q.z + q.b)


def gamma_ratio(a, b, z):
    """``Gamma(z + a) / Gamma(z + b)``.

    Evaluated as a Pochhammer symbol ``(z + b)_{a - b}``, which is accurate
    for large ``z`` where a difference of log-Gammas loses digits. Falls
    back to the log-Gamma difference when the Pochhammer symbol over- or
    underflows.

    Examples
    --------
    >>> gamma_ratio(1.0, 0.0, 2.5)
    2.5
    """
    q = GammaRatioQuery(float(a), float(b), float(z))
    if q.a == q.b:
        return 1.0
    if min(q.z + q.a, q.z + q.b) >= _STIRLING_FROM:
        return math.exp(_stirling_log_ratio(q.z + q.a, q.z + q.b, q.a - q.b))
    r = special.poch(q.z + q.b, q.a - q.b)
    if np.isfinite(r) and r > 0:
        return float(r)
    return math.exp(math.lgamma(q.z + q.a) - math.lgamma(q.z + q.b))


def kershaw_envelope(a, b, z):
    """Two-sided bound on ``Gamma(z + a) / Gamma(z + b)`` for ``b - a`` non-integer.

    With ``b - a = m + mu``, ``m`` a nonnegative integer and ``0 < mu < 1``,

    .. math::

        \\frac{(z + b - 3/2 + \\sqrt{5/4 - \\mu})^{-\\mu}}{(z + a)_m}
        < \\frac{\\Gamma(z + a)}{\\Gamma(z + b)}
        < \\frac{(z + b - (\\mu + 1)/2)^{-\\mu}}{(z + a)_m}.

    Parameters
    ----------
    a, b : float
        Offsets with ``b > a``.
    z : float
        Argument with ``z + a > 0`` and ``z + b > 1``.

    Returns
    -------
    lower, upper : float

    Raises
    ------
    IntegerGap
        If ``b - a`` is an integer; use the exact Pochhammer symbol instead.
    """
    gap = b - a
    if gap <= 0:
        raise DomainError(f"envelope needs b > a, got a={a}, b={b}")
    m = math.floor(gap)
    mu = gap - m
    if mu == 0.0:
        raise IntegerGap(f"b - a = {gap} is an integer; the ratio is an exact Pochhammer symbol")
    if not (z + a > 0 and z + b > 1):
        raise DomainError(f"envelope needs z + a > 0 and z + b > 1, got a={a}, b={b}, z={z}")
    poch = special.poch(z + a, m) if m else 1.0
    lower = (z + b - 1.5 + math.sqrt(1.25 - mu)) ** (-mu) / poch
    upper = (z + b - 0.5 * (mu + 1.0)) ** (-mu) / poch
    return lower, upper


def _check_abscissa(x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("abscissa must lie in [-1, 1]")
    return arr


def legendre_table(nmax, x):
    """Legendre polynomials ``P_0..P_nmax`` at ``x`` by the three-term recurrence.

    Returns
    -------
    ndarray
        Shape ``(nmax + 1,) + shape(x)``.
    """
    if nmax < 0:
        raise DomainError("degree must be nonnegative")
    x = _check_abscissa(x)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for n in range(2, nmax + 1):
        out[n] = ((2 * n - 1) * x * out[n - 1] - (n - 1) * out[n - 2]) / n
    return out


def legendre_eval(n, x):
    """Legendre polynomial ``P_n(x)``.

    Examples
    --------
    >>> legendre_eval(2, 0.0)
    -0.5
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    x = _check_abscissa(x)
    if n == 0:
        return np.ones_like(x)[()] if x.ndim else 1.0
    p0, p1 = np.ones_like(x), x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1[()] if p1.ndim == 0 else p1


@dataclass(frozen=True)
class JacobiParams:
    """Degree, real parameters and abscissa of a Jacobi polynomial."""

    n: int
    alpha: float
    beta: float
    x: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("degree must be nonnegative")
        if abs(self.x) > 1:
            raise DomainError("abscissa must lie in [-1, 1]")


def _recurrence_degenerate(nmax, alpha, beta):
    s = alpha + beta
    return any(2 * n * (n + s) * (2 * n + s - 2) == 0 for n in range(2, nmax + 1))


def jacobi_general_table(nmax, alpha, beta, x):
    """Jacobi polynomials ``P_0..P_nmax`` with real parameters at ``x``.

    Degrees 0 and 1 come from the hypergeometric definition, higher degrees
    from the three-term recurrence in the degree. If a recurrence
    denominator vanishes for these parameters, every degree is taken from
    the extended-precision hypergeometric sum instead.

    Returns
    -------
    ndarray
        Shape ``(nmax + 1,) + shape(x)``.
    """
    if nmax < 0:
        raise DomainError("degree must be nonnegative")
    x = _check_abscissa(x)
    a, b = float(alpha), float(beta)
    out = np.empty((nmax + 1,) + x.shape)
    if _recurrence_degenerate(nmax, a, b):
        flat = x.reshape(-1)
        for n in range(nmax + 1):
            vals = [jacobi_general_reference(n, a, b, float(t)) for t in flat]
            out[n] = np.asarray(vals).reshape(x.shape)
        return out
    s = a + b
    out[0] = 1.0
    if nmax >= 1:
        out[1] = (a + 1.0) + 0.5 * (s + 2.0) * (x - 1.0)
    for n in range(2, nmax + 1):
        c = 2 * n + s
        lhs = 2.0 * n * (n + s) * (c - 2.0)
        lin = (c - 1.0) * (c * (c - 2.0) * x + (a * a - b * b))
        back = 2.0 * (n + a - 1.0) * (n + b - 1.0) * c
        out[n] = (lin * out[n - 1] - back * out[n - 2]) / lhs
    return out


def jacobi_general_eval(n, alpha, beta, x):
    """Jacobi polynomial ``P_n^{(alpha, beta)}(x)`` with real parameters.

    Examples
    --------
    >>> round(float(jacobi_general_eval(2, 1.5, -1.5, 1.0)), 12)
    4.375
    """
    p = JacobiParams(int(n), float(alpha), float(beta), 0.0)
    vals = jacobi_general_table(p.n, p.alpha, p.beta, x)
    res = vals[p.n]
    return float(res) if np.ndim(res) == 0 else res


def hyp2f1_terminating(a, b, c, z, bits=DEFAULT_BITS):
    """Terminating Gauss hypergeometric sum ``2F1(a, b; c; z)`` with ``a = -n``.

    The ``n + 1`` terms are accumulated with ``bits`` of working precision
    and rounded to double at the end, which removes the cancellation that
    ruins a double-precision sum for large ``n``.

    Raises
    ------
    ParameterPole
        If ``c + j = 0`` for some ``0 <= j < n``.

    Examples
    --------
    >>> hyp2f1_terminating(-2, 3.0, 1.0, 0.5)
    -0.5
    """
    n = -int(a)
    if n < 0 or a != -n:
        raise DomainError(f"first parameter must be a nonpositive integer, got {a!r}")
    for j in range(n):
        if c + j == 0:
            raise ParameterPole(f"c = {c} hits a pole at term {j + 1}")
    ctx = mpmath.MPContext()
    ctx.prec = bits
    bb, cc, zz = ctx.mpf(b), ctx.mpf(c), ctx.mpf(z)
    term = ctx.mpf(1)
    total = ctx.mpf(1)
    for j in range(n):
        term = term * (j - n) * (bb + j) / ((cc + j) * (j + 1)) * zz
        total += term
    return float(total)


def jacobi_general_reference(n, alpha, beta, x, bits=DEFAULT_BITS):
    """Extended-precision ``P_n^{(alpha, beta)}(x)`` from its hypergeometric definition."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    ctx = mpmath.MPContext()
    ctx.prec = bits
    lead = ctx.rf(ctx.mpf(alpha) + 1, n) / ctx.factorial(n)
    # the sum is rebuilt here at the same precision so the prefactor does not round twice
    bb = ctx.mpf(n) + ctx.mpf(alpha) + ctx.mpf(beta) + 1
    cc = ctx.mpf(alpha) + 1
    zz = (1 - ctx.mpf(x)) / 2
    term = ctx.mpf(1)
    total = ctx.mpf(1)
    for j in range(n):
        if cc + j == 0:
            # (alpha+1)_n / (alpha+1)_j cancels the pole; use the polynomial form directly
            return _jacobi_reference_expanded(ctx, n, alpha, beta, x)
        term = term * (j - n) * (bb + j) / ((cc + j) * (j + 1)) * zz
        total += term
    return float(lead * total)


def _jacobi_reference_expanded(ctx, n, alpha, beta, x):
    # sum_j C(n, j) (n+a+b+1)_j (a+j+1)_{n-j} / n! * ((x-1)/2)^j
    a, b = ctx.mpf(alpha), ctx.mpf(beta)
    w = (ctx.mpf(x) - 1) / 2
    total = ctx.mpf(0)
    for j in range(n + 1):
        total += ctx.binomial(n, j) * ctx.rf(n + a + b + 1, j) * ctx.rf(a + j + 1, n - j) * w**j
    return float(total / ctx.factorial(n))
