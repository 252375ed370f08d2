"""Adaptive Gauss-Jacobi quadrature for integrands with algebraic endpoint singularities.

An integrand on a panel ``[c, d]`` is assumed to behave like
``(x - c)**left * (d - x)**right * h(x)`` with ``h`` smooth. The Gauss-Jacobi
rule for that weight integrates ``h`` to spectral accuracy. Panels whose
two-rule error estimate is too large are bisected; each child keeps only the
singular exponent of its own outer endpoint.
"""

from __future__ import annotations

import heapq
import math
from functools import lru_cache

import mpmath
import numpy as np
from scipy import special

from .errors import QuadratureError

__all__ = ["gauss_jacobi_rule", "integrate", "integrate_mp"]

_EPS = np.finfo(float).eps
_MAX_NODES = 1024


def _jacobi(q, a, b, x):
    p0 = np.ones_like(x)
    if q == 0:
        return p0
    one = x.dtype.type(1)
    p1 = (a + one) + (a + b + 2 * one) * (x - one) / 2
    for n in range(2, q + 1):
        c = 2 * n + a + b
        p0, p1 = p1, ((c - one) * (c * (c - 2 * one) * x + a * a - b * b) * p1
                      - 2 * (n + a - one) * (n + b - one) * c * p0) / (2 * n * (n + a + b) * (c - 2 * one))
    return p1


@lru_cache(maxsize=512)
def _rule(q, left, right):
    # scipy's weight is (1 - t)**alpha (1 + t)**beta, so the exponent at t = -1 is beta
    with np.errstate(divide="ignore", invalid="ignore"):
        t, _ = special.roots_jacobi(q, right, left)
    # scipy's nodes drift for negative parameters and large q; polish them by
    # Newton steps in extended precision, where 1 - t^2 keeps its relative
    # accuracy near the endpoints, and take weights from the derivative formula
    ld = np.longdouble
    a, b, t = ld(right), ld(left), t.astype(ld)
    for _ in range(3):
        dp = (q + a + b + 1) / 2 * _jacobi(q - 1, a + 1, b + 1, t)
        t = t - _jacobi(q, a, b, t) / dp
    dp = (q + a + b + 1) / 2 * _jacobi(q - 1, a + 1, b + 1, t)
    w = 1 / ((1 - t) * (1 + t) * dp * dp)
    # the constant follows from the zeroth moment 2^{a+b+1} B(a+1, b+1)
    moment = math.exp((left + right + 1.0) * math.log(2.0) + math.lgamma(left + 1.0)
                      + math.lgamma(right + 1.0) - math.lgamma(left + right + 2.0))
    w = (w * (ld(moment) / np.sum(w))).astype(float)
    t = t.astype(float)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def gauss_jacobi_rule(q, left=0.0, right=0.0):
    """Nodes and weights on ``[-1, 1]`` for the weight ``(1 + t)**left (1 - t)**right``.

    Rules are cached, so the returned arrays are read-only.
    """
    return _rule(int(q), float(left), float(right))


def _panel(f, c, d, left, right, q):
    half = 0.5 * (d - c)
    scale = half ** (1.0 + left + right)
    out = []
    for nodes in (q, min(2 * q, _MAX_NODES) if q < _MAX_NODES else q // 2):
        t, w = gauss_jacobi_rule(nodes, left, right)
        x = c + half * (1.0 + t)
        vals = np.asarray(f(x), dtype=float)
        if left:
            vals = vals / (x - c) ** left
        if right:
            vals = vals / (d - x) ** right
        terms = scale * w * vals
        out.append((float(np.sum(terms)), float(np.sum(np.abs(terms)))))
    (v1, _), (v2, l1) = out
    if not (math.isfinite(v1) and math.isfinite(v2)):
        raise QuadratureError("integrand is not finite at quadrature nodes", v2, math.inf)
    return v2, abs(v2 - v1), l1


def integrate(f, c, d, left=0.0, right=0.0, *, rtol=1e-10, atol=0.0, degree=0,
              max_panels=400, full_output=False):
    """Integrate ``f`` over ``[c, d]`` with algebraic endpoint exponents.

    Parameters
    ----------
    f : callable
        Vectorised integrand (the full integrand, including the singular factors).
    c, d : float
        Integration limits with ``c <= d``.
    left, right : float
        Exponents ``> -1`` of the singular behaviour at ``c`` and ``d``.
    rtol, atol : float
        Relative and absolute tolerances. The rounding floor
        ``64 * eps * integral(|f|)`` is always admitted, since no double
        precision rule can do better.
    degree : int
        Polynomial degree of the smooth factor, used to size the rules.
    max_panels : int
        Bisection budget.
    full_output : bool
        Also return the error estimate.

    Returns
    -------
    float, or (float, float) when ``full_output`` is set.

    Raises
    ------
    QuadratureError
        If the tolerance is not met within the panel budget.
    """
    if d < c:
        raise ValueError("integration limits must satisfy c <= d")
    if d == c:
        return (0.0, 0.0) if full_output else 0.0
    q = min(max(24, degree // 2 + 16), _MAX_NODES)
    v, e, l1 = _panel(f, c, d, left, right, q)
    heap = [(-e, c, d, left, right, v, l1)]
    total, err, mass = v, e, l1
    count = 1
    while True:
        target = max(rtol * abs(total), atol, 64.0 * _EPS * mass)
        if err <= target:
            break
        if count >= max_panels:
            raise QuadratureError("panel budget exhausted", total, err)
        ne, a, b, la, rb, pv, pl = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            raise QuadratureError("panel too small to bisect", total, err)
        children = [(a, mid, la, 0.0), (mid, b, 0.0, rb)]
        total -= pv
        err += ne
        mass -= pl
        for ca, cb, cl, cr in children:
            cv, ce, cm = _panel(f, ca, cb, cl, cr, q)
            heapq.heappush(heap, (-ce, ca, cb, cl, cr, cv, cm))
            total += cv
            err += ce
            mass += cm
        count += 1
        # recompute the running sums now and then to keep them from drifting
        if count % 64 == 0:
            total = math.fsum(p[5] for p in heap)
            err = math.fsum(-p[0] for p in heap)
            mass = math.fsum(p[6] for p in heap)
    total = math.fsum(p[5] for p in heap)
    return (total, err) if full_output else total


def integrate_mp(f, points, dps=30, pieces=1, exponents=None):
    """Extended-precision tanh-sinh quadrature.

    Parameters
    ----------
    f : callable
        ``f(ctx, x)`` evaluated with the arithmetic of the mpmath context ``ctx``.
    points : sequence of float
        Breakpoints; singularities must be among them.
    dps : int
        Decimal digits of working precision.
    pieces : int
        Each interval between breakpoints is split into this many equal parts,
        which helps with oscillatory integrands.
    exponents : sequence of (float, float), optional
        Singular exponents at the left and right end of each interval, as in
        :func:`integrate`. A negative exponent ``e`` is removed by the
        substitution ``x = c + (d - c) s**(1 / (1 + e))`` on the adjacent part,
        since tanh-sinh nodes next to an unbounded endpoint lose their
        distance to it to rounding.

    Returns
    -------
    float
    """
    ctx = mpmath.MPContext()
    ctx.dps = dps
    pts = [ctx.mpf(p) for p in points]
    if exponents is None:
        exponents = [(0.0, 0.0)] * (len(pts) - 1)
    total = ctx.mpf(0)
    for (a, b), (ea, eb) in zip(zip(pts[:-1], pts[1:]), exponents):
        grid = [a + (b - a) * ctx.mpf(j) / pieces for j in range(pieces + 1)]
        parts = list(zip(grid[:-1], grid[1:]))
        if ea < 0 and eb < 0 and pieces == 1:
            mid = (a + b) / 2
            parts = [(a, mid), (mid, b)]
        for i, (c, d) in enumerate(parts):
            lo = ea if i == 0 else 0.0
            hi = eb if i == len(parts) - 1 else 0.0
            total += _mp_piece(ctx, f, c, d, lo, hi)
    return float(total)


def _mp_piece(ctx, f, c, d, left, right):
    if left >= 0 and right >= 0:
        return ctx.quad(lambda x: f(ctx, x), [c, d])
    p = 1 / (1 + ctx.mpf(min(left, right)))
    end, sign = (c, 1) if left < 0 else (d, -1)

    # bounded after the substitution; x is formed with enough extra digits to
    # keep its distance to the endpoint, and nodes beyond that are dropped
    def g(s):
        t = s**p
        extra = 5 - int(ctx.log10(t)) if t else math.inf
        if extra > 20 * ctx.dps:
            return ctx.zero
        with ctx.extradps(max(extra, 0)):
            val = f(ctx, end + sign * (d - c) * t)
        return val * (d - c) * p * s ** (p - 1)

    return ctx.quad(g, [0, 1])
