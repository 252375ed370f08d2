"""Measured approximation errors, convergence tables and figure data.

Maximum-norm errors are sampled on :func:`~fraclegendre.legexp.evaluation_grid`
and refined by golden-section search around the grid argmax. L2 errors come
from the Parseval tail of a longer reference series whose truncation is
certified by a geometric tail estimate.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import absx_pointwise_bounds
from .errors import BelowThreshold, DomainError, NumericalError
from .functions import AbsX
from .legexp import (
    DEFAULT_TOL,
    closed_form_threshold,
    coeff_closed_model,
    coeff_quadrature,
    evaluation_grid,
    expand,
    partial_sum_eval,
    refine_maximum,
)
from .specfun import legendre_table

__all__ = [
    "NORMS",
    "ErrorReport",
    "ConvergenceTable",
    "TightnessRow",
    "reference_degree",
    "noise_floor",
    "parseval_tail",
    "reference_series",
    "measure_errors",
    "convergence_table",
    "decay_coefficient",
    "decay_table",
    "tightness_profile",
    "figure1_data",
    "write_table1",
    "write_table2",
    "write_table3",
    "write_profile",
    "write_figure1",
]

NORMS = ("linf", "weighted_linf", "l2")
#: Relative excess of the L2 error the unresolved tail may cause.
TAIL_FRACTION = 1e-3
#: Largest reference degree tried before the L2 tail monitor gives up.
MAX_REFERENCE_DEGREE = 2**20


@dataclass(frozen=True)
class ErrorReport:
    """Errors of the truncated Legendre series of degree ``N``.

    ``l2`` is ``None`` when it was not requested. ``per_point_profile``
    holds ``(x, |u - pi_N u|)`` samples when requested.
    """

    N: int
    linf: float
    weighted_linf: float
    l2: Optional[float]
    argmax_location: float
    per_point_profile: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        vals = [self.linf, self.weighted_linf] + ([] if self.l2 is None else [self.l2])
        if any(v < 0 for v in vals):
            raise DomainError("errors must be nonnegative")

    def get(self, norm):
        if norm not in NORMS:
            raise DomainError(f"unknown norm {norm!r}")
        return getattr(self, norm)


def _orders(degrees, errors):
    out = [math.nan]
    for j in range(1, len(errors)):
        a, b = errors[j - 1], errors[j]
        out.append(math.log2(a / b) if a > 0 and b > 0 else math.nan)
    return tuple(out)


@dataclass(frozen=True)
class ConvergenceTable:
    """Errors over doubling degrees, one column per norm.

    ``orders(norm)[j] = log2(error[j-1] / error[j])``; the first entry is NaN.
    """

    degrees: tuple
    columns: dict
    mu: Optional[float] = None

    def __post_init__(self):
        d = tuple(int(n) for n in self.degrees)
        if len(d) < 2:
            raise DomainError("at least two degrees are required")
        if any(b != 2 * a for a, b in zip(d[:-1], d[1:])):
            raise DomainError("degrees must double from row to row")
        cols = {k: tuple(float(v) for v in vals) for k, vals in self.columns.items()}
        if any(len(v) != len(d) for v in cols.values()):
            raise DomainError("every column needs one value per degree")
        object.__setattr__(self, "degrees", d)
        object.__setattr__(self, "columns", cols)

    def orders(self, norm):
        return _orders(self.degrees, self.columns[norm])

    def rows(self, norm):
        """``(N, error, order)`` triples."""
        return list(zip(self.degrees, self.columns[norm], self.orders(norm)))


@dataclass(frozen=True)
class TightnessRow:
    """Pointwise errors of the ``|x|`` expansion at 0 and at the endpoints."""

    N: int
    error_at_0: float
    bound_at_0: float
    error_at_pm1: float
    bound_at_pm1: float
    argmax_location: float
    profile: tuple = field(compare=False)


def _locations(u):
    return sorted({float(s.location) for s in u.singularities if -1.0 <= s.location <= 1.0})


def reference_degree(N):
    """Starting degree ``max(4N, N + 256)`` of the L2 reference series."""
    return max(4 * N, N + 256)


def noise_floor(series):
    """Rounding level of each coefficient of a series from :func:`expand`.

    Closed-form coefficients carry relative rounding only, so the floor is
    ``64 eps max|c|``. Quadrature coefficients ``(2n+1)/2 int u P_n`` carry
    absolute rounding that grows like ``n + 1/2``.
    """
    c = series.coefficients
    base = 64.0 * np.finfo(float).eps * float(np.max(np.abs(c)))
    n = np.arange(c.size)
    quad = np.array([p == "quadrature" for p in series.provenance] or [False] * c.size)
    return np.where(quad, base * (n + 0.5), base)


def parseval_tail(coefficients, N, noise=None):
    """Squared L2 error of the degree-``N`` truncation from a longer series.

    The terms ``2 c_n^2 / (2n + 1)`` beyond the reference degree ``M`` are
    estimated from the two last octaves ``(M/4, M/2]`` and ``(M/2, M]``,
    assuming they shrink geometrically from octave to octave. Coefficients
    below ``noise`` (default: the rounding level ``64 eps max|c|``) are
    treated as zero.

    Returns
    -------
    partial, tail : float
        Sum of the terms over ``(N, M]`` and the estimate of the rest. ``tail``
        is infinite when the octave sums do not decrease.
    """
    c = np.asarray(coefficients, dtype=float)
    M = c.size - 1
    if M < 4 * N or M < 4:
        raise DomainError("the reference series must reach at least degree 4N")
    if noise is None:
        noise = 64.0 * np.finfo(float).eps * np.max(np.abs(c))
    c = np.where(np.abs(c) < noise, 0.0, c)
    n = np.arange(M + 1)
    t = 2.0 * c * c / (2 * n + 1)
    partial = math.fsum(t[N + 1:])
    s1 = math.fsum(t[M // 4 + 1: M // 2 + 1])
    s2 = math.fsum(t[M // 2 + 1:])
    if s2 == 0.0:
        return partial, 0.0
    if s1 == 0.0 or s2 >= s1:
        return partial, math.inf
    r = s2 / s1
    return partial, s2 * r / (1.0 - r)


def _tail_ok(partial, tail):
    if tail == 0.0:
        return True
    if not math.isfinite(tail) or partial == 0.0:
        return False
    return math.sqrt(1.0 + tail / partial) - 1.0 <= TAIL_FRACTION


def reference_series(u, N, tol=DEFAULT_TOL, workers=1, max_degree=MAX_REFERENCE_DEGREE):
    """Reference series for the L2 errors of all truncations up to degree ``N``.

    The degree starts at :func:`reference_degree` and doubles until the tail
    estimate of :func:`parseval_tail` changes the L2 error of the degree-``N``
    truncation by at most ``TAIL_FRACTION``.

    Raises
    ------
    NumericalError
        If ``max_degree`` is reached first.
    """
    M = reference_degree(N)
    while M <= max_degree:
        s = expand(u, M, tol=tol, workers=workers)
        partial, tail = parseval_tail(s.coefficients, N, noise_floor(s))
        if _tail_ok(partial, tail):
            return s
        M *= 2
    raise NumericalError(f"L2 tail not certified below degree {max_degree}")


def _l2_error(reference, N):
    partial, tail = parseval_tail(reference.coefficients, N, noise_floor(reference))
    if not _tail_ok(partial, tail):
        raise NumericalError(f"L2 tail of the reference series not certified for N={N}")
    return math.sqrt(partial + tail)


def _max_errors(u, series, N, keep_profile):
    x = evaluation_grid(_locations(u), N)
    err = np.abs(u(x) - partial_sum_eval(series, x))
    w = np.clip(1.0 - x * x, 0.0, 1.0) ** 0.25

    def abs_err(t):
        return abs(float(u(t)) - partial_sum_eval(series, t))

    def weighted(t):
        return (max(1.0 - t * t, 0.0)) ** 0.25 * abs_err(t)

    loc, linf = refine_maximum(abs_err, x, err)
    _, wlinf = refine_maximum(weighted, x, w * err)
    profile = (x, err) if keep_profile else None
    return linf, min(wlinf, linf), loc, profile


def measure_errors(u, N, *, l2=True, reference=None, series=None, tol=DEFAULT_TOL,
                   keep_profile=False):
    """Errors of ``u - pi_N u``.

    Parameters
    ----------
    u : SingularFunction
    N : int
    l2 : bool
        Compute the L2 error from a reference series.
    reference : LegendreSeries, optional
        Reference series of degree at least ``4N``; built by
        :func:`reference_series` when omitted.
    series : LegendreSeries, optional
        Series of degree at least ``N``; its truncation is used.
    keep_profile : bool
        Attach the sampled pointwise error.

    Returns
    -------
    ErrorReport
    """
    if N < 0:
        raise DomainError("degree must be nonnegative")
    if series is None and reference is not None and reference.degree >= N:
        series = reference
    if series is None:
        series = expand(u, N, tol=tol)
    s = series.truncate(N)
    linf, wlinf, loc, profile = _max_errors(u, s, N, keep_profile)
    l2_val = None
    if l2:
        if reference is None:
            reference = reference_series(u, N, tol=tol)
        l2_val = _l2_error(reference, N)
    return ErrorReport(N, linf, wlinf, l2_val, loc, profile)


def _map(func, items, workers):
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(i) for i in items]


def convergence_table(u, N_list, norms=("linf", "weighted_linf"), *, tol=DEFAULT_TOL, workers=1):
    """Measured errors and orders over doubling degrees.

    A single series of the largest degree serves every row; for ``l2`` a
    single reference series certified at the smallest degree is shared.
    """
    N_list = [int(n) for n in N_list]
    for norm in norms:
        if norm not in NORMS:
            raise DomainError(f"unknown norm {norm!r}")
    if "l2" in norms:
        reference = reference_series(u, max(N_list), tol=tol, workers=workers)
        for N in N_list:
            _l2_error(reference, N)
    else:
        reference = None
    series = reference if reference is not None else expand(u, max(N_list), tol=tol, workers=workers)
    reports = _map(lambda N: measure_errors(u, N, l2="l2" in norms, reference=reference,
                                            series=series, tol=tol), N_list, workers)
    cols = {norm: [r.get(norm) for r in reports] for norm in norms}
    return ConvergenceTable(tuple(N_list), cols, getattr(u, "mu", None))


def decay_coefficient(u, n, tol=DEFAULT_TOL):
    """``u_n`` by the closed form when it applies, else by quadrature."""
    try:
        if n >= closed_form_threshold(u):
            return coeff_closed_model(u, n, tol=tol)
    except BelowThreshold:
        pass
    return coeff_quadrature(u, n, tol)


def decay_table(u, n_list, *, tol=DEFAULT_TOL, workers=1):
    """``|u_n|`` and decay orders over doubling ``n``; column ``coeff_abs``."""
    n_list = [int(n) for n in n_list]
    vals = _map(lambda n: abs(decay_coefficient(u, n, tol)), n_list, workers)
    return ConvergenceTable(tuple(n_list), {"coeff_abs": vals}, getattr(u, "mu", None))


def tightness_profile(N_list, u=None, *, keep_profile=True):
    """Pointwise errors of the ``|x|`` expansion against their bounds.

    Returns
    -------
    list of TightnessRow
    """
    u = AbsX() if u is None else u
    if not isinstance(u, AbsX):
        raise DomainError("the pointwise bounds are stated for |x| only")
    rows = []
    series = expand(u, max(N_list))
    for N in N_list:
        b0, b1 = absx_pointwise_bounds(N)
        s = series.truncate(N)
        e0 = abs(partial_sum_eval(s, 0.0))
        e1 = max(abs(1.0 - partial_sum_eval(s, 1.0)), abs(1.0 - partial_sum_eval(s, -1.0)))
        linf, _, loc, profile = _max_errors(u, s, N, keep_profile)
        rows.append(TightnessRow(N, e0, b0, e1, b1, loc, profile if keep_profile else ()))
    return rows


def figure1_data(n, points=2001):
    """``x``, ``P_n(x)`` and ``(1 - x^2)^{1/4} P_n(x)`` on a uniform grid."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    x = np.linspace(-1.0, 1.0, points)
    p = legendre_table(n, x)[n]
    return x, p, np.clip(1.0 - x * x, 0.0, 1.0) ** 0.25 * p


def _fmt(v):
    return "" if v is None or (isinstance(v, float) and math.isnan(v)) else repr(float(v))


def write_table1(stream, tables):
    """``N,linf,linf_order,wlinf,wlinf_order,mu`` rows for one or more tables."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["N", "linf", "linf_order", "wlinf", "wlinf_order", "mu"])
    for t in tables:
        lo, wo = t.orders("linf"), t.orders("weighted_linf")
        for j, N in enumerate(t.degrees):
            w.writerow([N, _fmt(t.columns["linf"][j]), _fmt(lo[j]),
                        _fmt(t.columns["weighted_linf"][j]), _fmt(wo[j]), t.mu])


def write_table2(stream, tables):
    """``n,coeff_abs,order,mu`` rows."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["n", "coeff_abs", "order", "mu"])
    for t in tables:
        o = t.orders("coeff_abs")
        for j, n in enumerate(t.degrees):
            w.writerow([n, _fmt(t.columns["coeff_abs"][j]), _fmt(o[j]), t.mu])


def write_table3(stream, tables):
    """``N,linf,linf_order,l2,l2_order,mu`` rows."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["N", "linf", "linf_order", "l2", "l2_order", "mu"])
    for t in tables:
        lo, l2o = t.orders("linf"), t.orders("l2")
        for j, N in enumerate(t.degrees):
            w.writerow([N, _fmt(t.columns["linf"][j]), _fmt(lo[j]),
                        _fmt(t.columns["l2"][j]), _fmt(l2o[j]), t.mu])


def write_profile(stream, row):
    """``x,error`` rows of a :class:`TightnessRow` profile."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["x", "error"])
    for x, e in zip(*row.profile):
        w.writerow([repr(float(x)), repr(float(e))])


def write_figure1(stream, data):
    """``x,Pn,weighted`` rows from :func:`figure1_data`."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["x", "Pn", "weighted"])
    for x, p, q in zip(*data):
        w.writerow([repr(float(x)), repr(float(p)), repr(float(q))])
