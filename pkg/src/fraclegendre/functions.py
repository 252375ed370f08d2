"""Functions with algebraic singularities and the metadata the solvers need.

Every function is vectorised over numpy arrays and knows its derivatives of
any order, the location and strength of its singular points, and its leading
one-sided behaviour there. Model functions also evaluate in mpmath arithmetic
for the extended-precision quadrature path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, InsufficientRegularity

__all__ = [
    "Singularity",
    "Modulator",
    "SingularFunction",
    "InteriorPlusPower",
    "AbsPower",
    "AbsX",
    "EndpointPower",
    "BlackBox",
    "Derivative",
    "Reflected",
    "RegularityProfile",
    "BVSamples",
    "falling",
    "smooth",
    "polynomial",
]


def falling(mu, j):
    """Falling factorial ``mu (mu - 1) ... (mu - j + 1)``."""
    out = 1.0
    for i in range(j):
        out *= mu - i
    return out


@dataclass(frozen=True)
class Singularity:
    """Algebraic singular point.

    ``left`` and ``right`` are the exponents of the one-sided behaviour
    ``|x - location|**exponent``; ``None`` means the function is smooth on
    that side.
    """

    location: float
    left: Optional[float] = None
    right: Optional[float] = None

    def shifted(self, j):
        return Singularity(
            self.location,
            None if self.left is None else self.left - j,
            None if self.right is None else self.right - j,
        )

    def mirrored(self, center):
        return Singularity(2.0 * center - self.location, self.right, self.left)


_MODULATORS = {
    "one": (lambda j, x: np.ones_like(x) if j == 0 else np.zeros_like(x),
            lambda ctx, j, x: ctx.mpf(1) if j == 0 else ctx.mpf(0)),
    "sin": (lambda j, x: np.sin(x + 0.5 * j * np.pi),
            lambda ctx, j, x: ctx.sin(x + j * ctx.pi / 2)),
    "cos": (lambda j, x: np.cos(x + 0.5 * j * np.pi),
            lambda ctx, j, x: ctx.cos(x + j * ctx.pi / 2)),
    "exp": (lambda j, x: np.exp(x),
            lambda ctx, j, x: ctx.exp(x)),
}


@dataclass(frozen=True)
class Modulator:
    """Smooth factor ``g`` with derivatives of every order.

    ``name`` selects one of ``one``, ``sin``, ``cos``, ``exp``; use
    :meth:`custom` for anything else.
    """

    name: str = "one"
    func: Optional[Callable] = field(default=None, compare=False, repr=False)
    mp_func: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.func is None and self.name not in _MODULATORS:
            raise DomainError(f"unknown modulator {self.name!r}; choose from {sorted(_MODULATORS)}")

    @classmethod
    def custom(cls, name, derivatives, mp_derivatives=None):
        """Modulator from ``derivatives(j, x)`` returning the j-th derivative."""
        return cls(name, derivatives, mp_derivatives)

    @property
    def is_one(self):
        return self.func is None and self.name == "one"

    def __call__(self, x, j=0):
        f = self.func if self.func is not None else _MODULATORS[self.name][0]
        return f(j, np.asarray(x, dtype=float))

    def mp(self, ctx, x, j=0):
        if self.func is not None:
            if self.mp_func is None:
                raise InsufficientRegularity(f"modulator {self.name!r} has no mpmath evaluator")
            return self.mp_func(ctx, j, x)
        return _MODULATORS[self.name][1](ctx, j, x)


class SingularFunction:
    """Base class of the function variants.

    Subclasses implement :meth:`derivative`, :attr:`singularities` and
    :meth:`local_behaviour`; ``__call__`` is the zeroth derivative.
    """

    singularities: tuple = ()

    def __call__(self, x):
        return self.derivative(0, x)

    def derivative(self, j, x):
        raise NotImplementedError

    def local_behaviour(self, point, side, j=0):
        """Leading behaviour ``coeff * |t - point|**gamma`` of the j-th derivative.

        Parameters
        ----------
        point : float
        side : {"left", "right"}
            Side of ``point`` from which ``t`` approaches.
        j : int

        Returns
        -------
        gamma, coeff : float
            ``gamma = 0`` with ``coeff`` the one-sided limit when the
            derivative is bounded there.
        """
        for s in self.singularities:
            if s.location == point:
                raise InsufficientRegularity("no leading-term metadata at this singular point")
        return 0.0, float(self.derivative(j, np.float64(point)))

    def singular_exponent(self, point, side):
        """Exponent to absorb into a quadrature weight at ``point`` (0 if smooth)."""
        for s in self.singularities:
            if s.location == point:
                e = s.right if side == "right" else s.left
                return 0.0 if e is None or e == int(e) and e >= 0 else float(e)
        return 0.0

    def breakpoints(self):
        return tuple(sorted(s.location for s in self.singularities))

    def mp_value(self, ctx, x):
        raise InsufficientRegularity(f"{type(self).__name__} has no mpmath evaluator")

    def derivative_function(self, j):
        return self if j == 0 else Derivative(self, j)


def _positive_part(x):
    return np.maximum(x, 0.0)


@dataclass(frozen=True)
class InteriorPlusPower(SingularFunction):
    """``(x - theta)_+ ** mu`` with ``theta`` in (-1, 1) and ``mu > -1``."""

    theta: float
    mu: float

    def __post_init__(self):
        if not -1.0 < self.theta < 1.0:
            raise DomainError("theta must lie in (-1, 1)")
        if not self.mu > -1.0:
            raise DomainError("mu must exceed -1")

    @property
    def singularities(self):
        return (Singularity(self.theta, None, self.mu),)

    def derivative(self, j, x):
        x = np.asarray(x, dtype=float)
        d = x - self.theta
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(d > 0, falling(self.mu, j) * np.abs(d) ** (self.mu - j), 0.0)
        if self.mu - j == 0:
            out = np.where(d >= 0, falling(self.mu, j), 0.0)
        return out[()] if out.ndim == 0 else out

    def local_behaviour(self, point, side, j=0):
        if point == self.theta:
            if side == "left":
                return 0.0, 0.0
            return self.mu - j, falling(self.mu, j)
        return 0.0, float(self.derivative(j, np.float64(point)))

    def mp_value(self, ctx, x):
        return (x - self.theta) ** self.mu if x > self.theta else ctx.mpf(0)


@dataclass(frozen=True)
class AbsPower(SingularFunction):
    """``|x| ** mu`` with ``mu > 0``."""

    mu: float

    def __post_init__(self):
        if not self.mu > 0.0:
            raise DomainError("mu must be positive")

    @property
    def singularities(self):
        return (Singularity(0.0, self.mu, self.mu),)

    def derivative(self, j, x):
        x = np.asarray(x, dtype=float)
        a = np.abs(x)
        c = falling(self.mu, j)
        with np.errstate(divide="ignore", invalid="ignore"):
            mag = c * a ** (self.mu - j) if self.mu - j != 0 else np.full_like(a, c)
        out = np.where(x < 0, (-1.0) ** j * mag, mag)
        return out[()] if out.ndim == 0 else out

    def local_behaviour(self, point, side, j=0):
        if point == 0.0:
            sign = (-1.0) ** j if side == "left" else 1.0
            return self.mu - j, sign * falling(self.mu, j)
        return 0.0, float(self.derivative(j, np.float64(point)))

    def mp_value(self, ctx, x):
        return abs(x) ** self.mu


@dataclass(frozen=True)
class AbsX(AbsPower):
    """``|x|``."""

    mu: float = field(default=1.0, init=False)


@dataclass(frozen=True)
class EndpointPower(SingularFunction):
    """``(1 + x) ** mu * g(x)`` with ``mu > -1`` and a smooth modulator ``g``."""

    mu: float
    modulator: Modulator = Modulator("one")

    def __post_init__(self):
        if not self.mu > -1.0:
            raise DomainError("mu must exceed -1")

    @property
    def singularities(self):
        return (Singularity(-1.0, None, self.mu),)

    def derivative(self, j, x):
        x = np.asarray(x, dtype=float)
        s = 1.0 + x
        out = np.zeros_like(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            for i in range(j + 1):
                c = math.comb(j, i) * falling(self.mu, i)
                if c == 0.0:
                    continue
                gi = self.modulator(x, j - i)
                if self.modulator.is_one and j - i > 0:
                    continue
                p = s ** (self.mu - i) if self.mu - i != 0 else np.ones_like(s)
                out = out + c * p * gi
        return out[()] if out.ndim == 0 else out

    def local_behaviour(self, point, side, j=0):
        if point == -1.0:
            return self.mu - j, falling(self.mu, j) * float(self.modulator(-1.0))
        return 0.0, float(self.derivative(j, np.float64(point)))

    def mp_value(self, ctx, x):
        return (1 + x) ** self.mu * self.modulator.mp(ctx, x)


@dataclass(frozen=True)
class BlackBox(SingularFunction):
    """User-supplied function with declared metadata.

    Parameters
    ----------
    evaluator : callable
        Vectorised ``x -> u(x)``.
    singularity : float, optional
        Location of the (single) singular point, if any.
    exponent : float
        Exponent ``e`` of the behaviour ``leading * |x - singularity|**e``.
    hint : RegularityProfile, optional
        Regularity metadata required by Caputo derivatives and seminorms.
    derivatives : callable, optional
        ``(j, x) -> u^{(j)}(x)``.
    leading : float
        Leading coefficient at the singular point.
    mp_evaluator : callable, optional
        ``(ctx, x) -> u(x)`` in mpmath arithmetic.
    """

    evaluator: Callable
    singularity: Optional[float] = None
    exponent: float = 0.0
    hint: Optional["RegularityProfile"] = None
    derivatives: Optional[Callable] = field(default=None, compare=False)
    leading: float = 1.0
    mp_evaluator: Optional[Callable] = field(default=None, compare=False)

    @property
    def singularities(self):
        if self.singularity is None:
            return ()
        return (Singularity(self.singularity, self.exponent, self.exponent),)

    def __call__(self, x):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=float)

    def derivative(self, j, x):
        if j == 0:
            return self(x)
        if self.derivatives is None:
            raise InsufficientRegularity("black-box function has no derivative evaluator")
        return np.asarray(self.derivatives(j, np.asarray(x, dtype=float)), dtype=float)

    def local_behaviour(self, point, side, j=0):
        if self.singularity is not None and point == self.singularity:
            sign = (-1.0) ** j if side == "left" else 1.0
            return self.exponent - j, sign * self.leading * falling(self.exponent, j)
        return 0.0, float(self.derivative(j, np.float64(point)))

    def mp_value(self, ctx, x):
        if self.mp_evaluator is None:
            raise InsufficientRegularity("black-box function has no mpmath evaluator")
        return self.mp_evaluator(ctx, x)


@dataclass(frozen=True)
class Derivative(SingularFunction):
    """The ``order``-th derivative of another function."""

    parent: SingularFunction
    order: int

    @property
    def singularities(self):
        return tuple(s.shifted(self.order) for s in self.parent.singularities)

    def derivative(self, j, x):
        return self.parent.derivative(self.order + j, x)

    def local_behaviour(self, point, side, j=0):
        return self.parent.local_behaviour(point, side, self.order + j)


@dataclass(frozen=True)
class Reflected(SingularFunction):
    """``x -> parent(2 * center - x)``."""

    parent: SingularFunction
    center: float

    @property
    def singularities(self):
        return tuple(s.mirrored(self.center) for s in self.parent.singularities)

    def derivative(self, j, x):
        x = np.asarray(x, dtype=float)
        return (-1.0) ** j * self.parent.derivative(j, 2.0 * self.center - x)

    def local_behaviour(self, point, side, j=0):
        other = "right" if side == "left" else "left"
        g, c = self.parent.local_behaviour(2.0 * self.center - point, other, j)
        return g, (-1.0) ** j * c


_SIDES = ("left-endpoint", "right-endpoint")


@dataclass(frozen=True)
class RegularityProfile:
    """Regularity class and seminorm of a singular function.

    Parameters
    ----------
    k : int
        Order of absolute continuity, ``k >= 1``.
    mu : float
        Fractional order with ``k - 1 < mu <= k``.
    location : float or str
        Interior singular point, or ``"left-endpoint"`` / ``"right-endpoint"``.
    m : int
        Extra smoothness of the endpoint Caputo derivative.
    seminorm : float
        Interior or endpoint seminorm.
    """

    k: int
    mu: float
    location: object = 0.0
    m: int = 0
    seminorm: float = 0.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError("k must be a positive integer")
        if not self.k - 1 < self.mu <= self.k:
            raise DomainError(f"mu must lie in (k-1, k], got k={self.k}, mu={self.mu}")
        if self.m < 0 or int(self.m) != self.m:
            raise DomainError("m must be a nonnegative integer")
        if not self.seminorm >= 0.0:
            raise DomainError("seminorm must be nonnegative")
        if isinstance(self.location, str):
            if self.location not in _SIDES:
                raise DomainError(f"location must be a number or one of {_SIDES}")
        elif not -1.0 < float(self.location) < 1.0:
            raise DomainError("interior location must lie in (-1, 1)")

    @classmethod
    def for_order(cls, mu, **kwargs):
        """Profile with ``k = ceil(mu)``."""
        return cls(max(1, math.ceil(mu)), mu, **kwargs)

    @property
    def is_integer(self):
        return self.mu == self.k


@dataclass(frozen=True)
class BVSamples:
    """Samples of a function of bounded variation.

    ``jumps`` holds ``(location, left_limit, right_limit)`` triples.
    """

    grid: np.ndarray
    values: np.ndarray
    jumps: tuple = ()

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape:
            raise DomainError("grid and values must be 1-d arrays of equal length")
        if g.size and np.any(np.diff(g) <= 0):
            raise DomainError("grid must be strictly increasing")
        for loc, _, _ in self.jumps:
            if g.size and not g[0] <= loc <= g[-1]:
                raise DomainError("jump points must lie in the grid span")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "jumps", tuple(tuple(map(float, j)) for j in self.jumps))


def smooth(modulator="exp"):
    """Analytic :class:`BlackBox` built from a modulator, with all derivatives."""
    g = modulator if isinstance(modulator, Modulator) else Modulator(modulator)
    return BlackBox(g, hint=RegularityProfile(64, 64.0), derivatives=lambda j, x: g(x, j),
                    mp_evaluator=lambda ctx, x: g.mp(ctx, x))


def polynomial(coefficients):
    """Polynomial :class:`BlackBox` from power-basis coefficients (lowest first)."""
    p = np.polynomial.Polynomial(np.asarray(coefficients, dtype=float))

    def mp_value(ctx, x):
        return ctx.polyval([ctx.mpf(float(c)) for c in p.coef[::-1]], x)

    return BlackBox(p, hint=RegularityProfile(64, 64.0), derivatives=lambda j, x: p.deriv(j)(x),
                    mp_evaluator=mp_value)
