import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclegendre.errors import DomainError, InsufficientRegularity
from fraclegendre.fraccalc import (
    boundary_limit,
    caputo_derivative,
    caputo_order,
    endpoint_caputo_coefficients,
    fractional_taylor_expand,
    rl_integral,
    rl_power_closed,
    total_variation,
)
from fraclegendre.functions import (
    BlackBox,
    BVSamples,
    EndpointPower,
    InteriorPlusPower,
    Modulator,
    polynomial,
    smooth,
)
from fraclegendre.legexp import frac_int_legendre

slow = settings(max_examples=15, deadline=None)


def test_rl_integral_of_one_is_length():
    one = polynomial([1.0])
    assert rl_integral(one, 0.0, None, 1.0, 0.7) == pytest.approx(0.7, rel=1e-12)


def test_rl_integral_power_rule():
    f = EndpointPower(0.5)
    expected = math.gamma(1.5) / math.gamma(2.0)
    assert rl_integral(f, -1.0, None, 0.5, 0.0) == pytest.approx(expected, rel=1e-10)


def test_rl_integral_of_legendre_matches_identity():
    p4 = BlackBox(lambda y: np.polynomial.legendre.legval(y, [0, 0, 0, 0, 1.0]))
    val = rl_integral(p4, None, 1.0, 1.3, 0.2, "right", degree=4)
    assert val == pytest.approx(frac_int_legendre(4, 0.3, 0.2), rel=1e-8)


@pytest.mark.parametrize(
    "endpoint, eta, rho, x, side, expected",
    [
        (0.0, 0.0, 1.0, 0.5, "left", 0.5),
        (0.0, -0.5, 0.5, 0.3, "left", math.sqrt(math.pi)),
        (1.0, 0.7, 0.4, 0.2, "right", math.gamma(1.7) / math.gamma(2.1) * 0.8**1.1),
    ],
)
def test_rl_power_closed_values(endpoint, eta, rho, x, side, expected):
    assert rl_power_closed(endpoint, eta, rho, x, side) == pytest.approx(expected, rel=1e-13)


def test_rl_power_closed_rejects_nonintegrable_power():
    with pytest.raises(DomainError):
        rl_power_closed(0.0, -1.0, 0.5, 0.3)


@slow
@given(st.floats(-0.9, 2.0), st.floats(0.05, 2.5), st.floats(-0.95, 0.95))
def test_rl_integral_matches_power_closed_form(eta, rho, x):
    numeric = rl_integral(EndpointPower(eta), -1.0, None, rho, x)
    assert numeric == pytest.approx(rl_power_closed(-1.0, eta, rho, x), rel=1e-9)


@slow
@given(st.floats(-0.5, 1.5), st.floats(0.1, 0.9), st.floats(0.1, 0.9), st.floats(-0.8, 0.9))
def test_semigroup(eta, r1, r2, x):
    # I^{r1} I^{r2} (1+t)^eta = I^{r1+r2} (1+t)^eta, via the closed form of the inner integral
    def inner_values(y):
        return np.array([rl_power_closed(-1.0, eta, r2, float(t)) for t in np.atleast_1d(y)])

    inner = BlackBox(inner_values, singularity=-1.0, exponent=eta + r2)
    nested = rl_integral(inner, -1.0, None, r1, x)
    assert nested == pytest.approx(rl_power_closed(-1.0, eta, r1 + r2, x), rel=1e-9)


@pytest.mark.parametrize("mu, k", [(0.3, 1), (1.0, 1), (1.7, 2), (3.0, 3)])
def test_caputo_order(mu, k):
    assert caputo_order(mu) == k


@pytest.mark.parametrize("theta, mu, x", [(0.3, 0.6, 0.8), (-0.5, 1.4, 0.1), (0.0, 2.5, 0.9)])
def test_caputo_derivative_of_own_power_is_constant(theta, mu, x):
    u = InteriorPlusPower(theta, mu)
    assert caputo_derivative(u, theta, mu, "left", x) == pytest.approx(math.gamma(mu + 1), rel=1e-9)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_caputo_derivative_integer_order_is_classical(k):
    f = smooth("sin")
    x = 0.4
    assert caputo_derivative(f, -1.0, float(k), "left", x) == pytest.approx(
        float(f.derivative(k, x)), rel=1e-10)


def test_caputo_derivative_matches_series():
    u = EndpointPower(1.2, Modulator("sin"))
    c = endpoint_caputo_coefficients(u)
    assert caputo_derivative(u, -1.0, 1.2, "left", 0.0) == pytest.approx(sum(c[:30]), abs=1e-8)


def test_caputo_derivative_needs_regularity_metadata():
    bare = BlackBox(np.sin)
    with pytest.raises(InsufficientRegularity):
        caputo_derivative(bare, -1.0, 0.5, "left", 0.2)


@slow
@given(st.floats(-0.7, 0.2), st.floats(0.1, 2.9), st.floats(0.05, 0.95), st.sampled_from(["sin", "exp", "cos"]))
def test_fractional_taylor_reconstructs_smooth(theta, mu, frac, name):
    f = smooth(name)
    x = theta + frac * (1.0 - theta)
    parts = fractional_taylor_expand(f, theta, mu, math.ceil(mu), "left", x)
    assert parts.total == pytest.approx(float(f(x)), abs=1e-9)


def test_fractional_taylor_example_sin():
    parts = fractional_taylor_expand(smooth("sin"), 0.0, 1.5, 2, "left", 0.5)
    assert parts.total == pytest.approx(math.sin(0.5), abs=1e-9)


@pytest.mark.parametrize("theta, mu, x", [(0.1, 1.5, 0.7), (-0.4, 0.6, 0.9), (0.3, 2.3, 0.95)])
def test_fractional_taylor_exact_on_power(theta, mu, x):
    parts = fractional_taylor_expand(InteriorPlusPower(theta, mu), theta, mu, math.ceil(mu), "left", x)
    assert abs(parts.remainder) <= 1e-10
    assert parts.total == pytest.approx((x - theta) ** mu, rel=1e-10)


@pytest.mark.parametrize("deg", [0, 1, 2])
def test_fractional_taylor_exact_on_low_degree_polynomials(deg):
    p = polynomial(np.linspace(1.0, -0.5, deg + 1))
    parts = fractional_taylor_expand(p, 0.3, 2.3, 3, "left", 0.95)
    assert abs(parts.remainder) <= 1e-10


def test_fractional_taylor_integer_order_is_classical():
    # mu = k: polynomial part of degree k-1, the k-th derivative term, integral remainder
    f = smooth("exp")
    parts = fractional_taylor_expand(f, 0.0, 2.0, 2, "left", 0.6)
    assert parts.polynomial == pytest.approx(1.0 + 0.6, rel=1e-14)
    assert parts.fractional == pytest.approx(0.6**2 / 2, rel=1e-12)
    assert parts.total == pytest.approx(math.exp(0.6), rel=1e-10)


@pytest.mark.parametrize(
    "gamma, rho, g, kind, value",
    [(0.5, 0.3, 2.0, "zero", 0.0), (-0.5, 0.5, 1.0, "finite", math.sqrt(math.pi)),
     (-0.8, 0.5, 1.0, "infinite", math.inf)],
)
def test_boundary_limit_trichotomy(gamma, rho, g, kind, value):
    lim = boundary_limit(gamma, rho, g)
    assert lim.kind == kind
    assert lim.value == pytest.approx(value)


def test_total_variation_monotone():
    x = np.linspace(0.0, 1.0, 101)
    assert total_variation(BVSamples(x, x * x)) == pytest.approx(1.0, abs=1e-14)


def test_total_variation_jump():
    s = np.linspace(-1.0, 1.0, 201)
    assert total_variation(BVSamples(s, np.sign(s), ((0.0, -1.0, 1.0),))) == pytest.approx(2.0)


def test_total_variation_abs_cos():
    t = np.linspace(0.0, math.pi, 1001)
    assert total_variation(BVSamples(t, np.abs(np.cos(t)))) == pytest.approx(2.0, abs=1e-12)


def test_total_variation_rejects_nan():
    x = np.linspace(0.0, 1.0, 5)
    with pytest.raises(DomainError):
        total_variation(BVSamples(x, np.array([0.0, 1.0, np.nan, 2.0, 3.0])))


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=50))
def test_total_variation_bounds_range(values):
    v = np.array(values)
    x = np.arange(v.size, dtype=float)
    tv = total_variation(BVSamples(x, v))
    assert tv >= np.ptp(v) * (1 - 1e-12)
    assert tv == pytest.approx(np.sum(np.abs(np.diff(v))), rel=1e-12, abs=1e-9)


def test_bv_samples_validation():
    with pytest.raises(DomainError):
        BVSamples(np.array([0.0, 0.0, 1.0]), np.zeros(3))
