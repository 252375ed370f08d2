import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclegendre.bounds import (
    KINDS,
    WeightedNorm,
    absx_pointwise_bounds,
    bound_curve,
    bound_value,
    coeff_decay_bound,
    endpoint_bounds,
    interior_bounds,
    seminorm_endpoint,
    seminorm_endpoint_numeric,
    seminorm_interior,
    seminorm_interior_numeric,
)
from fraclegendre.errors import BelowThreshold, BoundNotStated, DomainError
from fraclegendre.functions import AbsPower, AbsX, EndpointPower, InteriorPlusPower, Modulator, RegularityProfile
from fraclegendre.harness import measure_errors
from fraclegendre.legexp import coeff_closed_model, expand


def interior(mu, seminorm=1.0):
    return RegularityProfile.for_order(mu, location=0.0, seminorm=seminorm)


def endpoint(mu, m=0, seminorm=1.0):
    return RegularityProfile.for_order(mu, location="left-endpoint", m=m, seminorm=seminorm)


def test_absx_pointwise_bounds_at_eight():
    at0, at1 = absx_pointwise_bounds(8)
    assert at0 == pytest.approx(2 / (7 * math.pi), rel=1e-14)
    assert at1 == pytest.approx(math.gamma(3) / (2 * math.sqrt(math.pi) * math.gamma(4.5)), rel=1e-13)


def test_absx_pointwise_bounds_need_large_degree():
    with pytest.raises(DomainError):
        absx_pointwise_bounds(2)


def test_interior_linf_for_absx_by_gamma_arithmetic():
    # mu = 1, U = 2: U Gamma(N/2) / (1/2 sqrt(pi) Gamma((N+1)/2))
    N = 8
    expected = 2 * math.gamma(4) / (0.5 * math.sqrt(math.pi) * math.gamma(4.5))
    assert interior_bounds(RegularityProfile(1, 1.0, 0.0, seminorm=2.0), N, "linf") == pytest.approx(expected)


@pytest.mark.parametrize(
    "mu, which, message",
    [(0.4, "linf", "mu > 1/2"), (2.5, "weighted_linf", "N >= mu"), (2.5, "l2", "mu < N")],
)
def test_interior_preconditions(mu, which, message):
    with pytest.raises(BoundNotStated, match=message):
        interior_bounds(interior(mu), 2, which)


def test_endpoint_linf_refused_at_or_below_one():
    with pytest.raises(BoundNotStated):
        endpoint_bounds(endpoint(0.9), 64, "linf")
    with pytest.raises(BoundNotStated):
        endpoint_bounds(endpoint(0.4), 64, "linf")


def test_endpoint_l2_precondition():
    with pytest.raises(BoundNotStated):
        endpoint_bounds(endpoint(1.2, m=2), 3, "l2")


def test_coeff_decay_below_threshold():
    with pytest.raises((BoundNotStated, BelowThreshold, DomainError)):
        coeff_decay_bound(interior(1.7), 2)


@pytest.mark.parametrize("kind", ["linf_interior", "weighted_linf_interior", "l2_interior", "coeff_decay"])
@pytest.mark.parametrize("mu", [1.7, 2.6])
def test_interior_bounds_decrease(kind, mu):
    v = [bound_value(kind, interior(mu), N) for N in range(4, 400)]
    assert np.all(np.diff(v) < 0)


@pytest.mark.parametrize(
    "kind, rate", [("linf_interior", -0.5), ("weighted_linf_interior", 0.0), ("l2_interior", 0.5),
                   ("coeff_decay", 0.5)],
)
@pytest.mark.parametrize("mu", [0.8, 1.7, 2.6])
def test_interior_bound_rates(kind, rate, mu):
    # bound * N^(mu + rate) settles to a constant
    p = interior(mu)
    a, b = (bound_value(kind, p, N) * N ** (mu + rate) for N in (2000, 4000))
    assert a == pytest.approx(b, rel=0.01)


@pytest.mark.parametrize("kind, rate", [("linf_endpoint", 0.0), ("l2_endpoint", 1.0)])
@pytest.mark.parametrize("mu", [1.2, 2.6])
def test_endpoint_bound_rates(kind, rate, mu):
    p = endpoint(mu, m=math.ceil(mu) + 1)
    a, b = (bound_value(kind, p, N) * N ** (2 * mu + rate) for N in (2000, 4000))
    assert a == pytest.approx(b, rel=0.02)


def test_half_order_gap():
    p = interior(1.7)
    r = [math.log(interior_bounds(p, N, "linf") / interior_bounds(p, N, "weighted_linf")) for N in (32, 512)]
    assert (r[1] - r[0]) / math.log(16) == pytest.approx(0.5, abs=0.05)


@given(st.floats(0.6, 3.0), st.integers(8, 300), st.floats(0.1, 10.0))
def test_bounds_scale_with_seminorm(mu, N, U):
    base = interior_bounds(interior(mu, 1.0), N, "l2")
    assert interior_bounds(interior(mu, U), N, "l2") == pytest.approx(U * base, rel=1e-12)


def test_zero_seminorm_gives_zero_bound():
    assert interior_bounds(interior(1.7, 0.0), 16, "linf") == 0.0


@pytest.mark.parametrize(
    "u, expected",
    [(InteriorPlusPower(0.3, 0.6), math.gamma(1.6)), (AbsPower(1.7), 2 * math.gamma(2.7)), (AbsX(), 2.0)],
    ids=repr,
)
def test_seminorm_interior_analytic(u, expected):
    assert seminorm_interior(u) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("u", [InteriorPlusPower(0.3, 0.6), AbsPower(1.7), AbsPower(2.6)], ids=repr)
def test_seminorm_interior_numeric_agrees(u):
    assert seminorm_interior_numeric(u, math.ceil(u.mu), u.mu, 0.3 if hasattr(u, "theta") else 0.0) == \
        pytest.approx(seminorm_interior(u), rel=0.01)


@pytest.mark.parametrize("mu", [0.3, 1.2, 2.6])
@pytest.mark.parametrize("m", [0, 2])
def test_seminorm_endpoint_pure_power(mu, m):
    expected = abs(math.sin(mu * math.pi)) * math.gamma(mu + 1)
    assert seminorm_endpoint(EndpointPower(mu), m=m) == pytest.approx(expected, rel=1e-12)


def test_seminorm_endpoint_integer_power_vanishes():
    assert seminorm_endpoint(EndpointPower(2.0)) == 0.0


def test_seminorm_endpoint_dual_path():
    u = EndpointPower(1.2, Modulator("sin"))
    assert seminorm_endpoint(u, m=2) == pytest.approx(seminorm_endpoint_numeric(u, m=2), rel=0.01)


@pytest.mark.parametrize("mu", [1.7, 2.6])
def test_coefficient_bound_dominates(mu):
    u = AbsPower(mu)
    p = interior(mu, seminorm_interior(u))
    s = expand(u, 128)
    n = np.arange(math.ceil(mu + 1), 129)
    bounds = np.array([coeff_decay_bound(p, int(k)) for k in n])
    assert np.all(np.abs(s.coefficients[n]) <= bounds * (1 + 1e-12))


def test_coefficient_bound_is_attained_for_absx():
    p = RegularityProfile(1, 1.0, 0.0, seminorm=2.0)
    for n in (2, 4, 10, 50):
        assert abs(coeff_closed_model(AbsX(), n)) == pytest.approx(coeff_decay_bound(p, n), rel=1e-12)


def test_weighted_norm_weight():
    w = WeightedNorm().weight(np.array([-1.0, 0.0, 0.6]))
    np.testing.assert_allclose(w, [0.0, 1.0, 0.64**0.25])


def test_bound_curve_csv():
    curve = bound_curve("absx_at_zero", RegularityProfile(1, 1.0, 0.0, seminorm=2.0), [8, 16])
    buf = io.StringIO()
    curve.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "N,bound,kind,mu,k,m,seminorm"
    assert lines[1].startswith("8,0.0909456817667973")
    assert len(lines) == 3


def test_unknown_kind():
    with pytest.raises(DomainError):
        bound_value("sup", interior(1.7), 8)
    assert "coeff_decay" in KINDS


@settings(max_examples=20, deadline=None)
@given(st.floats(0.6, 2.9), st.sampled_from([8, 16, 32, 64]))
def test_interior_linf_bound_dominates_measured_error(mu, N):
    u = AbsPower(mu)
    r = measure_errors(u, N, l2=False)
    # even integer mu is a polynomial: zero bound, rounding-level error
    assert r.linf <= interior_bounds(interior(mu, seminorm_interior(u)), N, "linf") + 1e-14
