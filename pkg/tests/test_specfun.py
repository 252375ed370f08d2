import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclegendre.errors import DomainError, IntegerGap, ParameterPole
from fraclegendre.specfun import (
    gamma_ratio,
    hyp2f1_terminating,
    jacobi_general_eval,
    jacobi_general_reference,
    jacobi_general_table,
    kershaw_envelope,
    legendre_eval,
    legendre_table,
    log_gamma,
    log_gamma_ratio,
)

abscissa = st.floats(-1.0, 1.0)


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (0.5, 0.5723649429247001), (4.5, math.log(3.5 * 2.5 * 1.5 * 0.5 * math.sqrt(math.pi)))],
)
def test_log_gamma_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


@pytest.mark.parametrize(
    "a, b, z, expected",
    [(0.7, 0.7, 3.0, 1.0), (1.0, 0.0, 2.5, 2.5), (0.0, 0.5, 1.0, 1.1283791671)],
)
def test_gamma_ratio_values(a, b, z, expected):
    assert gamma_ratio(a, b, z) == pytest.approx(expected, rel=1e-10)


def test_gamma_ratio_rejects_nonpositive_arguments():
    with pytest.raises(DomainError):
        gamma_ratio(0.0, 0.5, -1.0)


@given(st.floats(0.0, 3.0), st.floats(0.0, 3.0), st.floats(0.1, 1e4))
def test_gamma_ratio_matches_mpmath(a, b, z):
    with mpmath.workdps(30):
        ref = mpmath.gamma(mpmath.mpf(z) + a) / mpmath.gamma(mpmath.mpf(z) + b)
        log_ref = float(mpmath.log(ref))
    assert gamma_ratio(a, b, z) == pytest.approx(float(ref), rel=1e-13)
    assert log_gamma_ratio(a, b, z) == pytest.approx(log_ref, abs=1e-13)


@given(st.floats(-0.9, 2.0), st.floats(0.05, 3.0).filter(lambda g: abs(g - round(g)) > 1e-3),
       st.floats(2.0, 1e3))
def test_kershaw_envelope_brackets_ratio(a, gap, z):
    lo, hi = kershaw_envelope(a, a + gap, z)
    r = gamma_ratio(a, a + gap, z)
    assert lo <= r * (1 + 1e-12)
    assert r <= hi * (1 + 1e-12)


def test_kershaw_envelope_integer_gap():
    with pytest.raises(IntegerGap):
        kershaw_envelope(0.0, 2.0, 5.0)


@given(st.floats(0.01, 0.99), st.floats(0.1, 50.0))
def test_reflection_identity(mu, z):
    # Gamma(z) Gamma(1 - z) = pi / sin(pi z) at z = mu
    lhs = math.exp(log_gamma(mu) + log_gamma(1 - mu))
    assert lhs == pytest.approx(math.pi / math.sin(math.pi * mu), rel=1e-12)


@given(st.floats(0.05, 80.0))
def test_duplication_identity(z):
    lhs = log_gamma(2 * z)
    rhs = (2 * z - 1) * math.log(2) + log_gamma(z) + log_gamma(z + 0.5) - 0.5 * math.log(math.pi)
    assert lhs == pytest.approx(rhs, abs=1e-11 * max(1.0, abs(lhs)))


@pytest.mark.parametrize("n", [0, 1, 5, 40, 200])
def test_legendre_endpoint_normalisation(n):
    assert legendre_eval(n, 1.0) == pytest.approx(1.0)
    assert legendre_eval(n, -1.0) == pytest.approx((-1.0) ** n)


def test_legendre_known_values():
    assert legendre_eval(2, 0.0) == pytest.approx(-0.5)
    ref = float(mpmath.legendre(5, mpmath.mpf("0.3")))
    assert legendre_eval(5, 0.3) == pytest.approx(ref, rel=1e-14)


def test_legendre_rejects_outside_interval():
    with pytest.raises(DomainError):
        legendre_eval(3, 1.5)


@settings(max_examples=60)
@given(st.integers(0, 300), abscissa)
def test_legendre_matches_mpmath(n, x):
    with mpmath.workdps(30):
        ref = float(mpmath.legendre(n, mpmath.mpf(x)))
    # the recurrence accumulates rounding errors growing with n
    assert legendre_eval(n, x) == pytest.approx(ref, abs=5e-15 * (n + 1))


@settings(max_examples=50)
@given(st.integers(0, 400), st.floats(-0.999, 0.999))
def test_bernstein_inequality(n, x):
    # (1 - x^2)^{1/4} |P_n(x)| <= sqrt(2 / pi) / sqrt(n + 1/2)
    lhs = (1 - x * x) ** 0.25 * abs(legendre_eval(n, x))
    assert lhs <= math.sqrt(2 / math.pi) / math.sqrt(n + 0.5) * (1 + 1e-12)


def test_legendre_table_shape():
    x = np.linspace(-1, 1, 7)
    t = legendre_table(4, x)
    assert t.shape == (5, 7)
    np.testing.assert_allclose(t[2], 1.5 * x**2 - 0.5, atol=1e-15)


def test_jacobi_degree_zero_is_one():
    assert jacobi_general_eval(0, 2.3, -3.3, 0.2) == 1.0


def test_jacobi_endpoint_value():
    assert jacobi_general_eval(2, 1.5, -1.5, 1.0) == pytest.approx(4.375, rel=1e-14)


def test_jacobi_matches_hypergeometric_sum():
    n, a, b, x = 3, 2.0, -2.0, 0.4
    ref = math.comb(n + 2, n) * hyp2f1_terminating(-n, n + a + b + 1, a + 1, (1 - x) / 2)
    assert jacobi_general_eval(n, a, b, x) == pytest.approx(ref, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.9, 3.0), st.floats(-1.0, 1.0), st.integers(0, 40))
def test_jacobi_recurrence_matches_reference(mu, x, n):
    tab = jacobi_general_table(n, mu + 1.0, -mu - 1.0, x)
    ref = jacobi_general_reference(n, mu + 1.0, -mu - 1.0, x)
    scale = max(1.0, float(np.max(np.abs(tab))))
    assert abs(float(tab[n]) - ref) <= 1e-12 * scale


@given(st.integers(0, 30), st.floats(0.0, 2.0), st.floats(0.0, 2.0), abscissa)
def test_jacobi_parity(n, a, b, x):
    assert jacobi_general_eval(n, a, b, -x) == pytest.approx(
        (-1) ** n * jacobi_general_eval(n, b, a, x), rel=1e-11, abs=1e-11)


@pytest.mark.parametrize(
    "a, b, c, z, expected",
    [(0, 2.5, 1.5, 0.3, 1.0), (-1, 2.5, 1.5, 0.3, 1 - 2.5 * 0.3 / 1.5), (-2, 3.0, 1.0, 0.5, -0.5)],
)
def test_hyp2f1_terminating_values(a, b, c, z, expected):
    assert hyp2f1_terminating(a, b, c, z) == pytest.approx(expected, rel=1e-15, abs=1e-15)


def test_hyp2f1_parameter_pole():
    with pytest.raises(ParameterPole):
        hyp2f1_terminating(-3, 1.0, -1.0, 0.5)
