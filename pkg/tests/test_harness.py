import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fraclegendre.errors import DomainError
from fraclegendre.functions import AbsPower, AbsX, BlackBox, EndpointPower, Modulator, smooth
from fraclegendre.harness import (
    ConvergenceTable,
    convergence_table,
    decay_table,
    figure1_data,
    measure_errors,
    parseval_tail,
    reference_degree,
    tightness_profile,
    write_figure1,
    write_profile,
    write_table1,
    write_table2,
    write_table3,
)
from fraclegendre.legexp import expand


def _p2():
    return BlackBox(lambda y: 1.5 * y * y - 0.5)


def test_polynomial_is_reproduced_exactly():
    r = measure_errors(_p2(), 5)
    assert r.linf <= 1e-13
    assert r.weighted_linf <= 1e-13
    assert r.l2 <= 1e-13


def test_measure_errors_abs_power():
    r = measure_errors(AbsPower(1.7), 16, l2=False)
    assert r.linf == pytest.approx(2.03e-03, rel=0.05)
    assert r.weighted_linf == pytest.approx(2.03e-03, rel=0.05)
    assert abs(r.argmax_location) < 1e-2


def test_measure_errors_endpoint_power():
    r = measure_errors(EndpointPower(1.2), 16)
    assert r.linf == pytest.approx(4.87e-04, rel=0.05)
    assert r.l2 == pytest.approx(2.64e-05, rel=0.05)


def test_l2_by_parseval_matches_direct_quadrature():
    from scipy.integrate import quad

    u = EndpointPower(0.1)
    N = 16
    s = expand(u, N)
    direct = math.sqrt(quad(lambda x: (float(u(x)) - s(x)) ** 2, -1, 1, points=[-1.0], limit=400,
                            epsabs=0, epsrel=1e-10)[0])
    assert measure_errors(u, N).l2 == pytest.approx(direct, rel=0.01)


@pytest.mark.parametrize("N", [8, 64, 100])
def test_reference_degree(N):
    assert reference_degree(N) == max(4 * N, N + 256)


def test_parseval_tail_geometric():
    n = np.arange(4096)
    c = 0.9**n
    partial, tail = parseval_tail(c, 10)
    exact = np.sum(2 / (2 * n[11:] + 1) * c[11:] ** 2)
    assert partial + tail == pytest.approx(exact, rel=1e-3)


def test_convergence_table_orders_and_validation():
    t = ConvergenceTable((8, 16, 32), {"linf": (1.0, 0.25, 0.0625)})
    assert math.isnan(t.orders("linf")[0])
    np.testing.assert_allclose(t.orders("linf")[1:], [2.0, 2.0])
    with pytest.raises(DomainError):
        ConvergenceTable((8, 12), {"linf": (1.0, 0.5)})
    with pytest.raises(DomainError):
        ConvergenceTable((8,), {"linf": (1.0,)})


@given(st.floats(0.1, 5.0), st.floats(1e-12, 1.0))
def test_orders_are_log2_ratios(rate, e0):
    t = ConvergenceTable((8, 16), {"x": (e0, e0 * 2.0**-rate)})
    assert t.orders("x")[1] == pytest.approx(rate, rel=1e-10)


def test_table1_row_orders():
    t = convergence_table(AbsPower(1.7), [8, 16, 32, 64, 128, 256])
    expected = (1.52, 1.60, 1.65, 1.67, 1.69)
    np.testing.assert_allclose(t.orders("linf")[1:], expected, atol=0.05)
    assert all(w <= m for w, m in zip(t.columns["weighted_linf"], t.columns["linf"]))


def test_table3_l2_orders():
    t = convergence_table(EndpointPower(0.1), [8, 16, 32, 64, 128, 256], ("linf", "l2"))
    np.testing.assert_allclose(t.orders("l2")[1:], (1.10, 1.15, 1.17, 1.19, 1.19), atol=0.05)


def test_decay_table_mu_1_2():
    t = decay_table(EndpointPower(1.2, Modulator("sin")), [8, 16, 32, 64, 128])
    np.testing.assert_allclose(t.columns["coeff_abs"], (6.86e-04, 6.59e-05, 6.41e-06, 6.20e-07, 5.94e-08),
                               rtol=0.02)
    np.testing.assert_allclose(t.orders("coeff_abs")[1:], (3.38, 3.36, 3.37, 3.38), atol=0.05)


def test_smooth_function_superalgebraic():
    t = convergence_table(smooth("exp"), [2, 4, 8])
    o = t.orders("linf")[1:]
    assert o[1] > o[0] > 0


def test_parallel_rows_are_identical():
    u = AbsPower(2.6)
    a = convergence_table(u, [8, 16, 32, 64], ("linf", "weighted_linf", "l2"))
    b = convergence_table(u, [8, 16, 32, 64], ("linf", "weighted_linf", "l2"), workers=4)
    assert a == b


def test_tightness_profile_absx():
    rows = tightness_profile([4, 8, 16, 32])
    for r in rows:
        assert r.error_at_0 <= r.bound_at_0
        assert r.error_at_pm1 <= r.bound_at_pm1
        assert abs(r.argmax_location) < 1e-2
        assert 0.1 < r.error_at_0 / r.bound_at_0 <= 1.0


def test_tightness_profile_only_for_absx():
    with pytest.raises(DomainError):
        tightness_profile([8], u=AbsPower(1.7))


def test_figure1_data():
    x, p, w = figure1_data(100)
    assert x.size == 2001
    assert p[0] == pytest.approx(1.0) and p[-1] == pytest.approx(1.0)
    assert w[0] == 0.0 and w[-1] == 0.0
    assert np.max(np.abs(p)) == pytest.approx(1.0)
    assert np.max(np.abs(w)) <= math.sqrt(2 / math.pi) / math.sqrt(100.5)


def _first_line(writer, arg):
    buf = io.StringIO()
    writer(buf, arg)
    return buf.getvalue().splitlines()


def test_csv_headers():
    t1 = convergence_table(AbsPower(1.7), [8, 16])
    lines = _first_line(write_table1, [t1])
    assert lines[0] == "N,linf,linf_order,wlinf,wlinf_order,mu"
    assert lines[1].split(",")[2] == ""
    t2 = decay_table(EndpointPower(1.2, Modulator("sin")), [8, 16])
    assert _first_line(write_table2, [t2])[0] == "n,coeff_abs,order,mu"
    t3 = convergence_table(EndpointPower(1.2), [8, 16], ("linf", "l2"))
    assert _first_line(write_table3, [t3])[0] == "N,linf,linf_order,l2,l2_order,mu"
    row = tightness_profile([8])[0]
    assert _first_line(write_profile, row)[0] == "x,error"
    assert _first_line(write_figure1, figure1_data(3, points=5))[0] == "x,Pn,weighted"


def test_absx_default_model():
    assert tightness_profile([8], u=AbsX(), keep_profile=False)[0].profile == ()
