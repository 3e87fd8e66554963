import math

import pytest

import dhyp


def test_gauss_closed_form():
    z = 0.3
    v = dhyp.gauss_f(1.0, 1.0, 2.0, z)
    assert v.converged
    assert float(v) == pytest.approx(-math.log(1.0 - z) / z, rel=1e-13)


def test_gauss_reflected_branch():
    # F(a, b; c; 1) by Gauss summation, approached from z = 0.99
    a, b, c = 0.3, 0.4, 2.0
    limit = math.gamma(c) * math.gamma(c - a - b) / (math.gamma(c - a) * math.gamma(c - b))
    assert dhyp.gauss_f(a, b, c, 0.99).value == pytest.approx(limit, rel=2e-2)


def test_xi2_reduces_to_gauss():
    v = dhyp.xi2(0.5, 0.7, 1.5, 0.4, 0.0)
    assert v.value == pytest.approx(dhyp.gauss_f(0.5, 0.7, 1.5, 0.4).value, rel=1e-13)


def test_phi_reduces_to_gauss():
    v = dhyp.phi(0.3, 0.4, 0.6, 0.2, 1.7, 0.35, 0.0, 0.0)
    assert v.value == pytest.approx(dhyp.gauss_f(0.3, 0.6, 1.7, 0.35).value, rel=1e-13)


def test_xi_pq_and_psi_pq_evaluate():
    a = dhyp.xi_pq(1, 0, 0.3, 0.4, 0.5, 0.6, 1.2, 1.1, 1.3, 0.2, 0.1)
    b = dhyp.psi_pq(1, 1, 0.3, 0.4, 0.5, 0.6, 1.7, 0.5, 0.6, 1.1, 1.3, 0.2, 0.3, 0.1)
    assert a.converged and b.converged
    assert math.isfinite(a.value) and math.isfinite(b.value)


def test_riemann_function_is_one_on_diagonal():
    assert dhyp.riemann_function(0.4, 0.9, 0.4, 0.9, 0.5, 0.5, -2.0) == pytest.approx(1.0, abs=1e-14)


def test_riemann_forms_agree():
    args = (0.5, 0.8, 0.45, 0.9, 0.5, 0.3, 1.5)
    phi_form = dhyp.riemann_function(*args, form="phi")
    psi_form = dhyp.riemann_function(*args, form="psi")
    assert phi_form == pytest.approx(psi_form, rel=1e-10)


def test_solve_constant_data_is_exact():
    assert dhyp.solve_V(0.4, -0.05, 0.5, 0.3, 0.0, tau1="constant:2.5", nu1="zero") == pytest.approx(
        2.5, abs=1e-12
    )


def test_solve_grid_shape_and_determinism():
    a = dhyp.solve_grid(0.5, 0.5, -2.0, nx=4, ny=3)
    b = dhyp.solve_grid(0.5, 0.5, -2.0, nx=4, ny=3, threads=2)
    assert len(a) == 12
    assert a == b
    assert all(row[3] for row in a)


def test_identity_suite_passes():
    rows = dhyp.run_identity_suite(["R10", "R11"], draws=3, seed=7)
    assert [r["relation"] for r in rows] == ["R10", "R11"]
    assert all(r["failures"] == 0 and r["errors"] == 0 for r in rows)


def test_errors_are_typed():
    with pytest.raises(dhyp.PoleError):
        dhyp.gauss_f(0.5, 0.5, -1.0, 0.2)
    with pytest.raises(dhyp.ConfigError):
        dhyp.solve_V(0.4, -0.05, 0.5, 0.3, 0.0, tau1="nonsense")
    with pytest.raises(dhyp.DhypError):
        dhyp.to_characteristic(0.4, -0.05, 1.5, 0.3, 0.0)
