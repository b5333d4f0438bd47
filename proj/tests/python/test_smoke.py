import math

import pytest

import minimax_bounds as mb


def test_kepler_half():
    s = mb.solve_kepler(0.5)
    assert s["y_a"] == 0.0
    assert math.isclose(s["min_fisher"], math.pi**2, rel_tol=1e-12)


def test_gaussian_hellinger_closed_form():
    g = mb.gaussian_family(1.0)
    assert math.isclose(mb.hellinger_sq(g, 0.0, 1.0), 2.0 - 2.0 * math.exp(-0.125), rel_tol=1e-12)


def test_uniform_chi_sq_divergent():
    assert math.isinf(mb.chi_sq(mb.uniform_family(), 1.5, 1.0))


def test_mixture_hellinger_bivariate_normal():
    h = 0.3
    v = mb.mixture_hellinger_sq(mb.gaussian_family(1.0), 1, mb.gaussian_prior(0.0, 1.0), h)
    assert math.isclose(v, -2.0 * math.expm1(-h * h / 4.0), rel_tol=1e-7)


def test_local_bounds_below_risk():
    delta, n = 0.5, 100
    vt = mb.vt_kepler_bound(delta, n)["value"]
    diffeo = mb.diffeo_bound(delta, n)["value"]
    risk = mb.local_minimax_risk("constant", delta, n)
    assert 0.0 < vt <= risk
    assert 0.0 < diffeo <= risk


def test_validation_error():
    with pytest.raises(mb.ValidationError):
        mb.vt_kepler_bound(-1.0, 10)
    with pytest.raises(mb.ValidationError):
        mb.functional("nope")


def test_sweep_csv_deterministic():
    a = mb.sweep_csv("fixed-n-vary-delta", [10], [0.1, 1.0], threads=1)
    b = mb.sweep_csv("fixed-n-vary-delta", [10], [0.1, 1.0], threads=2)
    assert a == b
    assert a.splitlines()[0].startswith("delta,n,")
    assert "\r" not in a


def test_selftest():
    assert all(passed for _, passed, _ in mb.selftest())
