import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.special import iv

from cstardecay import (
    FUNCTIONS,
    ApproximationFailureError,
    BernsteinEllipse,
    DiskRegion,
    InvalidRadiusError,
    RegionViolationError,
    ScalarFunction,
    cheb_interpolate,
    cheb_tail_bound,
    disk_max,
    ellipse_max,
    taylor_coeffs,
)

EXP = FUNCTIONS["exp"]
LOG5 = FUNCTIONS["log_shift5"]
S5 = 5 + np.sqrt(24)  # ln(x + 5) has Chebyshev coefficients 2 (-1)^(k+1) S5^-k / k


def bessel_coeffs(k):
    c = 2 * iv(np.arange(k + 1), 1.0)
    c[0] /= 2
    return c


def log5_coeffs(k):
    j = np.arange(1, k + 1)
    return np.concatenate([[np.log(S5 / 2)], 2 * (-1.0) ** (j + 1) * S5 ** (-j) / j])


def test_exp_coefficients_match_bessel_oracle():
    s = cheb_interpolate(EXP)
    ref = bessel_coeffs(s.degree)
    assert np.allclose(s.coeffs, ref, rtol=1e-12, atol=4 * np.finfo(float).eps)


def test_log_coefficients_match_closed_form():
    s = cheb_interpolate(LOG5)
    assert np.allclose(s.coeffs, log5_coeffs(s.degree), rtol=1e-10, atol=8 * np.finfo(float).eps)


def test_tail_bounds_match_oracle_sums():
    ref_exp = bessel_coeffs(40)[13:].sum()
    assert cheb_tail_bound(cheb_interpolate(EXP, degree=12)) == pytest.approx(ref_exp, rel=1e-3)
    ref_log = np.abs(log5_coeffs(60)[15:]).sum()
    got = cheb_tail_bound(cheb_interpolate(LOG5, degree=14))
    assert got == pytest.approx(ref_log, rel=0.05)


@pytest.mark.parametrize("chi", [1.5, 2.0, 5.0, 20.0])
def test_bernstein_coefficient_bound(chi):
    # E_k <= 2 M chi^-k / (chi - 1), checked with the oracle tail sums
    M = ellipse_max(EXP, BernsteinEllipse(chi))
    c = np.abs(bessel_coeffs(60))
    for k in range(0, 20):
        assert c[k + 1:].sum() <= 2 * M / (chi - 1) * chi ** (-k)


def test_bernstein_bound_with_extra_power_is_not_valid():
    # the variant 2 M chi^-(k+1) / (chi - 1) undercuts the true tail here
    chi, k = 20.0, 12
    M = ellipse_max(EXP, BernsteinEllipse(chi))
    assert bessel_coeffs(40)[k + 1:].sum() > 2 * M / (chi - 1) * chi ** (-(k + 1))


@given(arrays(np.float64, st.integers(1, 11), elements=st.floats(-5, 5)))
def test_interpolation_reproduces_polynomials(c):
    f = ScalarFunction(lambda x: np.polynomial.chebyshev.chebval(x, c), "poly", ())
    s = cheb_interpolate(f, degree=len(c) - 1)
    assert np.allclose(s.coeffs, c, atol=1e-12)


def test_degree_truncation_and_padding():
    s = cheb_interpolate(EXP)
    assert s.truncate(3).degree == 3
    assert s.truncate(40).degree == 40
    assert np.all(s.truncate(40).coeffs[s.degree + 1:] == 0)
    x = np.linspace(-1, 1, 7)
    assert np.allclose(s(x), np.exp(x), atol=1e-14)


def test_interpolation_failure_on_nonsmooth_function():
    with pytest.raises(ApproximationFailureError):
        cheb_interpolate(np.abs, tol=1e-14, kmax=128)


def test_ellipse_geometry():
    e = BernsteinEllipse(5.0)
    assert e.semi_major == pytest.approx(2.6) and e.semi_minor == pytest.approx(2.4)
    assert e.contains(2.6) and not e.contains(2.61)
    with pytest.raises(ValueError):
        BernsteinEllipse(1.0)


def test_ellipse_max_exp_is_exp_of_semi_major():
    for chi in (1.5, 2.0, 20.0):
        e = BernsteinEllipse(chi)
        assert ellipse_max(EXP, e) == pytest.approx(np.exp(e.semi_major), rel=1e-12)


def test_ellipse_region_checks():
    pole3 = ScalarFunction(lambda z: 1 / (z - 3), "pole3", (3.0,))
    assert ellipse_max(pole3, BernsteinEllipse(5.0)) == pytest.approx(2.5)
    with pytest.raises(RegionViolationError):
        ellipse_max(pole3, BernsteinEllipse(6.0))
    with pytest.raises(RegionViolationError):
        ellipse_max(LOG5, BernsteinEllipse(10.0))


def test_cauchy_fallback_for_unknown_singularities():
    f = ScalarFunction(lambda z: 1 / (np.asarray(z) - 0.5), "hidden")
    assert disk_max(f, 0.4) == pytest.approx(10.0)
    with pytest.raises(RegionViolationError):
        disk_max(f, 1.0)
    assert ellipse_max(ScalarFunction(np.cos, "cos"), BernsteinEllipse(2.0)) > 1


def test_m_increases_with_chi():
    chis = np.linspace(1.1, 30, 25)
    M = [ellipse_max(EXP, BernsteinEllipse(c)) for c in chis]
    assert np.all(np.diff(M) > 0)


def test_disk_max_and_taylor_coefficients():
    assert disk_max(EXP, 2.0) == pytest.approx(np.exp(2.0), rel=1e-12)
    t = taylor_coeffs(EXP, 20, 3.0)
    ref = np.array([1 / math.factorial(j) for j in range(21)])
    assert np.allclose(t.coeffs, ref, rtol=1e-10, atol=1e-17)
    geo = ScalarFunction(lambda z: 1 / (1 - np.asarray(z)), "geo", (1.0,))
    assert np.allclose(taylor_coeffs(geo, 10, 0.5).coeffs, 1.0, atol=1e-12)
    with pytest.raises(RegionViolationError):
        taylor_coeffs(geo, 10, 1.5)
    with pytest.raises(InvalidRadiusError):
        disk_max(EXP, 0.0)


def test_disk_region_validation():
    assert DiskRegion(1.0, 2.0).ratio == 0.5
    with pytest.raises(InvalidRadiusError):
        DiskRegion(2.0, 2.0)


def test_compose_affine_moves_singularities():
    g = LOG5.compose_affine(2.0)
    assert g.singularities == (-2.5,)
    assert g(0.5) == pytest.approx(np.log(6.0))
