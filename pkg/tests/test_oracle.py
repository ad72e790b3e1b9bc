import math

import numpy as np
import pytest

from intop.basis import IntervalMap
from intop.errors import OracleError
from intop.oracle import (QuadratureRequest, adaptive_integrate, bessel_j0,
                          direct_convolution, load_fixtures, reference_run)


def quad(f, a, b, **kw):
    value, _ = adaptive_integrate(QuadratureRequest(f, a, b, **kw))
    return value


def test_polynomial_and_trig_integrals():
    assert quad(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert quad(np.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-13)
    assert quad(lambda x: np.exp(-x), 0.0, 50.0) == pytest.approx(1.0, abs=1e-12)


def test_complex_integrand():
    val = quad(lambda x: np.exp(1j * x), 0.0, 2.0 * math.pi, tol=1e-13)
    assert abs(val) < 1e-12


def test_error_estimate_is_conservative():
    value, err = adaptive_integrate(
        QuadratureRequest(lambda x: np.cos(7.0 * x), 0.0, 3.0, tol=1e-10))
    assert abs(value - math.sin(21.0) / 7.0) <= max(err, 1e-13)


def test_endpoint_singularities():
    assert quad(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0,
                left_exponent=-0.5) == pytest.approx(2.0, abs=1e-11)
    # both-end arcsine weight integrates to pi
    assert quad(lambda x: ((1.0 - x) * (1.0 + x)) ** -0.5, -1.0, 1.0,
                left_exponent=-0.5, right_exponent=-0.5) == pytest.approx(
        math.pi, abs=1e-10)


def test_invalid_requests():
    with pytest.raises(ValueError):
        adaptive_integrate(QuadratureRequest(np.sin, 1.0, 0.0))
    with pytest.raises(ValueError):
        adaptive_integrate(QuadratureRequest(np.sin, 0.0, 1.0, tol=0.0))


def test_nonintegrable_singularity_raises():
    with pytest.raises(OracleError):
        adaptive_integrate(QuadratureRequest(lambda x: 1.0 / x, 0.0, 1.0))


def test_bessel_j0_against_defining_integral():
    # (1/pi) int_0^pi cos(x sin(theta)) dtheta, checked across the
    # series/asymptotic switchover
    for x in (0.0, 0.3, 2.0, 7.5, 14.9, 15.1, 30.0, 47.2):
        ref = quad(lambda th: np.cos(x * np.sin(th)), 0.0, math.pi,
                   tol=1e-14) / math.pi
        assert bessel_j0(x) == pytest.approx(ref, abs=5e-13), x


def test_bessel_j0_shape_and_symmetry():
    assert bessel_j0(0.0) == 1.0
    x = np.linspace(-20.0, 20.0, 41)
    vals = bessel_j0(x)
    assert vals.shape == x.shape
    np.testing.assert_allclose(vals, bessel_j0(-x), rtol=0, atol=0)


def test_direct_convolution_flat_kernel():
    imap = IntervalMap(0.0, 1.0)
    pts = np.array([0.1, 0.5, 0.9])
    plus = direct_convolution(lambda s: np.ones_like(np.asarray(s)),
                              lambda t: np.ones_like(np.asarray(t)),
                              "+", imap, pts)
    np.testing.assert_allclose(plus, pts, atol=1e-12)
    minus = direct_convolution(lambda s: np.ones_like(np.asarray(s)),
                               lambda t: np.ones_like(np.asarray(t)),
                               "-", imap, pts)
    np.testing.assert_allclose(minus, 1.0 - pts, atol=1e-12)
    with pytest.raises(ValueError):
        direct_convolution(lambda s: s, lambda t: t, "x", imap, pts)


def test_reference_run_dispatch():
    rep = reference_run("lt_invert", n_ref=7)
    assert rep.n == 7 and rep.pipeline == "lt_invert"
    with pytest.raises(ValueError):
        reference_run("nope")


def test_fixtures_thresholds_cover_measured():
    fx = load_fixtures()
    thr, meas = fx["thresholds"], fx["measured"]
    for key in ("ft_n5_max_fine_error", "lt_n5_max_coarse_error",
                "control_n5_vs_ref_coarse", "control_n11_vs_oracle",
                "control_inverse_design_error", "ode_n5_max_node_error",
                "wh_n5_max_node_error"):
        assert meas[key] < thr[key], key
    assert meas["lt_refinement_factor"] > thr["lt_min_refinement_factor"]
    assert meas["ode_chain_improvement"] > thr["ode_min_chain_improvement"]
